// SPDX-License-Identifier: Apache-2.0
//
// Random channel points for the two integration domains: channels uniform
// on the unit Frobenius sphere of the structured subspace, and Haar-uniform
// Stiefel frames.

#ifndef IACOUNT_SAMPLING_HPP
#define IACOUNT_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "iacount/linalg.hpp"
#include "iacount/psi.hpp"
#include "iacount/scenario.hpp"

namespace iacount {

using Engine = std::mt19937_64;

/// Identifies one independent substream. The engine depends only on
/// (master_seed, stream_id), never on thread or call order.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    Engine engine() const;
};

/// Standard circularly-symmetric complex Gaussian: E|z|^2 = 1.
Complex complex_gaussian(Engine& eng);

ComplexMatrix gaussian_matrix(int rows, int cols, Engine& eng);

/// rows x cols matrix with orthonormal columns, Haar distributed (rows >= cols).
ComplexMatrix haar_stiefel_frame(int rows, int cols, Engine& eng);

/// i.i.d. complex Gaussian A, B, C blocks, unnormalized.
ChannelPoint sample_gaussian_point(const Scenario& sc, const RngStream& rng);

/// Gaussian blocks with each H_kl scaled to unit Frobenius norm.
ChannelPoint sample_sphere_point(const Scenario& sc, const RngStream& rng);

/// A_kl^* and B_kl independent Haar frames in C^(N-d), C_kl = 0. Requires a
/// square symmetric scenario with N >= 2d; throws HypothesisError otherwise.
ChannelPoint sample_stiefel_point(const Scenario& sc, const RngStream& rng);

}  // namespace iacount

#endif  // IACOUNT_SAMPLING_HPP
