// SPDX-License-Identifier: Apache-2.0
//
// Structured points of the solution variety and the linear map Psi whose
// determinant drives both the feasibility test and the solution count.
//
// At the canonical precoders V_l = [I; 0] and decoders U_k = [I; 0], every
// channel of the form
//
//     H_kl = [ 0_{d_k x d_l}   A_kl ]
//            [ B_kl            C_kl ]
//
// satisfies U_k^T H_kl V_l = 0. The tangent map at such a point only sees the
// A and B blocks:
//
//     Psi(dU, dV)_kl = dU_k^T B_kl + A_kl dV_l,
//
// with dU_k of size (N_k - d_k) x d_k and dV_l of size (M_l - d_l) x d_l.

#ifndef IACOUNT_PSI_HPP
#define IACOUNT_PSI_HPP

#include <optional>
#include <vector>

#include "iacount/linalg.hpp"
#include "iacount/scenario.hpp"

namespace iacount {

/// Distribution a ChannelPoint was drawn from; decides which invariants hold.
enum class PointKind {
    generic,      // no normalization
    unit_sphere,  // ||H_kl||_F = 1 per link
    stiefel,      // A_kl A_kl^* = I, B_kl^* B_kl = I, C_kl = 0
};

struct LinkBlocks {
    ComplexMatrix a;                 // d_k x (M_l - d_l)
    ComplexMatrix b;                 // (N_k - d_k) x d_l
    std::optional<ComplexMatrix> c;  // (N_k - d_k) x (M_l - d_l); absent means zero
};

/// Channel blocks for every link, indexed like `Scenario::links()`.
struct ChannelPoint {
    PointKind kind = PointKind::generic;
    std::vector<LinkBlocks> links;
};

/// Throws std::invalid_argument when block shapes do not match `sc`.
void check_shapes(const Scenario& sc, const ChannelPoint& pt);

/// Full channels plus the canonical precoders/decoders they are aligned for.
struct MaterializedPoint {
    std::vector<ComplexMatrix> channels;   // H_kl, N_k x M_l, per link
    std::vector<ComplexMatrix> decoders;   // U_k = [I; 0], N_k x d_k, per user
    std::vector<ComplexMatrix> precoders;  // V_l = [I; 0], M_l x d_l, per user
};

/**
 * Builds H_kl from its blocks together with the canonical U_k and V_l.
 * Throws std::invalid_argument on shape mismatch and std::logic_error if the
 * alignment residual is not exactly zero.
 */
MaterializedPoint canonical_point(const Scenario& sc, const ChannelPoint& pt);

/// max over links of ||U_k^T H_kl V_l||_F.
double alignment_residual(const Scenario& sc, const MaterializedPoint& mp);

/// Psi with its block layout. Column partition k < K holds vec(dU_k); column
/// partition K + l holds vec(dV_l). Row block i belongs to `links()[i]`.
struct PsiMatrix {
    ComplexMatrix matrix;
    std::vector<ComplexMatrix::Index> row_offset;        // per link
    std::vector<ComplexMatrix::Index> decoder_offset;    // per user
    std::vector<ComplexMatrix::Index> precoder_offset;   // per user
};

/// (B^T (x) I_{d_k}) K_{(N_k-d_k), d_k}: the row block acting on vec(dU_k).
ComplexMatrix decoder_block(const ComplexMatrix& b, int rx_streams);

/// I_{d_l} (x) A: the row block acting on vec(dV_l).
ComplexMatrix precoder_block(const ComplexMatrix& a, int tx_streams);

/**
 * Assembles Psi entry by entry. Equivalent to stacking `decoder_block` and
 * `precoder_block` into their partitions, without forming the Kronecker
 * products.
 */
PsiMatrix assemble_psi(const Scenario& sc, const ChannelPoint& pt);

/// Same matrix as `assemble_psi`, built from explicit Kronecker and
/// commutation factors. Slower; kept as an independent construction route.
PsiMatrix assemble_psi_kron(const Scenario& sc, const ChannelPoint& pt);

}  // namespace iacount

#endif  // IACOUNT_PSI_HPP
