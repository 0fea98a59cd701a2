// SPDX-License-Identifier: Apache-2.0

#ifndef IACOUNT_FEASIBILITY_HPP
#define IACOUNT_FEASIBILITY_HPP

#include <cstdint>
#include <string_view>

#include "iacount/scenario.hpp"

namespace iacount {

enum class Verdict { improper, infeasible, feasible };

std::string_view to_string(Verdict v) noexcept;

struct FeasibilityOptions {
    /// Psi has full row rank iff sigma_min / sigma_max exceeds this.
    double rank_threshold = 1e-8;
    /// Number of random points; the verdict is the majority. Use an odd count.
    int draws = 1;
};

struct FeasibilityReport {
    Verdict verdict = Verdict::improper;
    double sigma_min = 0.0;  // smallest of the psi_rows leading singular values
    double sigma_max = 0.0;
    double sigma_ratio = 0.0;  // median over draws
};

/**
 * Generic-point rank test of the tangent map. Improper scenarios (s < 0) are
 * rejected without sampling; otherwise Psi is assembled at Gaussian random
 * points drawn from streams 0..draws-1 of `seed`.
 */
FeasibilityReport feasibility_test(const Scenario& sc, std::uint64_t seed, const FeasibilityOptions& opts = {});

}  // namespace iacount

#endif  // IACOUNT_FEASIBILITY_HPP
