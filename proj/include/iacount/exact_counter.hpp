// SPDX-License-Identifier: Apache-2.0
//
// Exact solution counts for single-beam networks.
//
// With rank-one channels every alignment equation factors into a decoder
// factor times a precoder factor, and a solution picks which factor vanishes
// on each link. Recording a 1 in cell (k, l) when the precoder factor of
// link (k, l) vanishes, a solution is a K x K 0-1 table with empty diagonal
// where column l holds exactly M_l - 1 ones and row k exactly N_k - 1
// zeros. Counting solutions is counting such tables.

#ifndef IACOUNT_EXACT_COUNTER_HPP
#define IACOUNT_EXACT_COUNTER_HPP

#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "iacount/scenario.hpp"

namespace iacount {

using BigInt = boost::multiprecision::cpp_int;

enum class CountMethod { backtracking, column_dp, derangement_formula, two_regular_formula };

std::string_view to_string(CountMethod m) noexcept;

struct ExactCount {
    BigInt value;
    CountMethod method = CountMethod::backtracking;
};

/// Row and column margins of the solution tables.
struct MarginTable {
    int size = 0;
    std::vector<int> col_ones;  // M_l - 1
    std::vector<int> row_ones;  // (K - 1) - (N_k - 1)

    /// Throws HypothesisError unless `sc` is single-beam, tight, and every
    /// margin lies in [0, K - 1].
    static MarginTable from(const Scenario& sc);
};

/// Reference count by backtracking over cells, row-major from the top-left
/// corner. With `threads > 1` the subtrees below each first-row pattern are
/// counted concurrently.
ExactCount count_single_beam(const Scenario& sc, unsigned threads = 1);

/// Same count by a memoized column-by-column recursion over remaining row
/// capacities. Much faster for symmetric scenarios.
ExactCount count_single_beam_dp(const Scenario& sc);

/// Number of tables for explicit margins (no scenario validation beyond
/// shape and range). Exposed for the enumeration tests.
BigInt count_tables_backtracking(const MarginTable& t, unsigned threads = 1);
BigInt count_tables_dp(const MarginTable& t);

/// Fixed-point-free permutations of K elements, via D_K = (K-1)(D_{K-1} + D_{K-2}).
ExactCount derangement_count(int k);

/// Labeled 2-regular digraphs on K nodes, via the exact triple sum.
ExactCount two_regular_count(int k);

}  // namespace iacount

#endif  // IACOUNT_EXACT_COUNTER_HPP
