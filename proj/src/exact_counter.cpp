// SPDX-License-Identifier: Apache-2.0

#include "iacount/exact_counter.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

namespace iacount {

namespace {

using Rational = boost::multiprecision::cpp_rational;

void check_margins(const MarginTable& t) {
    if (t.size < 1 || static_cast<int>(t.col_ones.size()) != t.size || static_cast<int>(t.row_ones.size()) != t.size)
        throw std::invalid_argument("margin table: inconsistent size");
    for (int i = 0; i < t.size; ++i) {
        if (t.col_ones[i] < 0 || t.col_ones[i] > t.size - 1 || t.row_ones[i] < 0 || t.row_ones[i] > t.size - 1)
            throw std::invalid_argument("margin table: margin outside [0, K-1]");
    }
}

// Cell-by-cell search over the off-diagonal cells in row-major order. A cell
// may stay 0 only if its row and column can still reach their margins with
// the cells left after it.
class TableSearch {
public:
    explicit TableSearch(const MarginTable& t)
        : row_need_(t.row_ones), col_need_(t.col_ones), row_left_(t.size, t.size - 1), col_left_(t.size, t.size - 1) {
        for (int r = 0; r < t.size; ++r)
            for (int c = 0; c < t.size; ++c)
                if (r != c) cells_.push_back({r, c});
    }

    std::uint64_t count_from(std::size_t idx) {
        if (idx == cells_.size()) return 1;
        const auto [r, c] = cells_[idx];
        --row_left_[r];
        --col_left_[c];
        std::uint64_t total = 0;
        if (row_need_[r] > 0 && col_need_[c] > 0) {
            --row_need_[r];
            --col_need_[c];
            total += count_from(idx + 1);
            ++row_need_[r];
            ++col_need_[c];
        }
        if (row_need_[r] <= row_left_[r] && col_need_[c] <= col_left_[c]) total += count_from(idx + 1);
        ++row_left_[r];
        ++col_left_[c];
        return total;
    }

    /// All feasible ways to fill the first `prefix` cells, as search states.
    void split(std::size_t idx, std::size_t prefix, std::vector<TableSearch>& out) {
        if (idx == prefix) {
            out.push_back(*this);
            out.back().start_ = idx;
            return;
        }
        const auto [r, c] = cells_[idx];
        --row_left_[r];
        --col_left_[c];
        if (row_need_[r] > 0 && col_need_[c] > 0) {
            --row_need_[r];
            --col_need_[c];
            split(idx + 1, prefix, out);
            ++row_need_[r];
            ++col_need_[c];
        }
        if (row_need_[r] <= row_left_[r] && col_need_[c] <= col_left_[c]) split(idx + 1, prefix, out);
        ++row_left_[r];
        ++col_left_[c];
    }

    std::size_t start() const { return start_; }
    std::size_t cell_count() const { return cells_.size(); }

private:
    struct Cell {
        int r, c;
    };
    std::vector<Cell> cells_;
    std::vector<int> row_need_, col_need_, row_left_, col_left_;
    std::size_t start_ = 0;
};

// Column-by-column recursion. Before column c, rows r < c have passed their
// excluded diagonal cell and are interchangeable for the remaining columns,
// so their capacities are stored sorted.
class ColumnDp {
public:
    explicit ColumnDp(const MarginTable& t) : k_(t.size), col_ones_(t.col_ones), memo_(t.size) {}

    BigInt count(std::vector<int> need, int col) {
        if (col == k_) {
            return std::all_of(need.begin(), need.end(), [](int v) { return v == 0; }) ? BigInt(1) : BigInt(0);
        }
        std::sort(need.begin(), need.begin() + col);
        // A row needing more ones than columns it can still use is dead.
        for (int r = 0; r < k_; ++r) {
            const int usable = k_ - col - (r >= col ? 1 : 0);
            if (need[r] > usable) return 0;
        }
        auto& memo = memo_[col];
        if (auto it = memo.find(need); it != memo.end()) return it->second;

        BigInt total = 0;
        std::vector<int> next = need;
        choose(need, next, col, 0, col_ones_[col], total);
        memo.emplace(std::move(need), total);
        return total;
    }

private:
    void choose(const std::vector<int>& need, std::vector<int>& next, int col, int row, int remaining, BigInt& total) {
        if (remaining == 0) {
            total += count(next, col + 1);
            return;
        }
        if (k_ - row < remaining) return;
        for (int r = row; r < k_; ++r) {
            if (r == col || need[r] == 0) continue;
            --next[r];
            choose(need, next, col, r + 1, remaining - 1, total);
            ++next[r];
        }
    }

    int k_;
    std::vector<int> col_ones_;
    std::vector<std::map<std::vector<int>, BigInt>> memo_;
};

}  // namespace

std::string_view to_string(CountMethod m) noexcept {
    switch (m) {
        case CountMethod::backtracking: return "backtracking";
        case CountMethod::column_dp: return "column_dp";
        case CountMethod::derangement_formula: return "derangement_formula";
        case CountMethod::two_regular_formula: return "two_regular_formula";
    }
    return "unknown";
}

MarginTable MarginTable::from(const Scenario& sc) {
    if (!sc.single_beam()) throw HypothesisError("exact counting needs a single-beam scenario (all d_k = 1)");
    const ScenarioDims d = dims(sc);
    if (d.surplus != 0)
        throw HypothesisError("exact counting needs a tight scenario (s = 0), got s = " + std::to_string(d.surplus));
    MarginTable t;
    t.size = static_cast<int>(sc.size());
    for (const User& u : sc.users()) {
        t.col_ones.push_back(u.tx_antennas - 1);
        t.row_ones.push_back(t.size - u.rx_antennas);
    }
    for (int i = 0; i < t.size; ++i) {
        if (t.col_ones[i] > t.size - 1 || t.row_ones[i] < 0)
            throw HypothesisError("user " + std::to_string(i + 1) + " has more antennas than links to null");
    }
    return t;
}

BigInt count_tables_backtracking(const MarginTable& t, unsigned threads) {
    check_margins(t);
    const int ones = std::accumulate(t.col_ones.begin(), t.col_ones.end(), 0);
    if (ones != std::accumulate(t.row_ones.begin(), t.row_ones.end(), 0)) return 0;

    TableSearch root(t);
    if (threads <= 1 || root.cell_count() == 0) return BigInt(root.count_from(0));

    std::vector<TableSearch> tasks;
    root.split(0, std::min<std::size_t>(t.size - 1, root.cell_count()), tasks);
    std::vector<std::uint64_t> partial(tasks.size(), 0);
    std::atomic<std::size_t> cursor{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = cursor++; i < tasks.size(); i = cursor++)
                    partial[i] = tasks[i].count_from(tasks[i].start());
            });
        }
    }
    BigInt total = 0;
    for (std::uint64_t p : partial) total += p;
    return total;
}

BigInt count_tables_dp(const MarginTable& t) {
    check_margins(t);
    const int ones = std::accumulate(t.col_ones.begin(), t.col_ones.end(), 0);
    if (ones != std::accumulate(t.row_ones.begin(), t.row_ones.end(), 0)) return 0;
    ColumnDp dp(t);
    return dp.count(t.row_ones, 0);
}

ExactCount count_single_beam(const Scenario& sc, unsigned threads) {
    return {count_tables_backtracking(MarginTable::from(sc), threads), CountMethod::backtracking};
}

ExactCount count_single_beam_dp(const Scenario& sc) {
    return {count_tables_dp(MarginTable::from(sc)), CountMethod::column_dp};
}

ExactCount derangement_count(int k) {
    if (k < 2) throw std::invalid_argument("derangement_count: K must be at least 2");
    BigInt prev = 0;  // D_1
    BigInt cur = 1;   // D_2
    for (int n = 3; n <= k; ++n) {
        BigInt next = BigInt(n - 1) * (cur + prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {cur, CountMethod::derangement_formula};
}

ExactCount two_regular_count(int k) {
    if (k < 3) throw std::invalid_argument("two_regular_count: K must be at least 3");
    std::vector<BigInt> fact(2 * k + 1);
    fact[0] = 1;
    for (int i = 1; i <= 2 * k; ++i) fact[i] = fact[i - 1] * i;

    Rational sum = 0;
    for (int a = 0; a <= k; ++a) {
        for (int s = 0; s <= a; ++s) {
            for (int j = 0; j <= k - a; ++j) {
                BigInt num = fact[k] * fact[k - a] * fact[2 * k - a - 2 * j - s];
                BigInt den = fact[s] * fact[a - s] * fact[k - a - j] * fact[k - a - j] * fact[j];
                den <<= static_cast<unsigned>(2 * k - 2 * a - j);
                Rational term(num, den);
                if ((a + j - s) % 2 != 0) term = -term;
                sum += term;
            }
        }
    }
    if (denominator(sum) != 1) throw std::logic_error("two_regular_count: triple sum is not an integer");
    return {numerator(sum), CountMethod::two_regular_formula};
}

}  // namespace iacount
