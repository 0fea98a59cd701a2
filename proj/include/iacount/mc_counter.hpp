// SPDX-License-Identifier: Apache-2.0
//
// Crude Monte Carlo estimates of the number of alignment solutions of a
// tightly feasible (s = 0) network. Each sample evaluates
//
//     f(x) = C * |det Psi(x)|^2
//
// at a random channel point x, and the count is approximated by the sample
// mean. Two integration domains are supported:
//
//   * general networks: channels uniform on the unit sphere of each link,
//     with C = prod_links G(N_k M_l)/G(N_k M_l - d_k d_l) times Grassmannian
//     volume ratios;
//   * square symmetric networks (N x N, d)^K, K >= 3: Haar Stiefel blocks,
//     which typically needs far fewer samples.
//
// All per-sample values are handled as logarithms; magnitudes for large
// networks span hundreds of orders of magnitude.

#ifndef IACOUNT_MC_COUNTER_HPP
#define IACOUNT_MC_COUNTER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "iacount/scenario.hpp"

namespace iacount {

struct LogConstant {
    double log_value = 0.0;  // natural log of the constant

    double value() const;
};

/// Constant of the unit-sphere integral. Throws HypothesisError unless s = 0.
LogConstant constant_general(const Scenario& sc);

/// Constant of the Stiefel integral. Throws HypothesisError unless the
/// scenario is square symmetric, tight and has at least 3 users.
LogConstant constant_square(const Scenario& sc);

enum class StoppingRule {
    standard_error,  // (Sigma_n / sqrt(n)) / E_n < epsilon
    sample_std,      // Sigma_n / E_n < epsilon
};

enum class AccumulationMode {
    log_domain,  // running-max shift, safe for any magnitude
    linear,      // plain doubles; overflows for large networks
};

/**
 * Streaming mean and sample standard deviation of values supplied as their
 * natural logarithms (-infinity for exact zeros).
 *
 * In log-domain mode the state is kept relative to the largest log-value
 * seen so far and rescaled when a new maximum arrives.
 */
class McAccumulator {
public:
    explicit McAccumulator(AccumulationMode mode = AccumulationMode::log_domain) : mode_(mode) {}

    void add(double log_value);

    std::uint64_t count() const noexcept { return n_; }
    std::uint64_t zero_count() const noexcept { return zeros_; }
    double mean() const;
    double sample_std() const;
    /// Standard error of the mean divided by the mean; +inf when the mean is 0.
    double std_error_rel() const;
    /// Sample standard deviation over the mean; +inf when the mean is 0.
    double std_rel() const;

    /// Log of the current shift; the running shifted moments below are
    /// sum exp(L_j - shift) and sum exp(2 (L_j - shift)).
    double log_shift() const noexcept { return shift_; }
    double shifted_sum() const;
    double shifted_sum_sq() const;

private:
    AccumulationMode mode_;
    std::uint64_t n_ = 0;
    std::uint64_t zeros_ = 0;
    double shift_ = 0.0;  // log-domain only; stays 0 in linear mode until a nonzero arrives
    bool has_shift_ = false;
    double mean_ = 0.0;  // Welford mean of shifted (or raw) values
    double m2_ = 0.0;    // Welford sum of squared deviations
};

enum class StopReason { converged, max_samples, all_zero };

std::string_view to_string(StopReason r) noexcept;

struct McCheckpoint {
    std::uint64_t n = 0;
    double mean = 0.0;
    double std_error_rel = 0.0;
};

struct McOptions {
    double epsilon = 0.05;
    std::uint64_t seed = 0;
    std::uint64_t max_samples = 10'000'000;
    std::uint64_t min_samples = 100;  // no stop decision before this many samples
    StoppingRule rule = StoppingRule::standard_error;
    AccumulationMode mode = AccumulationMode::log_domain;
    unsigned threads = 1;
    std::uint64_t checkpoint_interval = 10'000;
    std::function<void(const McCheckpoint&)> on_checkpoint;
    /// LU pivots below this fraction of the largest pivot count as exact
    /// zeros, so structurally singular Psi contributes 0.
    double pivot_tolerance = 1e-12;
    /// Stop once min_samples samples have all evaluated to exactly zero.
    bool stop_when_all_zero = true;
};

struct McEstimate {
    std::uint64_t n = 0;
    double mean = 0.0;         // E_n
    double sample_std = 0.0;   // Sigma_n
    double std_error_rel = 0.0;
    double epsilon = 0.0;
    bool converged = false;
    StopReason stop_reason = StopReason::max_samples;
    StoppingRule rule = StoppingRule::standard_error;
    double log_constant = 0.0;
    double log_shift = 0.0;
    double shifted_sum = 0.0;
    double shifted_sum_sq = 0.0;
    std::uint64_t zero_samples = 0;
    /// Set only when std_error_rel < 0.05 and mean +- 2 standard errors
    /// contains exactly one integer.
    std::optional<std::uint64_t> nearest_integer;
};

/// Natural log of one sample value C |det Psi|^2 (or -inf) for each domain.
double log_sample_general(const Scenario& sc, double log_constant, std::uint64_t seed, std::uint64_t index,
                          double pivot_tolerance = 1e-12);
double log_sample_square(const Scenario& sc, double log_constant, std::uint64_t seed, std::uint64_t index,
                         double pivot_tolerance = 1e-12);

/// Unit-sphere estimator. Throws HypothesisError unless s = 0.
McEstimate estimate_general(const Scenario& sc, const McOptions& opts = {});

/// Stiefel estimator for (N x N, d)^K. Same hypotheses as constant_square.
McEstimate estimate_square(const Scenario& sc, const McOptions& opts = {});

/// Integer implied by an estimate, if any (see McEstimate::nearest_integer).
std::optional<std::uint64_t> nearest_integer(double mean, double std_error);

}  // namespace iacount

#endif  // IACOUNT_MC_COUNTER_HPP
