// SPDX-License-Identifier: Apache-2.0

#include "iacount/mc_counter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "iacount/linalg.hpp"
#include "iacount/psi.hpp"
#include "iacount/sampling.hpp"

namespace iacount {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sum_{j=2}^{a} log Gamma(j); empty sums are 0.
double log_gamma_run(int from, int to) {
    double s = 0.0;
    for (int j = std::max(from, 2); j <= to; ++j) s += std::lgamma(static_cast<double>(j));
    return s;
}

// log of Gamma(2)...Gamma(d) Gamma(2)...Gamma(n-d) / (Gamma(2)...Gamma(n)),
// i.e. the Grassmannian volume without its power of pi.
double log_grassmann_ratio(int d, int n) {
    return log_gamma_run(2, d) + log_gamma_run(2, n - d) - log_gamma_run(2, n);
}

void require_tight(const Scenario& sc) {
    const ScenarioDims d = dims(sc);
    if (d.surplus != 0)
        throw HypothesisError("solution counting needs a tight scenario (s = 0), got s = " + std::to_string(d.surplus));
}

void require_square_domain(const Scenario& sc) {
    if (!sc.square_symmetric()) throw HypothesisError("scenario is not square symmetric (N x N, d)^K");
    if (sc.size() < 3) throw HypothesisError("the Stiefel integral needs K >= 3");
    require_tight(sc);
    const User& u = sc.user(0);
    if (u.rx_antennas < 2 * u.streams) throw HypothesisError("the Stiefel integral needs N >= 2d");
}

double log_det_term(const Scenario& sc, const ChannelPoint& pt, double pivot_tolerance) {
    return log_abs_det_sq(assemble_psi(sc, pt).matrix, pivot_tolerance).log_abs_det_sq;
}

using SampleFn = double (*)(const Scenario&, double, std::uint64_t, std::uint64_t, double);

McEstimate run_estimator(const Scenario& sc, double log_constant, SampleFn sample, const McOptions& opts) {
    if (!(opts.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    if (opts.max_samples < 1) throw std::invalid_argument("max_samples must be positive");

    McAccumulator acc(opts.mode);
    McEstimate est;
    est.epsilon = opts.epsilon;
    est.rule = opts.rule;
    est.log_constant = log_constant;

    const unsigned threads = std::max(1u, opts.threads);
    const std::uint64_t batch = threads == 1 ? 1 : 256 * static_cast<std::uint64_t>(threads);
    std::vector<double> values;

    auto checkpoint = [&] {
        if (opts.on_checkpoint) opts.on_checkpoint({acc.count(), acc.mean(), acc.std_error_rel()});
    };

    bool done = false;
    std::uint64_t next = 0;
    while (!done && next < opts.max_samples) {
        const std::uint64_t count = std::min(batch, opts.max_samples - next);
        values.assign(count, 0.0);
        if (threads == 1) {
            values[0] = sample(sc, log_constant, opts.seed, next, opts.pivot_tolerance);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&, t] {
                    for (std::uint64_t i = t; i < count; i += threads)
                        values[i] = sample(sc, log_constant, opts.seed, next + i, opts.pivot_tolerance);
                });
            }
        }

        // Ordered fold; the stop index never depends on the thread count.
        for (std::uint64_t i = 0; i < count; ++i) {
            acc.add(values[i]);
            const std::uint64_t n = acc.count();
            if (opts.checkpoint_interval > 0 && n % opts.checkpoint_interval == 0) checkpoint();
            if (n < opts.min_samples) continue;
            if (opts.stop_when_all_zero && acc.zero_count() == n) {
                est.stop_reason = StopReason::all_zero;
                done = true;
                break;
            }
            const double ratio = opts.rule == StoppingRule::standard_error ? acc.std_error_rel() : acc.std_rel();
            if (ratio < opts.epsilon) {
                est.stop_reason = StopReason::converged;
                est.converged = true;
                done = true;
                break;
            }
        }
        next += count;
    }
    if (opts.checkpoint_interval == 0 || acc.count() % opts.checkpoint_interval != 0) checkpoint();

    est.n = acc.count();
    est.mean = acc.mean();
    est.sample_std = acc.sample_std();
    est.std_error_rel = acc.std_error_rel();
    est.log_shift = acc.log_shift();
    est.shifted_sum = acc.shifted_sum();
    est.shifted_sum_sq = acc.shifted_sum_sq();
    est.zero_samples = acc.zero_count();
    if (est.std_error_rel < 0.05)
        est.nearest_integer = nearest_integer(est.mean, est.sample_std / std::sqrt(static_cast<double>(est.n)));
    return est;
}

}  // namespace

double LogConstant::value() const { return std::exp(log_value); }

LogConstant constant_general(const Scenario& sc) {
    require_tight(sc);
    double s = 0.0;
    for (const Link& link : sc.links()) {
        const User& rx = sc.user(link.rx_user);
        const User& tx = sc.user(link.tx_user);
        const double dim = static_cast<double>(rx.rx_antennas) * tx.tx_antennas;
        const double fixed = static_cast<double>(rx.streams) * tx.streams;
        s += std::lgamma(dim) - std::lgamma(dim - fixed);
    }
    for (const User& u : sc.users()) {
        s += log_grassmann_ratio(u.streams, u.rx_antennas);
        s += log_grassmann_ratio(u.streams, u.tx_antennas);
    }
    return {s};
}

LogConstant constant_square(const Scenario& sc) {
    require_square_domain(sc);
    const int n = sc.user(0).rx_antennas;
    const int d = sc.user(0).streams;
    const double k = static_cast<double>(sc.size());
    const double top = log_gamma_run(n - d + 1, n);
    const double per_link = top - log_gamma_run(n - 2 * d + 1, n - d);
    const double per_user = log_gamma_run(2, d) - top;
    return {k * (k - 1) * per_link + 2 * k * per_user};
}

void McAccumulator::add(double log_value) {
    ++n_;
    double x;
    if (std::isinf(log_value) && log_value < 0) {
        ++zeros_;
        x = 0.0;
    } else if (mode_ == AccumulationMode::linear) {
        x = std::exp(log_value);
    } else {
        if (!has_shift_ || log_value > shift_) {
            if (has_shift_) {
                const double r = std::exp(shift_ - log_value);
                mean_ *= r;
                m2_ *= r * r;
            }
            shift_ = log_value;
            has_shift_ = true;
        }
        x = std::exp(log_value - shift_);
    }
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
    if (m2_ < 0) m2_ = 0;
}

double McAccumulator::mean() const {
    if (n_ == 0) return 0.0;
    return mean_ * std::exp(shift_);
}

double McAccumulator::sample_std() const {
    if (n_ < 2) return 0.0;
    return std::sqrt(m2_ / static_cast<double>(n_ - 1)) * std::exp(shift_);
}

double McAccumulator::std_rel() const {
    const double m = mean();
    return m > 0 ? sample_std() / m : kInf;
}

double McAccumulator::std_error_rel() const {
    if (n_ == 0) return kInf;
    return std_rel() / std::sqrt(static_cast<double>(n_));
}

double McAccumulator::shifted_sum() const { return mean_ * static_cast<double>(n_); }

double McAccumulator::shifted_sum_sq() const { return m2_ + mean_ * mean_ * static_cast<double>(n_); }

std::string_view to_string(StopReason r) noexcept {
    switch (r) {
        case StopReason::converged: return "converged";
        case StopReason::max_samples: return "max_samples";
        case StopReason::all_zero: return "all_zero";
    }
    return "unknown";
}

double log_sample_general(const Scenario& sc, double log_constant, std::uint64_t seed, std::uint64_t index,
                          double pivot_tolerance) {
    return log_constant + log_det_term(sc, sample_sphere_point(sc, {seed, index}), pivot_tolerance);
}

double log_sample_square(const Scenario& sc, double log_constant, std::uint64_t seed, std::uint64_t index,
                         double pivot_tolerance) {
    return log_constant + log_det_term(sc, sample_stiefel_point(sc, {seed, index}), pivot_tolerance);
}

McEstimate estimate_general(const Scenario& sc, const McOptions& opts) {
    return run_estimator(sc, constant_general(sc).log_value, &log_sample_general, opts);
}

McEstimate estimate_square(const Scenario& sc, const McOptions& opts) {
    return run_estimator(sc, constant_square(sc).log_value, &log_sample_square, opts);
}

std::optional<std::uint64_t> nearest_integer(double mean, double std_error) {
    if (!std::isfinite(mean) || !std::isfinite(std_error) || mean < 0) return std::nullopt;
    const double lo = std::ceil(std::max(0.0, mean - 2 * std_error));
    const double hi = std::floor(mean + 2 * std_error);
    if (hi != lo || hi >= 0x1p63) return std::nullopt;
    return static_cast<std::uint64_t>(hi);
}

}  // namespace iacount
