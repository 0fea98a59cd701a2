// SPDX-License-Identifier: Apache-2.0

#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "iacount/mc_counter.hpp"
#include "test_support.hpp"

using namespace iacount;
using iacount::testing::general_constant_exact;
using iacount::testing::log_of;
using iacount::testing::square_constant_exact;
using iacount::testing::tight_scenarios;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// |estimate - truth| in units of the estimate's standard error.
double z_score(const McEstimate& e, double truth) {
    return std::abs(e.mean - truth) / (e.std_error_rel * e.mean);
}

}  // namespace

TEST_SUITE("mc_counter") {

TEST_CASE("general constant matches exact Gamma products") {
    const Scenario sc = parse_scenario("(2x2,1)^3");
    CHECK(general_constant_exact(sc) == 729);
    CHECK(constant_general(sc).value() == doctest::Approx(729.0).epsilon(1e-13));
    for (const auto& text : tight_scenarios()) {
        const Scenario s = parse_scenario(text);
        const double want = log_of(general_constant_exact(s));
        CAPTURE(text);
        CHECK(std::abs(constant_general(s).log_value - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("square constant matches exact Gamma products") {
    CHECK(std::abs(constant_square(parse_scenario("(2x2,1)^3")).value() - 1.0) <= 1e-12);
    CHECK(std::abs(constant_square(parse_scenario("(4x4,2)^3")).value() - 1.0) <= 1e-12);
    CHECK(square_constant_exact(2, 1, 3) == 1);
    CHECK(square_constant_exact(4, 2, 3) == 1);

    using iacount::testing::Rational;
    Rational want = 1;
    for (int i = 0; i < 12; ++i) want *= 72;
    for (int i = 0; i < 8; ++i) want /= 144;
    CHECK(square_constant_exact(5, 2, 4) == want);
    const double got = constant_square(parse_scenario("(5x5,2)^4")).log_value;
    CHECK(std::abs(got - log_of(want)) <= 1e-12 * std::abs(log_of(want)));

    for (const auto& [n, d, k] : {std::tuple{6, 3, 3}, {6, 2, 5}, {10, 4, 4}, {3, 1, 5}}) {
        const std::string text = "(" + std::to_string(n) + "x" + std::to_string(n) + "," + std::to_string(d) +
                                 ")^" + std::to_string(k);
        const double exact = log_of(square_constant_exact(n, d, k));
        CAPTURE(text);
        CHECK(std::abs(constant_square(parse_scenario(text)).log_value - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("constants reject scenarios outside their hypotheses") {
    CHECK_THROWS_AS(constant_general(parse_scenario("(3x3,1)^4")), HypothesisError);
    CHECK_THROWS_AS(constant_general(parse_scenario("(2x2,1)^4")), HypothesisError);
    CHECK_THROWS_AS(constant_square(parse_scenario("(2x3,1)(3x2,1)(2x4,1)(2x2,1)")), HypothesisError);
    CHECK_THROWS_AS(constant_square(parse_scenario("(3x3,2)^2")), HypothesisError);
    CHECK_THROWS_AS(constant_square(parse_scenario("(3x3,1)^4")), HypothesisError);
    CHECK_THROWS_AS(estimate_square(parse_scenario("(3x9,2)^5")), HypothesisError);
    CHECK_THROWS_AS(estimate_general(parse_scenario("(3x3,1)^4")), HypothesisError);
}

TEST_CASE("accumulator agrees with the naive formulas in both modes") {
    const std::vector<double> logs{0.3, -1.2, 2.5, kNegInf, 1.0, 0.0, -0.7, 3.1, kNegInf, 0.9};
    double sum = 0.0;
    for (double l : logs) sum += std::exp(l);
    const double n = static_cast<double>(logs.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double l : logs) ss += (std::exp(l) - mean) * (std::exp(l) - mean);
    const double sd = std::sqrt(ss / (n - 1));

    for (const auto mode : {AccumulationMode::linear, AccumulationMode::log_domain}) {
        McAccumulator acc(mode);
        for (double l : logs) acc.add(l);
        CHECK(acc.count() == 10);
        CHECK(acc.zero_count() == 2);
        CHECK(std::abs(acc.mean() - mean) <= 1e-12 * mean);
        CHECK(std::abs(acc.sample_std() - sd) <= 1e-12 * sd);
        CHECK(std::abs(acc.std_rel() - sd / mean) <= 1e-12 * sd / mean);
        CHECK(std::abs(acc.std_error_rel() - sd / mean / std::sqrt(n)) <= 1e-12);
        double sq = 0.0;
        for (double l : logs) sq += std::exp(2 * (l - acc.log_shift()));
        CHECK(std::abs(acc.shifted_sum() - sum * std::exp(-acc.log_shift())) <= 1e-12 * acc.shifted_sum());
        CHECK(std::abs(acc.shifted_sum_sq() - sq) <= 1e-12 * sq);
    }
}

TEST_CASE("log-domain accumulation survives magnitudes that overflow doubles") {
    McAccumulator lin(AccumulationMode::linear), logd;
    for (double l : {705.0, 709.0, 706.5, 708.0}) {
        lin.add(l);
        logd.add(l);
    }
    CHECK_FALSE(std::isfinite(lin.sample_std()));
    CHECK(std::isfinite(logd.sample_std()));
    CHECK(std::isfinite(logd.mean()));

    // Values near e^-800 underflow to zero in linear mode; the log-domain
    // state still recovers log of the mean.
    McAccumulator tiny_lin(AccumulationMode::linear), tiny_log;
    const std::vector<double> tiny{-800.0, -801.0, -799.5};
    for (double l : tiny) {
        tiny_lin.add(l);
        tiny_log.add(l);
    }
    CHECK(tiny_lin.mean() == 0.0);
    double lse = 0.0;
    for (double l : tiny) lse += std::exp(l + 799.5);
    const double want_log_mean = -799.5 + std::log(lse / 3.0);
    const double got_log_mean = tiny_log.log_shift() + std::log(tiny_log.shifted_sum() / 3.0);
    CHECK(std::abs(got_log_mean - want_log_mean) <= 1e-12 * 800);
    CHECK(tiny_log.shifted_sum_sq() > 0.0);
    CHECK(std::isfinite(tiny_log.shifted_sum_sq()));
    CHECK_FALSE(nearest_integer(5.9, 0.02).has_value());

    // Going up by hundreds of orders of magnitude in one step.
    McAccumulator jump;
    jump.add(-500.0);
    jump.add(500.0);
    CHECK(jump.log_shift() == 500.0);
    CHECK(std::abs(std::log(jump.shifted_sum()) - std::log1p(std::exp(-1000.0))) <= 1e-15);
}

TEST_CASE("empty and all-zero accumulators") {
    McAccumulator acc;
    CHECK(acc.mean() == 0.0);
    CHECK(std::isinf(acc.std_error_rel()));
    acc.add(kNegInf);
    acc.add(kNegInf);
    CHECK(acc.mean() == 0.0);
    CHECK(acc.zero_count() == 2);
    CHECK(std::isinf(acc.std_error_rel()));
}

TEST_CASE("nearest integer needs an unambiguous interval") {
    CHECK(nearest_integer(5.9, 0.1) == std::optional<std::uint64_t>(6));
    CHECK(nearest_integer(216.2, 0.3) == std::optional<std::uint64_t>(216));
    CHECK_FALSE(nearest_integer(5.5, 0.3).has_value());
    CHECK_FALSE(nearest_integer(5.5, 0.1).has_value());
    CHECK(nearest_integer(0.0, 0.0) == std::optional<std::uint64_t>(0));
    CHECK_FALSE(nearest_integer(std::nan(""), 0.1).has_value());
}

TEST_CASE("small networks estimate their known counts") {
    McOptions opts;
    opts.seed = 1;
    const McEstimate sq = estimate_square(parse_scenario("(2x2,1)^3"), opts);
    CHECK(sq.converged);
    CHECK(z_score(sq, 2.0) <= 4.0);
    const McEstimate gen = estimate_general(parse_scenario("(2x2,1)^3"), opts);
    CHECK(gen.converged);
    CHECK(z_score(gen, 2.0) <= 4.0);
    const McEstimate fig = estimate_general(parse_scenario("(2x3,1)(3x2,1)(2x4,1)(2x2,1)"), opts);
    CHECK(fig.converged);
    CHECK(z_score(fig, 2.0) <= 4.0);
    const McEstimate six = estimate_square(parse_scenario("(4x4,2)^3"), opts);
    CHECK(six.converged);
    CHECK(six.n >= opts.min_samples);
    CHECK(z_score(six, 6.0) <= 4.0);
}

TEST_CASE("both estimators agree on square networks") {
    for (const char* text : {"(2x2,1)^3", "(4x4,2)^3"}) {
        const Scenario sc = parse_scenario(text);
        McOptions opts;
        opts.seed = 3;
        const McEstimate a = estimate_general(sc, opts);
        const McEstimate b = estimate_square(sc, opts);
        const double se_a = a.std_error_rel * a.mean, se_b = b.std_error_rel * b.mean;
        CAPTURE(text);
        CHECK(std::abs(a.mean - b.mean) <= 2.0 * std::hypot(se_a, se_b));
    }
}

TEST_CASE("replay is bitwise deterministic and independent of thread count") {
    const Scenario sc = parse_scenario("(4x4,2)^3");
    McOptions opts;
    opts.seed = 11;
    const McEstimate a = estimate_square(sc, opts);
    const McEstimate b = estimate_square(sc, opts);
    opts.threads = 4;
    const McEstimate c = estimate_square(sc, opts);
    for (const McEstimate* e : {&b, &c}) {
        CHECK(e->n == a.n);
        CHECK(std::bit_cast<std::uint64_t>(e->mean) == std::bit_cast<std::uint64_t>(a.mean));
        CHECK(std::bit_cast<std::uint64_t>(e->sample_std) == std::bit_cast<std::uint64_t>(a.sample_std));
    }
    for (std::uint64_t i = 0; i < 20; ++i)
        CHECK(log_sample_square(sc, 0.0, 11, i) == log_sample_square(sc, 0.0, 11, i));
    opts.seed = 12;
    CHECK(estimate_square(sc, opts).mean != a.mean);
}

TEST_CASE("infeasible networks estimate exactly zero") {
    const Scenario sc = parse_scenario("(3x3,2)^2");
    const McEstimate e = estimate_general(sc);
    CHECK(e.mean == 0.0);
    CHECK(e.stop_reason == StopReason::all_zero);
    CHECK(e.n == 100);
    CHECK(e.zero_samples == e.n);
    CHECK_FALSE(e.converged);

    McOptions opts;
    opts.stop_when_all_zero = false;
    opts.max_samples = 500;
    const McEstimate full = estimate_general(sc, opts);
    CHECK(full.mean == 0.0);
    CHECK(full.n == 500);
    CHECK(full.zero_samples == 500);
    CHECK(full.stop_reason == StopReason::max_samples);
}

TEST_CASE("stopping rules, minimum sample count and checkpoints") {
    const Scenario sc = parse_scenario("(4x4,2)^3");
    McOptions loose;
    loose.epsilon = 10.0;
    const McEstimate early = estimate_square(sc, loose);
    CHECK(early.converged);
    CHECK(early.n == loose.min_samples);

    McOptions literal;
    literal.rule = StoppingRule::sample_std;
    literal.max_samples = 2000;
    const McEstimate lit = estimate_square(sc, literal);
    CHECK_FALSE(lit.converged);
    CHECK(lit.stop_reason == StopReason::max_samples);
    CHECK(lit.n == 2000);
    CHECK(lit.rule == StoppingRule::sample_std);

    std::vector<McCheckpoint> seen;
    McOptions traced;
    traced.epsilon = 1e-9;
    traced.max_samples = 1000;
    traced.checkpoint_interval = 100;
    traced.on_checkpoint = [&](const McCheckpoint& cp) { seen.push_back(cp); };
    const McEstimate t = estimate_square(sc, traced);
    REQUIRE(seen.size() == 10);
    for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i].n == 100 * (i + 1));
    CHECK(seen.back().mean == t.mean);

    seen.clear();
    traced.max_samples = 250;
    (void)estimate_square(sc, traced);
    REQUIRE(seen.size() == 3);
    CHECK(seen.back().n == 250);
}

TEST_CASE("invalid options are rejected") {
    McOptions opts;
    opts.epsilon = 0.0;
    CHECK_THROWS_AS(estimate_square(parse_scenario("(2x2,1)^3"), opts), std::invalid_argument);
    opts.epsilon = 0.05;
    opts.max_samples = 0;
    CHECK_THROWS_AS(estimate_square(parse_scenario("(2x2,1)^3"), opts), std::invalid_argument);
}

}  // TEST_SUITE
