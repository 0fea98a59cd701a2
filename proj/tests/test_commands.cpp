// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "iacount/commands.hpp"

using namespace iacount;

namespace {

ResultRecord without_time(ResultRecord r) {
    r.wall_time_seconds = 0.0;
    return r;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("info reports dimensions and properness") {
    const ResultRecord r = cmd_info(parse_scenario("(2x2,1)(2x2,1)(2x2,1)"));
    CHECK(r.command == "info");
    CHECK(r.scenario == "(2x2,1)^3");
    CHECK(r.s == 0);
    CHECK(r.psi_rows == 6);
    CHECK(r.psi_cols == 6);
    CHECK(r.properness == "tight");
    CHECK_FALSE(r.verdict.has_value());
    CHECK(cmd_info(parse_scenario("(2x2,1)^4")).properness == "improper");
}

TEST_CASE("feasibility command") {
    const ResultRecord f = cmd_feasibility(parse_scenario("(5x5,2)^4"), 3);
    CHECK(f.verdict == std::optional<std::string>("feasible"));
    REQUIRE(f.sigma_ratio.has_value());
    CHECK(*f.sigma_ratio > 1e-8);
    CHECK(f.seed == std::optional<std::uint64_t>(3));
    CHECK(cmd_feasibility(parse_scenario("(3x3,2)^2"), 3).verdict == std::optional<std::string>("infeasible"));
    const ResultRecord imp = cmd_feasibility(parse_scenario("(2x2,1)^4"), 3);
    CHECK(imp.verdict == std::optional<std::string>("improper"));
    CHECK_FALSE(imp.sigma_ratio.has_value());
}

TEST_CASE("count dispatches on the scenario") {
    CountOptions opts;
    const ResultRecord exact = cmd_count(parse_scenario("(2x4,1)^5"), opts);
    CHECK(exact.method == std::optional<std::string>("backtracking"));
    CHECK(exact.count == std::optional<std::string>("44"));
    CHECK_FALSE(exact.estimate.has_value());

    opts.method = CountMethodChoice::exact_dp;
    CHECK(cmd_count(parse_scenario("(3x5,1)^7"), opts).count == std::optional<std::string>("357435"));

    opts.method = CountMethodChoice::automatic;
    opts.seed = 7;
    const ResultRecord sq = cmd_count(parse_scenario("(4x4,2)^3"), opts);
    CHECK(sq.method == std::optional<std::string>("mc_square"));
    REQUIRE(sq.estimate.has_value());
    CHECK(sq.estimate->converged);
    CHECK(sq.estimate->stopping_rule == "standard_error");
    CHECK(sq.estimate->stop_reason == "converged");
    CHECK(sq.estimate->mean == doctest::Approx(6.0).epsilon(0.15));

    const ResultRecord gen = cmd_count(parse_scenario("(3x3,2)^2"), opts);
    CHECK(gen.method == std::optional<std::string>("mc_general"));
    CHECK(gen.verdict == std::optional<std::string>("infeasible"));
    CHECK(gen.estimate->mean == 0.0);
    CHECK(gen.estimate->stop_reason == "all_zero");

    opts.method = CountMethodChoice::mc_square;
    CHECK_THROWS_AS(cmd_count(parse_scenario("(3x4,1)(4x3,1)(3x3,1)"), opts), HypothesisError);
    opts.method = CountMethodChoice::exact;
    CHECK_THROWS_AS(cmd_count(parse_scenario("(4x4,2)^3"), opts), HypothesisError);
}

TEST_CASE("method names") {
    CHECK(parse_count_method("auto") == CountMethodChoice::automatic);
    CHECK(parse_count_method("exact-dp") == CountMethodChoice::exact_dp);
    CHECK(parse_count_method("mc-square") == CountMethodChoice::mc_square);
    CHECK_THROWS_AS(parse_count_method("mc_square"), std::invalid_argument);
}

TEST_CASE("default seed comes from the environment") {
    ::unsetenv(kSeedEnvVar);
    CHECK(default_seed() == kDefaultSeed);
    ::setenv(kSeedEnvVar, "12345", 1);
    CHECK(default_seed() == 12345);
    ::setenv(kSeedEnvVar, "12x", 1);
    CHECK_THROWS_AS(default_seed(), std::invalid_argument);
    ::unsetenv(kSeedEnvVar);
}

TEST_CASE("records are deterministic apart from wall time") {
    CountOptions opts;
    opts.seed = 5;
    const Scenario sc = parse_scenario("(2x2,1)^3");
    opts.method = CountMethodChoice::mc_general;
    CHECK(without_time(cmd_count(sc, opts)) == without_time(cmd_count(sc, opts)));
    CHECK(without_time(cmd_feasibility(sc, 5)) == without_time(cmd_feasibility(sc, 5)));
}

TEST_CASE("JSON round trip and key order") {
    CountOptions opts;
    opts.seed = 9;
    std::vector<ResultRecord> records{
        cmd_info(parse_scenario("(3x3,1)^4")),
        cmd_feasibility(parse_scenario("(5x5,2)^4"), 2),
        cmd_count(parse_scenario("(3x5,1)^7"), opts),
        cmd_count(parse_scenario("(4x4,2)^3"), opts),
        cmd_count(parse_scenario("(3x3,2)^2"), opts),
    };
    for (const ResultRecord& r : records) {
        const std::string js = to_json(r);
        CHECK(record_from_json(js) == r);
        CHECK(js.find("\"tool_version\"") < js.find("\"command\""));
        CHECK(js.find("\"command\"") < js.find("\"scenario\""));
        CHECK(js.find("\"scenario\"") < js.find("\"wall_time_seconds\""));
        CHECK(to_json(record_from_json(js)) == js);
    }
    // Exact counts stay exact strings even beyond 64 bits.
    ResultRecord big = records[2];
    big.count = "123456789012345678901234567890";
    CHECK(record_from_json(to_json(big)).count == big.count);

    // The infeasible estimate has an infinite relative error, written as null.
    const std::string js = to_json(records[4]);
    CHECK(js.find("\"std_error_rel\": null") != std::string::npos);
    CHECK(std::isinf(record_from_json(js).estimate->std_error_rel));

    CHECK_THROWS_AS(record_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(record_from_json("{\"command\": 3}"), std::invalid_argument);
    CHECK_THROWS_AS(record_from_json("[]"), std::invalid_argument);
}

TEST_CASE("CSV and text forms") {
    CountOptions opts;
    const ResultRecord r = cmd_count(parse_scenario("(2x4,1)^5"), opts);
    const std::string csv = to_csv(r);
    CHECK(count_lines(csv) == 2);
    CHECK(csv.rfind("tool_version,command,scenario,", 0) == 0);
    CHECK(csv.find("\"(2x4,1)^5\"") != std::string::npos);
    CHECK(csv.find(",44,") != std::string::npos);

    const std::string text = to_text(r);
    CHECK(text.find("count: 44\n") != std::string::npos);
    CHECK(text.find("scenario: (2x4,1)^5\n") != std::string::npos);

    opts.seed = 4;
    const ResultRecord mc = cmd_count(parse_scenario("(2x2,1)^3"), opts);
    CHECK(mc.method == std::optional<std::string>("backtracking"));
    opts.method = CountMethodChoice::mc_square;
    const std::string mc_text = to_text(cmd_count(parse_scenario("(2x2,1)^3"), opts));
    CHECK(mc_text.find("estimate.mean: ") != std::string::npos);
    CHECK(mc_text.find("estimate.stopping_rule: standard_error") != std::string::npos);
    const std::string mc_csv = to_csv(cmd_count(parse_scenario("(2x2,1)^3"), opts));
    CHECK(mc_csv.find("estimate.mean") != std::string::npos);
}

}  // TEST_SUITE
