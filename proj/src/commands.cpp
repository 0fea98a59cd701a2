// SPDX-License-Identifier: Apache-2.0

#include "iacount/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <stdexcept>

#include "iacount/exact_counter.hpp"
#include "iacount/feasibility.hpp"

namespace iacount {

namespace {

ResultRecord base_record(const Scenario& sc, const char* command) {
    const ScenarioDims d = dims(sc);
    ResultRecord r;
    r.command = command;
    r.scenario = render(sc);
    r.s = d.surplus;
    r.properness = std::string(to_string(d.properness));
    r.psi_rows = d.psi_rows;
    r.psi_cols = d.psi_cols;
    return r;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool square_domain(const Scenario& sc) {
    const User& u = sc.user(0);
    return sc.square_symmetric() && sc.size() >= 3 && u.rx_antennas >= 2 * u.streams;
}

}  // namespace

std::uint64_t default_seed() {
    const char* env = std::getenv(kSeedEnvVar);
    if (env == nullptr || *env == '\0') return kDefaultSeed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw std::invalid_argument(std::string(kSeedEnvVar) + " is not an unsigned integer");
    return v;
}

ResultRecord cmd_info(const Scenario& sc) {
    const auto start = std::chrono::steady_clock::now();
    ResultRecord r = base_record(sc, "info");
    r.wall_time_seconds = seconds_since(start);
    return r;
}

ResultRecord cmd_feasibility(const Scenario& sc, std::uint64_t seed, int draws, double rank_threshold) {
    const auto start = std::chrono::steady_clock::now();
    ResultRecord r = base_record(sc, "feasibility");
    const FeasibilityReport rep = feasibility_test(sc, seed, {rank_threshold, draws});
    r.verdict = std::string(to_string(rep.verdict));
    if (rep.verdict != Verdict::improper) r.sigma_ratio = rep.sigma_ratio;
    r.seed = seed;
    r.wall_time_seconds = seconds_since(start);
    return r;
}

CountMethodChoice parse_count_method(const std::string& name) {
    if (name == "auto") return CountMethodChoice::automatic;
    if (name == "exact") return CountMethodChoice::exact;
    if (name == "exact-dp") return CountMethodChoice::exact_dp;
    if (name == "mc-general") return CountMethodChoice::mc_general;
    if (name == "mc-square") return CountMethodChoice::mc_square;
    throw std::invalid_argument("unknown count method '" + name + "'");
}

ResultRecord cmd_count(const Scenario& sc, const CountOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    ResultRecord r = base_record(sc, "count");

    CountMethodChoice method = opts.method;
    if (method == CountMethodChoice::automatic) {
        if (sc.single_beam())
            method = CountMethodChoice::exact;
        else if (square_domain(sc))
            method = CountMethodChoice::mc_square;
        else
            method = CountMethodChoice::mc_general;
    }

    switch (method) {
        case CountMethodChoice::exact:
        case CountMethodChoice::exact_dp: {
            const ExactCount c =
                method == CountMethodChoice::exact ? count_single_beam(sc, opts.threads) : count_single_beam_dp(sc);
            r.method = std::string(to_string(c.method));
            r.count = c.value.str();
            break;
        }
        case CountMethodChoice::mc_general:
        case CountMethodChoice::mc_square: {
            McOptions mc;
            mc.epsilon = opts.epsilon;
            mc.seed = opts.seed;
            mc.max_samples = opts.max_samples;
            mc.threads = opts.threads;
            mc.rule = opts.rule;
            mc.checkpoint_interval = opts.checkpoint_interval;
            mc.on_checkpoint = opts.on_checkpoint;
            const bool square = method == CountMethodChoice::mc_square;
            const McEstimate est = square ? estimate_square(sc, mc) : estimate_general(sc, mc);
            r.method = square ? "mc_square" : "mc_general";
            EstimateFields e;
            e.mean = est.mean;
            e.sample_std = est.sample_std;
            e.std_error_rel = est.std_error_rel;
            e.n = est.n;
            e.nearest_integer = est.nearest_integer;
            e.converged = est.converged;
            e.epsilon = est.epsilon;
            e.stopping_rule = est.rule == StoppingRule::standard_error ? "standard_error" : "sample_std";
            e.stop_reason = std::string(to_string(est.stop_reason));
            r.estimate = e;
            // Psi is singular at every point exactly when the network is infeasible.
            if (est.stop_reason == StopReason::all_zero) r.verdict = "infeasible";
            r.seed = opts.seed;
            break;
        }
        case CountMethodChoice::automatic:
            break;
    }
    r.wall_time_seconds = seconds_since(start);
    return r;
}

}  // namespace iacount
