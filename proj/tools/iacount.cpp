// SPDX-License-Identifier: Apache-2.0
//
// iacount: feasibility tests and solution counts for MIMO interference
// alignment scenarios.
//
//   iacount info "(2x2,1)^3"
//   iacount feasibility "(5x5,2)^4" --seed 3
//   iacount count "(4x4,2)^3" --method mc-square --epsilon 0.05 --seed 7

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "iacount/commands.hpp"
#include "iacount/scenario.hpp"

namespace {

using namespace iacount;

void emit(const ResultRecord& r, const std::string& format) {
    if (format == "csv")
        std::cout << to_csv(r);
    else if (format == "text")
        std::cout << to_text(r);
    else
        std::cout << to_json(r) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counts interference-alignment solutions of MIMO interference channels"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string scenario_text;
    std::string format = "json";
    std::uint64_t seed = 0;
    int draws = 1;
    double threshold = 1e-8;
    std::string method = "auto";
    double epsilon = 0.05;
    std::uint64_t max_samples = 10'000'000;
    unsigned threads = 1;
    std::string rule = "standard-error";
    std::string trace_path;
    std::uint64_t checkpoint_interval = 10'000;

    const std::vector<std::string> formats{"json", "csv", "text"};

    auto* info = app.add_subcommand("info", "Print s, Psi dimensions and the properness class");
    info->add_option("scenario", scenario_text, "Scenario, e.g. \"(2x2,1)^3\"")->required();
    info->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* feas = app.add_subcommand("feasibility", "Generic-point rank test of the alignment equations");
    feas->add_option("scenario", scenario_text)->required();
    feas->add_option("--seed", seed, "RNG seed (default: $IACOUNT_SEED or 1)");
    feas->add_option("--draws", draws, "Random points; majority verdict")->check(CLI::PositiveNumber);
    feas->add_option("--threshold", threshold, "Full rank iff sigma_min/sigma_max exceeds this");
    feas->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* count = app.add_subcommand("count", "Exact or Monte Carlo number of alignment solutions");
    count->add_option("scenario", scenario_text)->required();
    count->add_option("--method", method)->check(CLI::IsMember({"auto", "exact", "exact-dp", "mc-general", "mc-square"}));
    count->add_option("--epsilon", epsilon, "Target relative error")->check(CLI::PositiveNumber);
    count->add_option("--seed", seed, "RNG seed (default: $IACOUNT_SEED or 1)");
    count->add_option("--max-samples", max_samples)->check(CLI::PositiveNumber);
    count->add_option("--threads", threads)->check(CLI::PositiveNumber);
    count->add_option("--rule", rule, "Stopping rule")->check(CLI::IsMember({"standard-error", "sample-std"}));
    count->add_option("--trace", trace_path, "Write n,E_n,std_error_rel checkpoints to this CSV file");
    count->add_option("--checkpoint-interval", checkpoint_interval)->check(CLI::PositiveNumber);
    count->add_option("--format", format)->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const Scenario sc = parse_scenario(scenario_text);
        bool seed_given = false;
        for (const auto* sub : {feas, count})
            if (sub->parsed() && sub->count("--seed") > 0) seed_given = true;
        if (!seed_given) seed = default_seed();

        if (info->parsed()) {
            emit(cmd_info(sc), format);
        } else if (feas->parsed()) {
            emit(cmd_feasibility(sc, seed, draws, threshold), format);
        } else {
            CountOptions opts;
            opts.method = parse_count_method(method);
            opts.epsilon = epsilon;
            opts.seed = seed;
            opts.max_samples = max_samples;
            opts.threads = threads;
            opts.rule = rule == "sample-std" ? StoppingRule::sample_std : StoppingRule::standard_error;
            opts.checkpoint_interval = checkpoint_interval;
            std::unique_ptr<std::ofstream> trace;
            if (!trace_path.empty()) {
                trace = std::make_unique<std::ofstream>(trace_path);
                if (!*trace) {
                    std::cerr << "error: cannot open trace file " << trace_path << '\n';
                    return kExitUsage;
                }
                *trace << "n,mean,std_error_rel\n";
                trace->precision(17);
                opts.on_checkpoint = [&](const McCheckpoint& cp) {
                    *trace << cp.n << ',' << cp.mean << ',' << cp.std_error_rel << '\n';
                };
            }
            emit(cmd_count(sc, opts), format);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ScenarioError& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return kExitUsage;
    } catch (const HypothesisError& e) {
        std::cerr << "not applicable: " << e.what() << '\n';
        return kExitHypothesis;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
