// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the `iacount` executable.

#ifndef IACOUNT_COMMANDS_HPP
#define IACOUNT_COMMANDS_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "iacount/mc_counter.hpp"
#include "iacount/result_record.hpp"
#include "iacount/scenario.hpp"

namespace iacount {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,       // bad flags, unparsable or invalid scenario
    kExitHypothesis = 3,  // operation not applicable to the scenario
};

/// Environment variable overriding the default seed.
inline constexpr const char* kSeedEnvVar = "IACOUNT_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1;

/// Default seed: $IACOUNT_SEED when set to an unsigned integer, else kDefaultSeed.
std::uint64_t default_seed();

ResultRecord cmd_info(const Scenario& sc);

ResultRecord cmd_feasibility(const Scenario& sc, std::uint64_t seed, int draws = 1, double rank_threshold = 1e-8);

enum class CountMethodChoice { automatic, exact, exact_dp, mc_general, mc_square };

/// Parses auto|exact|exact-dp|mc-general|mc-square.
CountMethodChoice parse_count_method(const std::string& name);

struct CountOptions {
    CountMethodChoice method = CountMethodChoice::automatic;
    double epsilon = 0.05;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t max_samples = 10'000'000;
    unsigned threads = 1;
    StoppingRule rule = StoppingRule::standard_error;
    std::uint64_t checkpoint_interval = 10'000;
    std::function<void(const McCheckpoint&)> on_checkpoint;
};

/**
 * Exact or Monte Carlo count. `automatic` picks backtracking for single-beam
 * networks, the Stiefel estimator for square symmetric ones, and the
 * unit-sphere estimator otherwise. Throws HypothesisError when the chosen
 * method does not apply.
 */
ResultRecord cmd_count(const Scenario& sc, const CountOptions& opts);

}  // namespace iacount

#endif  // IACOUNT_COMMANDS_HPP
