// SPDX-License-Identifier: Apache-2.0
//
// Machine-readable result of one CLI command.

#ifndef IACOUNT_RESULT_RECORD_HPP
#define IACOUNT_RESULT_RECORD_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace iacount {

inline constexpr const char* kToolVersion = "iacount 1.0.0";

struct EstimateFields {
    double mean = 0.0;
    double sample_std = 0.0;
    double std_error_rel = 0.0;
    std::uint64_t n = 0;
    std::optional<std::uint64_t> nearest_integer;
    bool converged = false;
    double epsilon = 0.0;
    std::string stopping_rule;
    std::string stop_reason;

    friend bool operator==(const EstimateFields&, const EstimateFields&) = default;
};

struct ResultRecord {
    std::string tool_version = kToolVersion;
    std::string command;
    std::string scenario;  // canonical rendering
    std::int64_t s = 0;
    std::string properness;
    std::int64_t psi_rows = 0;
    std::int64_t psi_cols = 0;
    std::optional<std::string> method;
    std::optional<std::string> verdict;
    std::optional<double> sigma_ratio;
    std::optional<std::string> count;  // exact count, decimal digits
    std::optional<EstimateFields> estimate;
    std::optional<std::uint64_t> seed;
    double wall_time_seconds = 0.0;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

/// JSON object with a fixed key order. Absent optionals are omitted;
/// non-finite doubles are written as null.
std::string to_json(const ResultRecord& r, int indent = 2);

/// Throws std::invalid_argument on malformed input.
ResultRecord record_from_json(const std::string& text);

/// Two lines: a header and one row, same key order as the JSON form.
std::string to_csv(const ResultRecord& r);

/// One `key: value` line per present field.
std::string to_text(const ResultRecord& r);

}  // namespace iacount

#endif  // IACOUNT_RESULT_RECORD_HPP
