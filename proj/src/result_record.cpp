// SPDX-License-Identifier: Apache-2.0

#include "iacount/result_record.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"

namespace iacount {

namespace {

using Json = nlohmann::ordered_json;

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_from(const Json& j) {
    // Non-finite values are serialized as null; the only one produced is +inf
    // (relative error of a zero estimate).
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

Json to_json_value(const ResultRecord& r) {
    Json j;
    j["tool_version"] = r.tool_version;
    j["command"] = r.command;
    j["scenario"] = r.scenario;
    j["s"] = r.s;
    j["properness"] = r.properness;
    j["psi_rows"] = r.psi_rows;
    j["psi_cols"] = r.psi_cols;
    if (r.method) j["method"] = *r.method;
    if (r.verdict) j["verdict"] = *r.verdict;
    if (r.sigma_ratio) j["sigma_ratio"] = number_or_null(*r.sigma_ratio);
    if (r.count) j["count"] = *r.count;
    if (r.estimate) {
        const EstimateFields& e = *r.estimate;
        Json est;
        est["mean"] = number_or_null(e.mean);
        est["sample_std"] = number_or_null(e.sample_std);
        est["std_error_rel"] = number_or_null(e.std_error_rel);
        est["n"] = e.n;
        est["nearest_integer"] = e.nearest_integer ? Json(*e.nearest_integer) : Json(nullptr);
        est["converged"] = e.converged;
        est["epsilon"] = e.epsilon;
        est["stopping_rule"] = e.stopping_rule;
        est["stop_reason"] = e.stop_reason;
        j["estimate"] = est;
    }
    if (r.seed) j["seed"] = *r.seed;
    j["wall_time_seconds"] = r.wall_time_seconds;
    return j;
}

// Flattened (key, rendered value) pairs shared by the CSV and text forms.
std::vector<std::pair<std::string, std::string>> flatten(const ResultRecord& r) {
    std::vector<std::pair<std::string, std::string>> out;
    const Json j = to_json_value(r);
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            for (const auto& [sub, v] : value.items())
                out.emplace_back(key + "." + sub, v.is_string() ? v.get<std::string>() : v.dump());
        } else {
            out.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

}  // namespace

std::string to_json(const ResultRecord& r, int indent) { return to_json_value(r).dump(indent); }

ResultRecord record_from_json(const std::string& text) {
    try {
        const Json j = Json::parse(text);
        ResultRecord r;
        r.tool_version = j.at("tool_version").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.scenario = j.at("scenario").get<std::string>();
        r.s = j.at("s").get<std::int64_t>();
        r.properness = j.at("properness").get<std::string>();
        r.psi_rows = j.at("psi_rows").get<std::int64_t>();
        r.psi_cols = j.at("psi_cols").get<std::int64_t>();
        if (j.contains("method")) r.method = j["method"].get<std::string>();
        if (j.contains("verdict")) r.verdict = j["verdict"].get<std::string>();
        if (j.contains("sigma_ratio")) r.sigma_ratio = number_from(j["sigma_ratio"]);
        if (j.contains("count")) r.count = j["count"].get<std::string>();
        if (j.contains("estimate")) {
            const Json& est = j["estimate"];
            EstimateFields e;
            e.mean = number_from(est.at("mean"));
            e.sample_std = number_from(est.at("sample_std"));
            e.std_error_rel = number_from(est.at("std_error_rel"));
            e.n = est.at("n").get<std::uint64_t>();
            if (!est.at("nearest_integer").is_null()) e.nearest_integer = est["nearest_integer"].get<std::uint64_t>();
            e.converged = est.at("converged").get<bool>();
            e.epsilon = est.at("epsilon").get<double>();
            e.stopping_rule = est.at("stopping_rule").get<std::string>();
            e.stop_reason = est.at("stop_reason").get<std::string>();
            r.estimate = e;
        }
        if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
        r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed result record: ") + e.what());
    }
}

std::string to_csv(const ResultRecord& r) {
    const auto fields = flatten(r);
    std::ostringstream header, row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            header << ',';
            row << ',';
        }
        header << csv_field(fields[i].first);
        row << csv_field(fields[i].second);
    }
    return header.str() + "\n" + row.str() + "\n";
}

std::string to_text(const ResultRecord& r) {
    std::ostringstream os;
    for (const auto& [key, value] : flatten(r)) os << key << ": " << value << '\n';
    return os.str();
}

}  // namespace iacount
