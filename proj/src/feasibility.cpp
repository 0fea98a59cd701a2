// SPDX-License-Identifier: Apache-2.0

#include "iacount/feasibility.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "iacount/psi.hpp"
#include "iacount/sampling.hpp"

namespace iacount {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::improper: return "improper";
        case Verdict::infeasible: return "infeasible";
        case Verdict::feasible: return "feasible";
    }
    return "unknown";
}

FeasibilityReport feasibility_test(const Scenario& sc, std::uint64_t seed, const FeasibilityOptions& opts) {
    if (opts.draws < 1) throw std::invalid_argument("feasibility_test: draws must be positive");
    FeasibilityReport report;
    const ScenarioDims d = dims(sc);
    if (d.surplus < 0) {
        report.verdict = Verdict::improper;
        return report;
    }

    struct Draw {
        double ratio, smin, smax;
    };
    std::vector<Draw> draws;
    int votes = 0;
    for (int i = 0; i < opts.draws; ++i) {
        const ChannelPoint pt = sample_gaussian_point(sc, {seed, static_cast<std::uint64_t>(i)});
        const std::vector<double> sv = singular_values(assemble_psi(sc, pt).matrix);
        const double smax = sv.empty() ? 0.0 : sv.front();
        const double smin = sv.size() < static_cast<std::size_t>(d.psi_rows) ? 0.0 : sv[d.psi_rows - 1];
        const double ratio = smax > 0 ? smin / smax : 0.0;
        if (ratio > opts.rank_threshold) ++votes;
        draws.push_back({ratio, smin, smax});
    }
    std::sort(draws.begin(), draws.end(), [](const Draw& a, const Draw& b) { return a.ratio < b.ratio; });
    const Draw& median = draws[draws.size() / 2];
    report.sigma_min = median.smin;
    report.sigma_max = median.smax;
    report.sigma_ratio = median.ratio;
    report.verdict = 2 * votes > opts.draws ? Verdict::feasible : Verdict::infeasible;
    return report;
}

}  // namespace iacount
