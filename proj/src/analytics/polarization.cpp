#include <cmath>
#include <ostream>
#include <set>

#include "semnet/analytics/analytics.hpp"
#include "semnet/core/errors.hpp"
#include "semnet/graph/io.hpp"

namespace semnet {

PolarizationReport polarization(const BipartiteGraph& retweet_graph,
                                const std::map<std::string, std::string>& community_of_verified,
                                double histogram_bin_width) {
    if (!(histogram_bin_width > 0.0 && histogram_bin_width <= 1.0))
        throw ConfigError("polarization: histogram bin width must lie in (0,1]");

    PolarizationReport report;
    report.bin_width = histogram_bin_width;
    std::set<std::string> labels;
    for (const auto& [user, comm] : community_of_verified) labels.insert(comm);
    report.communities.assign(labels.begin(), labels.end());

    // community label per verified node index, empty = untracked
    std::vector<const std::string*> community_of_top(retweet_graph.top_count(), nullptr);
    for (const auto& [user, comm] : community_of_verified) {
        const std::int64_t idx = retweet_graph.top_index(user);
        if (idx >= 0) community_of_top[static_cast<std::size_t>(idx)] = &comm;
    }

    const std::size_t n_bins =
        static_cast<std::size_t>(std::ceil(1.0 / histogram_bin_width + 1e-9));
    report.histogram.assign(n_bins, 0);

    for (std::uint32_t alpha = 0; alpha < retweet_graph.bottom_count(); ++alpha) {
        const auto& neighbors = retweet_graph.bottom_adjacency(alpha);
        if (neighbors.empty()) {
            ++report.excluded_no_neighbors;
            continue;
        }
        PolarizationRow row;
        row.user_id = retweet_graph.bottom_id(alpha);
        std::map<std::string, std::uint64_t> hits;
        for (std::uint32_t v : neighbors) {
            if (const std::string* comm = community_of_top[v]) ++hits[*comm];
        }
        const double denom = static_cast<double>(neighbors.size());
        for (const auto& [comm, count] : hits) {
            const double frac = static_cast<double>(count) / denom;
            row.fractions[comm] = frac;
            // strict > keeps the lexicographically smallest community on ties
            if (frac > row.rho) {
                row.rho = frac;
                row.top_community = comm;
            }
        }
        std::size_t bin = static_cast<std::size_t>(row.rho / histogram_bin_width);
        if (bin >= n_bins) bin = n_bins - 1;  // rho = 1 joins the last bin
        ++report.histogram[bin];
        report.rows.push_back(std::move(row));
    }
    return report;
}

void write_polarization_csv(std::ostream& out, const PolarizationReport& report) {
    out << "user_id,rho,top_community\n";
    for (const auto& row : report.rows)
        out << csv_escape(row.user_id) << ',' << format_double(row.rho) << ','
            << csv_escape(row.top_community) << '\n';
}

void write_polarization_histogram_csv(std::ostream& out, const PolarizationReport& report) {
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < report.histogram.size(); ++b) {
        const double lo = static_cast<double>(b) * report.bin_width;
        const double hi = std::min(1.0, lo + report.bin_width);
        out << format_double(lo) << ',' << format_double(hi) << ',' << report.histogram[b] << '\n';
    }
}

}  // namespace semnet
