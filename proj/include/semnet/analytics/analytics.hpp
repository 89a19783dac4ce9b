#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "semnet/graph/bipartite.hpp"
#include "semnet/graph/undirected.hpp"
#include "semnet/ingest/lexicon.hpp"
#include "semnet/ingest/record.hpp"

namespace semnet {

// ---------------------------------------------------------------------------
// Polarization

struct PolarizationRow {
    std::string user_id;  // non-verified user
    double rho = 0.0;
    std::string top_community;                // argmax community; empty when rho = 0
    std::map<std::string, double> fractions;  // I_{alpha,c}, nonzero entries
};

struct PolarizationReport {
    std::vector<std::string> communities;  // tracked community labels, sorted
    std::vector<PolarizationRow> rows;     // one per non-verified user with neighbors
    std::uint64_t excluded_no_neighbors = 0;
    double bin_width = 0.05;
    std::vector<std::uint64_t> histogram;  // bins [k*w, (k+1)*w), last closed at 1
};

// `retweet_graph` is the verified (top) x non-verified (bottom) graph;
// `community_of_verified` maps verified user ids to community labels.
// Interaction counting is binary per (user, verified account) pair.
PolarizationReport polarization(const BipartiteGraph& retweet_graph,
                                const std::map<std::string, std::string>& community_of_verified,
                                double histogram_bin_width = 0.05);

void write_polarization_csv(std::ostream& out, const PolarizationReport& report);
void write_polarization_histogram_csv(std::ostream& out, const PolarizationReport& report);

// ---------------------------------------------------------------------------
// Betweenness

// Shortest-path betweenness, unweighted geodesics: unordered pairs counted
// once, endpoints excluded, no normalization. Deterministic for any thread
// count (fixed-size source blocks, reduced in order).
std::vector<double> betweenness(const UndirectedGraph& g, unsigned threads = 1);

// Values keyed by node id; `subset` restricts which nodes are reported (the
// computation always runs over the whole graph).
std::map<std::string, double> betweenness_map(
    const UndirectedGraph& g,
    const std::optional<std::unordered_set<std::string>>& subset = std::nullopt,
    unsigned threads = 1);

// ---------------------------------------------------------------------------
// Temporal series

enum class SeriesItem { TweetAuthor, Hashtag };
enum class SeriesNormalization { None, PerGroupTotal, GlobalTotal };

struct ActivitySeries {
    std::vector<std::string> dates;   // consecutive UTC days covering the window
    std::vector<std::string> groups;  // sorted group labels
    std::vector<std::vector<std::uint64_t>> counts;  // [group][day]
    std::vector<std::vector<double>> normalized;     // filled unless None
    SeriesNormalization normalization = SeriesNormalization::None;
    std::uint64_t untracked = 0;  // events whose item has no group
};

// Daily counts per group. For TweetAuthor one event per record (grouped by
// the author's entry in group_of); for Hashtag one event per hashtag use in
// each record (canonicalized through `lexicon` when given). The window
// defaults to the span of observed events; zero-count days are kept.
ActivitySeries temporal_series(const std::vector<TweetRecord>& records, SeriesItem item,
                               const std::map<std::string, std::string>& group_of,
                               SeriesNormalization normalization = SeriesNormalization::None,
                               const HashtagLexicon* lexicon = nullptr,
                               std::optional<std::int64_t> window_start = std::nullopt,
                               std::optional<std::int64_t> window_end = std::nullopt);

// CSV `date,group,count[,normalized]`.
void write_series_csv(std::ostream& out, const ActivitySeries& series);

// ---------------------------------------------------------------------------
// Cross-tabulation

struct CrossTab {
    std::vector<std::string> row_labels;  // discursive communities, sorted
    std::vector<std::string> col_labels;  // semantic communities, sorted
    std::vector<std::vector<std::uint64_t>> counts;
    std::uint64_t untracked = 0;    // events with an unmapped user or hashtag
    std::uint64_t total_events = 0;
};

// Counts every (record, hashtag use) event whose author and canonical
// hashtag are both tracked. `verified_only` restricts rows to records
// authored by verified users.
CrossTab crosstab(const std::vector<TweetRecord>& records,
                  const std::map<std::string, std::string>& user_community,
                  const std::map<std::string, std::string>& hashtag_community,
                  const HashtagLexicon* lexicon = nullptr, bool verified_only = false);

// CSV matrix with labeled rows/columns.
void write_crosstab_csv(std::ostream& out, const CrossTab& tab);

// ---------------------------------------------------------------------------
// Bot-score filtering

// Score file: CSV `user_id,score` (optional header).
std::map<std::string, double> read_bot_scores(std::istream& in);
std::map<std::string, double> read_bot_scores_file(const std::string& path);

struct BotFilterResult {
    std::vector<TweetRecord> records;  // authors scoring >= threshold
    std::uint64_t kept = 0;
    std::uint64_t dropped_below_threshold = 0;
    std::uint64_t dropped_unscored = 0;
    std::uint64_t unscored_users = 0;
};

BotFilterResult filter_by_bot_score(const std::vector<TweetRecord>& records,
                                    const std::map<std::string, double>& scores, double threshold);

}  // namespace semnet
