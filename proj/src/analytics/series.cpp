#include <algorithm>
#include <limits>
#include <ostream>
#include <set>

#include "semnet/analytics/analytics.hpp"
#include "semnet/core/errors.hpp"
#include "semnet/graph/io.hpp"

namespace semnet {

ActivitySeries temporal_series(const std::vector<TweetRecord>& records, SeriesItem item,
                               const std::map<std::string, std::string>& group_of,
                               SeriesNormalization normalization, const HashtagLexicon* lexicon,
                               std::optional<std::int64_t> window_start,
                               std::optional<std::int64_t> window_end) {
    ActivitySeries series;
    series.normalization = normalization;

    // (day index, group label) events
    std::vector<std::pair<std::int64_t, const std::string*>> events;
    std::int64_t min_day = std::numeric_limits<std::int64_t>::max();
    std::int64_t max_day = std::numeric_limits<std::int64_t>::min();
    auto day_of = [](std::int64_t ts) {
        std::int64_t d = ts / 86400;
        if (ts < 0 && ts % 86400 != 0) --d;
        return d;
    };
    auto add_event = [&](std::int64_t ts, const std::string& key) {
        auto it = group_of.find(key);
        if (it == group_of.end()) {
            ++series.untracked;
            return;
        }
        const std::int64_t day = day_of(ts);
        min_day = std::min(min_day, day);
        max_day = std::max(max_day, day);
        events.emplace_back(day, &it->second);
    };

    for (const auto& rec : records) {
        if (window_start && rec.timestamp < *window_start) continue;
        if (window_end && rec.timestamp > *window_end) continue;
        if (item == SeriesItem::TweetAuthor) {
            add_event(rec.timestamp, rec.user_id);
        } else {
            for (const auto& tag : rec.hashtags)
                add_event(rec.timestamp, lexicon ? lexicon->map(tag) : tag);
        }
    }

    if (window_start) min_day = std::min(min_day, day_of(*window_start));
    if (window_end) max_day = std::max(max_day, day_of(*window_end));
    if (events.empty() && !(window_start && window_end))
        throw DataError("temporal_series: no events and no explicit window");
    if (window_start && window_end && events.empty()) {
        min_day = day_of(*window_start);
        max_day = day_of(*window_end);
    }

    std::set<std::string> labels;
    for (const auto& [day, group] : events) labels.insert(*group);
    series.groups.assign(labels.begin(), labels.end());
    std::map<std::string, std::size_t> group_index;
    for (std::size_t gidx = 0; gidx < series.groups.size(); ++gidx)
        group_index[series.groups[gidx]] = gidx;

    const std::size_t n_days = static_cast<std::size_t>(max_day - min_day + 1);
    series.dates.resize(n_days);
    for (std::size_t d = 0; d < n_days; ++d)
        series.dates[d] = utc_date((min_day + static_cast<std::int64_t>(d)) * 86400);
    series.counts.assign(series.groups.size(), std::vector<std::uint64_t>(n_days, 0));
    for (const auto& [day, group] : events)
        ++series.counts[group_index[*group]][static_cast<std::size_t>(day - min_day)];

    if (normalization != SeriesNormalization::None) {
        double global_total = 0.0;
        for (const auto& row : series.counts)
            for (std::uint64_t c : row) global_total += static_cast<double>(c);
        series.normalized.assign(series.groups.size(), std::vector<double>(n_days, 0.0));
        for (std::size_t gidx = 0; gidx < series.groups.size(); ++gidx) {
            double denom = global_total;
            if (normalization == SeriesNormalization::PerGroupTotal) {
                denom = 0.0;
                for (std::uint64_t c : series.counts[gidx]) denom += static_cast<double>(c);
            }
            if (denom <= 0.0) continue;
            for (std::size_t d = 0; d < n_days; ++d)
                series.normalized[gidx][d] = static_cast<double>(series.counts[gidx][d]) / denom;
        }
    }
    return series;
}

void write_series_csv(std::ostream& out, const ActivitySeries& series) {
    const bool has_norm = series.normalization != SeriesNormalization::None;
    out << (has_norm ? "date,group,count,normalized\n" : "date,group,count\n");
    for (std::size_t gidx = 0; gidx < series.groups.size(); ++gidx) {
        for (std::size_t d = 0; d < series.dates.size(); ++d) {
            out << series.dates[d] << ',' << csv_escape(series.groups[gidx]) << ','
                << series.counts[gidx][d];
            if (has_norm) out << ',' << format_double(series.normalized[gidx][d]);
            out << '\n';
        }
    }
}

}  // namespace semnet
