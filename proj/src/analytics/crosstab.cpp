#include <ostream>
#include <set>

#include "semnet/analytics/analytics.hpp"
#include "semnet/graph/io.hpp"

namespace semnet {

CrossTab crosstab(const std::vector<TweetRecord>& records,
                  const std::map<std::string, std::string>& user_community,
                  const std::map<std::string, std::string>& hashtag_community,
                  const HashtagLexicon* lexicon, bool verified_only) {
    CrossTab tab;
    std::set<std::string> rows, cols;
    for (const auto& [u, c] : user_community) rows.insert(c);
    for (const auto& [h, c] : hashtag_community) cols.insert(c);
    tab.row_labels.assign(rows.begin(), rows.end());
    tab.col_labels.assign(cols.begin(), cols.end());
    std::map<std::string, std::size_t> row_index, col_index;
    for (std::size_t r = 0; r < tab.row_labels.size(); ++r) row_index[tab.row_labels[r]] = r;
    for (std::size_t c = 0; c < tab.col_labels.size(); ++c) col_index[tab.col_labels[c]] = c;
    tab.counts.assign(tab.row_labels.size(),
                      std::vector<std::uint64_t>(tab.col_labels.size(), 0));

    for (const auto& rec : records) {
        if (verified_only && !rec.verified) continue;
        const auto user_it = user_community.find(rec.user_id);
        for (const auto& tag : rec.hashtags) {
            ++tab.total_events;
            if (user_it == user_community.end()) {
                ++tab.untracked;
                continue;
            }
            const auto tag_it = hashtag_community.find(lexicon ? lexicon->map(tag) : tag);
            if (tag_it == hashtag_community.end()) {
                ++tab.untracked;
                continue;
            }
            ++tab.counts[row_index[user_it->second]][col_index[tag_it->second]];
        }
    }
    return tab;
}

void write_crosstab_csv(std::ostream& out, const CrossTab& tab) {
    out << "community";
    for (const auto& col : tab.col_labels) out << ',' << csv_escape(col);
    out << '\n';
    for (std::size_t r = 0; r < tab.row_labels.size(); ++r) {
        out << csv_escape(tab.row_labels[r]);
        for (std::size_t c = 0; c < tab.col_labels.size(); ++c) out << ',' << tab.counts[r][c];
        out << '\n';
    }
}

}  // namespace semnet
