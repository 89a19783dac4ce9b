#include <charconv>
#include <fstream>
#include <set>

#include "semnet/analytics/analytics.hpp"
#include "semnet/core/errors.hpp"

namespace semnet {

std::map<std::string, double> read_bot_scores(std::istream& in) {
    std::map<std::string, double> scores;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line == "user_id,score") continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || comma == 0)
            throw DataError("bot scores: bad line " + std::to_string(lineno));
        const std::string user = line.substr(0, comma);
        double value = 0.0;
        const char* begin = line.data() + comma + 1;
        const char* end = line.data() + line.size();
        auto [p, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || p != end)
            throw DataError("bot scores: bad score on line " + std::to_string(lineno));
        scores[user] = value;
    }
    return scores;
}

std::map<std::string, double> read_bot_scores_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open bot score file " + path);
    return read_bot_scores(in);
}

BotFilterResult filter_by_bot_score(const std::vector<TweetRecord>& records,
                                    const std::map<std::string, double>& scores,
                                    double threshold) {
    BotFilterResult result;
    std::set<std::string> unscored;
    for (const auto& rec : records) {
        const auto it = scores.find(rec.user_id);
        if (it == scores.end()) {
            ++result.dropped_unscored;
            unscored.insert(rec.user_id);
            continue;
        }
        if (it->second >= threshold) {
            ++result.kept;
            result.records.push_back(rec);
        } else {
            ++result.dropped_below_threshold;
        }
    }
    result.unscored_users = unscored.size();
    return result;
}

}  // namespace semnet
