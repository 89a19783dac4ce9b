#include "semnet/ingest/record.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "semnet/core/errors.hpp"

namespace semnet {

namespace {

// Civil-calendar conversions (Gregorian, proleptic).
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yr + (m <= 2));
}

std::string ascii_lower(std::string s) {
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string json_id(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    throw DataError("id field is neither string nor integer");
}

std::vector<std::string> normalized_tags(const nlohmann::json& arr) {
    std::vector<std::string> tags;
    for (const auto& t : arr) {
        if (!t.is_string()) throw DataError("hashtag entry is not a string");
        std::string tag = normalize_hashtag(t.get<std::string>());
        if (!tag.empty()) tags.push_back(std::move(tag));
    }
    return tags;
}

struct KeywordMatcher {
    std::vector<std::string> text_terms;     // substring match in lowered text
    std::vector<std::string> hashtag_terms;  // exact match among hashtags

    explicit KeywordMatcher(const std::vector<std::string>& keywords) {
        for (const auto& kw : keywords) {
            if (kw.empty()) continue;
            if (kw[0] == '#')
                hashtag_terms.push_back(normalize_hashtag(kw));
            else
                text_terms.push_back(ascii_lower(kw));
        }
    }

    bool matches(const TweetRecord& r) const {
        const std::string text = ascii_lower(r.text);
        for (const auto& term : text_terms) {
            if (text.find(term) != std::string::npos) return true;
            for (const auto& tag : r.hashtags)
                if (tag == term) return true;
        }
        for (const auto& term : hashtag_terms)
            for (const auto& tag : r.hashtags)
                if (tag == term) return true;
        return false;
    }
};

}  // namespace

std::string normalize_hashtag(std::string tag) {
    std::size_t start = 0;
    while (start < tag.size() &&
           (tag[start] == '#' || std::isspace(static_cast<unsigned char>(tag[start]))))
        ++start;
    std::size_t end = tag.size();
    while (end > start && std::isspace(static_cast<unsigned char>(tag[end - 1]))) --end;
    return ascii_lower(tag.substr(start, end - start));
}

std::optional<std::int64_t> parse_iso8601_utc(const std::string& s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    char tail = '\0';
    const int fields =
        std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &sec, &tail);
    if (fields < 6) return std::nullopt;
    if (fields == 7 && tail != 'Z' && tail != 'z' && tail != '.' && tail != '+') return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec > 60) return std::nullopt;
    return days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400 +
           h * 3600 + mi * 60 + sec;
}

std::string utc_date(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    if (epoch_seconds < 0 && epoch_seconds % 86400 != 0) --days;
    int y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return buf;
}

std::optional<std::int64_t> parse_utc_date(const std::string& s) {
    int y = 0, mo = 0, d = 0;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2d", &y, &mo, &d) != 3) return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
    return days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400;
}

const std::vector<std::string>& default_keywords() {
    static const std::vector<std::string> keywords{
        "coronavirus", "coronaviruses", "ncov", "ncov2020", "ncov2019", "covid2019", "covid-19",
        "SARS-CoV2", "#coronavirus", "#WuhanCoronavirus", "#coronaviruschina",
        "#CoronavirusOutbreak", "#coronaviruswuhan", "#ChinaCoronaVirus", "#nCoV",
        "#coronaviruses", "#ChinaWuHan", "#nCoV2020", "#nCoV2019", "#covid2019", "#covid-19",
        "#SARS_CoV_2", "#SARSCoV2", "#COVID19"};
    return keywords;
}

std::vector<std::string> read_keyword_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open keyword file " + path);
    std::vector<std::string> keywords;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) keywords.push_back(line);
    }
    return keywords;
}

std::vector<TweetRecord> parse_records(std::istream& in, const IngestOptions& options,
                                       IngestStats* stats) {
    const KeywordMatcher matcher(options.keywords.empty() ? default_keywords() : options.keywords);
    IngestStats local;
    std::vector<TweetRecord> records;
    std::string line;
    std::size_t warnings = 0;
    while (std::getline(in, line)) {
        ++local.lines;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        TweetRecord rec;
        try {
            const nlohmann::json j = nlohmann::json::parse(line);
            rec.tweet_id = json_id(j.at("tweet_id"));
            rec.user_id = json_id(j.at("user_id"));
            rec.verified = j.at("verified").get<bool>();
            const auto ts = parse_iso8601_utc(j.at("timestamp").get<std::string>());
            if (!ts) throw DataError("bad timestamp");
            rec.timestamp = *ts;
            rec.text = j.value("text", std::string{});
            rec.hashtags = normalized_tags(j.at("hashtags"));
            if (j.contains("retweeted_user_id") && !j.at("retweeted_user_id").is_null())
                rec.retweeted_user_id = json_id(j.at("retweeted_user_id"));
            if (j.contains("retweeted_hashtags") && !j.at("retweeted_hashtags").is_null())
                rec.retweeted_hashtags = normalized_tags(j.at("retweeted_hashtags"));
        } catch (const std::exception& e) {
            ++local.malformed;
            if (warnings < options.max_warnings) {
                std::cerr << "warning: skipping malformed record on line " << local.lines << ": "
                          << e.what() << '\n';
                ++warnings;
            }
            continue;
        }
        if (options.keyword_filter && !matcher.matches(rec)) {
            ++local.dropped_keyword;
            continue;
        }
        if (rec.hashtags.empty()) {
            ++local.dropped_no_hashtag;
            continue;
        }
        if ((options.window_start && rec.timestamp < *options.window_start) ||
            (options.window_end && rec.timestamp > *options.window_end)) {
            ++local.dropped_window;
            continue;
        }
        ++local.kept;
        records.push_back(std::move(rec));
    }
    if (stats) *stats = local;
    return records;
}

std::vector<TweetRecord> parse_records_file(const std::string& path, const IngestOptions& options,
                                            IngestStats* stats) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open records file " + path);
    return parse_records(in, options, stats);
}

}  // namespace semnet
