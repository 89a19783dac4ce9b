#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace semnet {

// One archived tweet. Hashtags are normalized on ingest: leading '#'
// stripped, ASCII case folded, diacritics preserved. Timestamps are UTC
// epoch seconds.
struct TweetRecord {
    std::string tweet_id;
    std::string user_id;
    bool verified = false;
    std::int64_t timestamp = 0;
    std::string text;
    std::vector<std::string> hashtags;
    std::optional<std::string> retweeted_user_id;
    std::vector<std::string> retweeted_hashtags;
};

struct IngestOptions {
    bool keyword_filter = true;
    // Terms starting with '#' match record hashtags exactly (after
    // normalization); plain terms match as substrings of the case-folded
    // text or as whole hashtags.
    std::vector<std::string> keywords;  // empty => default_keywords()
    std::optional<std::int64_t> window_start;  // inclusive epoch seconds
    std::optional<std::int64_t> window_end;    // inclusive
    std::size_t max_warnings = 10;
};

struct IngestStats {
    std::uint64_t lines = 0;
    std::uint64_t malformed = 0;
    std::uint64_t dropped_keyword = 0;
    std::uint64_t dropped_no_hashtag = 0;
    std::uint64_t dropped_window = 0;
    std::uint64_t kept = 0;
};

// The built-in collection keyword list (24 terms).
const std::vector<std::string>& default_keywords();

// One term per line, '#' prefix meaningful, blank lines ignored.
std::vector<std::string> read_keyword_file(const std::string& path);

// Parses newline-delimited JSON records. Malformed lines are skipped,
// counted, and reported on stderr (up to max_warnings). Records failing the
// keyword filter, carrying no hashtag, or falling outside the window are
// dropped and counted.
std::vector<TweetRecord> parse_records(std::istream& in, const IngestOptions& options,
                                       IngestStats* stats = nullptr);
std::vector<TweetRecord> parse_records_file(const std::string& path, const IngestOptions& options,
                                            IngestStats* stats = nullptr);

// '#'-stripped, ASCII-lowercased hashtag form.
std::string normalize_hashtag(std::string tag);

// "YYYY-MM-DDTHH:MM:SS[Z]" => epoch seconds; returns nullopt on malformed
// input.
std::optional<std::int64_t> parse_iso8601_utc(const std::string& s);

// Epoch seconds => "YYYY-MM-DD" (UTC calendar date).
std::string utc_date(std::int64_t epoch_seconds);

// "YYYY-MM-DD" => epoch seconds at midnight UTC.
std::optional<std::int64_t> parse_utc_date(const std::string& s);

}  // namespace semnet
