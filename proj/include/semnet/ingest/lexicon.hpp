#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace semnet {

enum class LevenshteinNorm { Max, Sum };

// Unit-cost edit distance over Unicode code points (UTF-8 decoded), so
// accented characters count as single edits.
std::size_t levenshtein_distance(const std::string& a, const std::string& b);

// 1 - d(a,b)/max(|a|,|b|) by default; the Sum variant divides by |a|+|b|.
double levenshtein_similarity(const std::string& a, const std::string& b,
                              LevenshteinNorm norm = LevenshteinNorm::Max);

// Canonical-form mapping produced by greedy frequency-ordered merging.
struct HashtagLexicon {
    std::map<std::string, std::string> canonical;     // raw -> canonical
    std::map<std::string, std::uint64_t> raw_counts;  // raw -> own frequency
    std::map<std::string, std::uint64_t> group_counts;  // canonical -> merged frequency

    // Canonical form of a hashtag; unknown tags map to themselves.
    const std::string& map(const std::string& raw) const;

    std::size_t raw_size() const { return canonical.size(); }
    std::size_t canonical_size() const { return group_counts.size(); }
    double reduction_ratio() const;
};

// Greedy merge: hashtags processed in descending frequency (ties broken
// lexicographically); each either joins the earliest canonical form with
// similarity >= threshold or starts a new group. The canonical form of a
// group is therefore its most frequent member.
HashtagLexicon dedup_hashtags(const std::map<std::string, std::uint64_t>& counts, double threshold,
                              LevenshteinNorm norm = LevenshteinNorm::Max);

// CSV `raw,canonical,count` (count = the raw form's own frequency).
void write_lexicon_csv(std::ostream& out, const HashtagLexicon& lexicon);
HashtagLexicon read_lexicon_csv(std::istream& in);
HashtagLexicon read_lexicon_csv_file(const std::string& path);

}  // namespace semnet
