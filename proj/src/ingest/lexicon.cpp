#include "semnet/ingest/lexicon.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <vector>

#include "semnet/core/errors.hpp"
#include "semnet/graph/io.hpp"

namespace semnet {

namespace {

// Lenient UTF-8 decoding: malformed bytes pass through as single code
// points, so arbitrary byte strings still get a consistent distance.
std::vector<char32_t> decode_utf8(const std::string& s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t extra = 0;
        char32_t cp = c;
        if (c >= 0xF0)
            extra = 3, cp = c & 0x07u;
        else if (c >= 0xE0)
            extra = 2, cp = c & 0x0Fu;
        else if (c >= 0xC0)
            extra = 1, cp = c & 0x1Fu;
        if (extra > 0 && i + extra >= s.size()) {
            out.push_back(c);
            ++i;
            continue;
        }
        bool valid = true;
        for (std::size_t k = 1; k <= extra; ++k) {
            const unsigned char cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0u) != 0x80u) {
                valid = false;
                break;
            }
            cp = (cp << 6) | (cc & 0x3Fu);
        }
        if (!valid) {
            out.push_back(c);
            ++i;
        } else {
            out.push_back(cp);
            i += extra + 1;
        }
    }
    return out;
}

std::size_t edit_distance(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
    const std::size_t n = b.size();
    std::vector<std::size_t> prev(n + 1), cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

}  // namespace

std::size_t levenshtein_distance(const std::string& a, const std::string& b) {
    return edit_distance(decode_utf8(a), decode_utf8(b));
}

double levenshtein_similarity(const std::string& a, const std::string& b, LevenshteinNorm norm) {
    const auto ca = decode_utf8(a);
    const auto cb = decode_utf8(b);
    const std::size_t denom =
        norm == LevenshteinNorm::Max ? std::max(ca.size(), cb.size()) : ca.size() + cb.size();
    if (denom == 0) return 1.0;
    return 1.0 - static_cast<double>(edit_distance(ca, cb)) / static_cast<double>(denom);
}

const std::string& HashtagLexicon::map(const std::string& raw) const {
    auto it = canonical.find(raw);
    return it == canonical.end() ? raw : it->second;
}

double HashtagLexicon::reduction_ratio() const {
    if (canonical.empty()) return 0.0;
    return 1.0 -
           static_cast<double>(group_counts.size()) / static_cast<double>(canonical.size());
}

HashtagLexicon dedup_hashtags(const std::map<std::string, std::uint64_t>& counts, double threshold,
                              LevenshteinNorm norm) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw ConfigError("dedup_hashtags: threshold must lie in [0,1]");

    struct Entry {
        const std::string* tag;
        std::uint64_t count;
    };
    std::vector<Entry> order;
    order.reserve(counts.size());
    for (const auto& [tag, count] : counts) order.push_back({&tag, count});
    std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
        if (a.count != b.count) return a.count > b.count;
        return *a.tag < *b.tag;
    });

    HashtagLexicon lex;
    struct Canon {
        const std::string* tag;
        std::vector<char32_t> decoded;
    };
    std::vector<Canon> canon_list;
    for (const Entry& e : order) {
        const std::vector<char32_t> decoded = decode_utf8(*e.tag);
        const std::string* target = nullptr;
        for (const Canon& c : canon_list) {
            // Length pruning: d >= |len difference|, so the similarity bound
            // from lengths alone can rule a candidate out.
            const std::size_t la = decoded.size(), lb = c.decoded.size();
            const std::size_t denom =
                norm == LevenshteinNorm::Max ? std::max(la, lb) : la + lb;
            if (denom == 0) {
                target = c.tag;
                break;
            }
            const double length_bound =
                1.0 - static_cast<double>(la > lb ? la - lb : lb - la) / static_cast<double>(denom);
            if (length_bound < threshold) continue;
            const double sim = 1.0 - static_cast<double>(edit_distance(decoded, c.decoded)) /
                                         static_cast<double>(denom);
            if (sim >= threshold) {
                target = c.tag;
                break;
            }
        }
        if (!target) {
            canon_list.push_back({e.tag, decoded});
            target = e.tag;
        }
        lex.canonical.emplace(*e.tag, *target);
        lex.raw_counts.emplace(*e.tag, e.count);
        lex.group_counts[*target] += e.count;
    }
    return lex;
}

void write_lexicon_csv(std::ostream& out, const HashtagLexicon& lexicon) {
    out << "raw,canonical,count\n";
    for (const auto& [raw, canon] : lexicon.canonical)
        out << csv_escape(raw) << ',' << csv_escape(canon) << ',' << lexicon.raw_counts.at(raw)
            << '\n';
}

HashtagLexicon read_lexicon_csv(std::istream& in) {
    HashtagLexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "raw,canonical,count" || line[0] == '#') continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos) throw DataError("lexicon csv: bad line " + std::to_string(lineno));
        const std::string raw = line.substr(0, c1);
        const std::string canon = line.substr(c1 + 1, c2 - c1 - 1);
        const std::uint64_t count = std::stoull(line.substr(c2 + 1));
        lex.canonical[raw] = canon;
        lex.raw_counts[raw] = count;
        lex.group_counts[canon] += count;
    }
    return lex;
}

HashtagLexicon read_lexicon_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon file " + path);
    return read_lexicon_csv(in);
}

}  // namespace semnet
