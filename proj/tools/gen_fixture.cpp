// Generates the synthetic end-to-end fixture committed under data/fixture/:
// 200 users in three planted discursive groups, four hashtag topics with
// planted typo variants, retweets concentrated within groups, bot scores,
// and a couple of deliberately malformed lines. Deterministic; rerun only to
// regenerate the fixture when the schema changes.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "semnet/core/rng.hpp"
#include "semnet/ingest/record.hpp"

using semnet::Rng;

namespace {

struct Topic {
    std::vector<std::string> tags;
};

std::vector<Topic> make_topics() {
    return {
        {{"governo", "conte", "parlamento", "decreto", "salvini", "meloni", "renzi", "elezioni",
          "opposizione", "maggioranza", "premier", "ministro", "senato", "sondaggi", "partito",
          "votare", "politica", "aula"}},
        {{"ospedale", "medici", "infermieri", "terapiaintensiva", "contagi", "tamponi",
          "mascherine", "vaccino", "sintomi", "quarantena", "isolamento", "guariti", "ricoveri",
          "epidemia", "sanita", "prevenzione", "bollettino", "reparto"}},
        {{"economia", "lavoro", "smartworking", "imprese", "liquidita", "aiuti", "bonus",
          "cassaintegrazione", "mercati", "negozi", "affitti", "partitaiva", "banche", "credito",
          "fatturato", "spesa", "commercio", "risparmio"}},
        {{"iorestoacasa", "andratuttobene", "lockdown", "balconi", "arcobaleno", "spesaonline",
          "congiunti", "passeggiata", "mascherina", "fase2", "zonarossa", "autocertificazione",
          "ricette", "lievito", "serietv", "videochiamata", "terrazzo", "quarantine"}},
    };
}

std::string make_typo(const std::string& base, Rng& rng) {
    std::string t = base;
    if (t.size() < 6) return t + t.back();
    const std::size_t pos = 1 + rng.next_below(t.size() - 2);
    switch (rng.next_below(3)) {
        case 0: t.insert(t.begin() + static_cast<std::ptrdiff_t>(pos), t[pos]); break;  // doubled letter
        case 1: t.erase(t.begin() + static_cast<std::ptrdiff_t>(pos)); break;           // dropped letter
        default: std::swap(t[pos], t[pos - 1]); break;                                   // transposition
    }
    return t == base ? t + t.back() : t;
}

std::string iso(std::int64_t epoch) {
    const std::string date = semnet::utc_date(epoch);
    const std::int64_t rem = ((epoch % 86400) + 86400) % 86400;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%sT%02lld:%02lld:%02lldZ", date.c_str(),
                  static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string out_dir = argc > 1 ? argv[1] : "data/fixture";
    std::filesystem::create_directories(out_dir);
    Rng rng(20200323);

    const auto topics = make_topics();
    // per-topic tag variants: roughly 30% of base tags get one typo form
    std::vector<std::vector<std::string>> variants(topics.size());
    for (std::size_t t = 0; t < topics.size(); ++t) {
        variants[t].resize(topics[t].tags.size());
        for (std::size_t k = 0; k < topics[t].tags.size(); ++k)
            if (rng.bernoulli(0.30)) variants[t][k] = make_typo(topics[t].tags[k], rng);
    }

    const int n_groups = 3;
    const int n_verified = 36;
    const int n_plain = 164;
    std::vector<std::string> verified_ids(n_verified), plain_ids(n_plain);
    for (int v = 0; v < n_verified; ++v) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "v%02d", v);
        verified_ids[v] = buf;
    }
    for (int u = 0; u < n_plain; ++u) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "u%03d", u);
        plain_ids[u] = buf;
    }
    auto group_of_verified = [&](int v) { return v % n_groups; };
    auto group_of_plain = [&](int u) { return u % n_groups; };
    // group-topic affinity: each group owns one topic, everyone shares the last
    auto topic_for_group = [&](int g, Rng& r) {
        return r.bernoulli(0.62) ? static_cast<std::size_t>(g) : topics.size() - 1;
    };

    const std::int64_t window_start = *semnet::parse_utc_date("2020-03-23");
    const std::int64_t window_len = 32 * 86400 - 1;

    auto pick_tags = [&](int group, Rng& r) {
        std::vector<std::string> tags;
        const int n_tags = 1 + static_cast<int>(r.next_below(3));
        for (int k = 0; k < n_tags; ++k) {
            const std::size_t topic = topic_for_group(group, r);
            // Zipf-ish preference for the head of the pool
            std::size_t idx = r.next_below(topics[topic].tags.size());
            idx = std::min(idx, r.next_below(topics[topic].tags.size()));
            const bool use_variant = !variants[topic][idx].empty() && r.bernoulli(0.22);
            tags.push_back(use_variant ? variants[topic][idx] : topics[topic].tags[idx]);
        }
        return tags;
    };

    struct Line {
        std::int64_t ts;
        std::string json;
    };
    std::vector<Line> lines;
    int tweet_seq = 0;
    auto emit = [&](const std::string& user, bool verified, std::int64_t ts,
                    const std::string& text, const std::vector<std::string>& tags,
                    const std::string& rt_user, const std::vector<std::string>& rt_tags) {
        std::string j = "{\"tweet_id\":\"tw" + std::to_string(++tweet_seq) + "\",\"user_id\":\"" +
                        user + "\",\"verified\":" + (verified ? "true" : "false") +
                        ",\"timestamp\":\"" + iso(ts) + "\",\"text\":\"" + json_escape(text) +
                        "\",\"hashtags\":[";
        for (std::size_t k = 0; k < tags.size(); ++k) {
            if (k) j += ',';
            j += "\"#" + json_escape(tags[k]) + "\"";
        }
        j += "]";
        if (!rt_user.empty()) {
            j += ",\"retweeted_user_id\":\"" + rt_user + "\",\"retweeted_hashtags\":[";
            for (std::size_t k = 0; k < rt_tags.size(); ++k) {
                if (k) j += ',';
                j += "\"#" + json_escape(rt_tags[k]) + "\"";
            }
            j += "]";
        }
        j += "}";
        lines.push_back({ts, std::move(j)});
    };

    const char* phrases[] = {"aggiornamento coronavirus di oggi", "notizie covid-19 dalla regione",
                             "punto sul coronavirus", "situazione covid-19 in italia",
                             "coronavirus, cosa sappiamo"};

    // verified users: original posts only
    for (int v = 0; v < n_verified; ++v) {
        const int posts = 6 + static_cast<int>(rng.next_below(5));
        for (int p = 0; p < posts; ++p) {
            const std::int64_t ts = window_start + static_cast<std::int64_t>(rng.next_below(window_len));
            emit(verified_ids[v], true, ts, phrases[rng.next_below(5)],
                 pick_tags(group_of_verified(v), rng), "", {});
        }
    }
    // non-verified users: mostly retweets of their group's verified accounts
    for (int u = 0; u < n_plain; ++u) {
        const int group = group_of_plain(u);
        const int posts = 10 + static_cast<int>(rng.next_below(9));
        for (int p = 0; p < posts; ++p) {
            const std::int64_t ts = window_start + static_cast<std::int64_t>(rng.next_below(window_len));
            if (rng.bernoulli(0.65)) {
                int vg = group;
                if (rng.bernoulli(0.15)) vg = static_cast<int>(rng.next_below(n_groups));
                // verified ids of group vg are vg, vg+3, vg+6, ...
                const int member = static_cast<int>(rng.next_below(n_verified / n_groups));
                const std::string& rt = verified_ids[vg + member * n_groups];
                const auto tags = pick_tags(vg, rng);
                emit(plain_ids[u], false, ts, phrases[rng.next_below(5)], tags, rt, tags);
            } else {
                emit(plain_ids[u], false, ts, phrases[rng.next_below(5)],
                     pick_tags(group, rng), "", {});
            }
        }
    }
    // decoy records that fail the keyword filter
    for (int d = 0; d < 160; ++d) {
        const std::int64_t ts = window_start + static_cast<std::int64_t>(rng.next_below(window_len));
        emit(plain_ids[rng.next_below(n_plain)], false, ts, "buongiorno a tutti",
             {std::string("caffe")}, "", {});
    }

    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        return a.ts != b.ts ? a.ts < b.ts : a.json < b.json;
    });

    std::ofstream records(out_dir + "/records.ndjson");
    int written = 0;
    for (const auto& line : lines) {
        records << line.json << '\n';
        // two malformed lines exercise the skip-and-count path
        if (++written == 100) records << "not a json record\n";
        if (written == 200) records << "{\"user_id\":\"broken\"}\n";
    }
    records.close();

    std::ofstream scores(out_dir + "/botscores.csv");
    scores << "user_id,score\n";
    for (int v = 0; v < n_verified; ++v) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "0.%02d", 3 + static_cast<int>(rng.next_below(30)));
        scores << verified_ids[v] << ',' << buf << '\n';
    }
    for (int u = 0; u < n_plain; ++u) {
        if (u >= n_plain - 3) continue;  // leave a few users unscored
        const bool bot = (u % 11) == 3;  // ~15 bots
        const int centi = bot ? 60 + static_cast<int>(rng.next_below(35))
                              : 2 + static_cast<int>(rng.next_below(38));
        char buf[16];
        std::snprintf(buf, sizeof(buf), "0.%02d", centi);
        scores << plain_ids[u] << ',' << buf << '\n';
    }
    scores.close();

    std::ofstream config(out_dir + "/config.toml");
    config << "# end-to-end fixture configuration (paths relative to this directory)\n"
              "[input]\n"
              "records = \"records.ndjson\"\n"
              "bot_scores = \"botscores.csv\"\n\n"
              "[window]\n"
              "start = \"2020-03-23\"\n"
              "end = \"2020-04-23\"\n"
              "keyword_filter = true\n\n"
              "[normalize]\n"
              "threshold = 0.82\n"
              "norm = \"max\"\n\n"
              "[projection]\n"
              "alpha = 0.05\n"
              "fdr_universe = \"all-pairs\"\n\n"
              "[communities]\n"
              "null_model = \"exact-ucm\"\n\n"
              "[propagation]\n"
              "runs = 500\n\n"
              "[run]\n"
              "output_dir = \"out\"\n"
              "root_seed = 42\n";
    config.close();

    std::cout << "fixture written to " << out_dir << " (" << lines.size() << " records)\n";
    return 0;
}
