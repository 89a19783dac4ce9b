#include "semnet/ingest/graph_build.hpp"

#include <unordered_map>

namespace semnet {

namespace {

struct Interner {
    std::vector<std::string> ids;
    std::unordered_map<std::string, std::uint32_t> index;

    std::uint32_t intern(const std::string& id) {
        auto [it, inserted] = index.emplace(id, static_cast<std::uint32_t>(ids.size()));
        if (inserted) ids.push_back(id);
        return it->second;
    }
};

}  // namespace

BipartiteGraph build_user_hashtag_graph(const std::vector<TweetRecord>& records,
                                        const HashtagLexicon& lexicon) {
    Interner users, hashtags;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& rec : records) {
        for (const auto& tag : rec.hashtags)
            edges.emplace_back(users.intern(rec.user_id), hashtags.intern(lexicon.map(tag)));
        if (rec.retweeted_user_id) {
            // Hashtags of the original tweet link its author, not the
            // retweeter.
            for (const auto& tag : rec.retweeted_hashtags)
                edges.emplace_back(users.intern(*rec.retweeted_user_id),
                                   hashtags.intern(lexicon.map(tag)));
        }
    }
    return BipartiteGraph::from_edges(std::move(users.ids), std::move(hashtags.ids), edges);
}

RetweetGraphResult build_verified_retweet_graph(const std::vector<TweetRecord>& records,
                                                RetweetDirection direction) {
    // Verified status is known for users who authored at least one record.
    std::unordered_map<std::string, bool> status;
    for (const auto& rec : records) {
        auto [it, inserted] = status.emplace(rec.user_id, rec.verified);
        if (!inserted && rec.verified) it->second = true;
    }

    RetweetGraphResult result;
    Interner verified, nonverified;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& rec : records) {
        if (!rec.retweeted_user_id) continue;
        const auto it = status.find(*rec.retweeted_user_id);
        if (it == status.end()) {
            ++result.skipped_unknown_status;
            continue;
        }
        const bool author_verified = status.at(rec.user_id);
        const bool original_verified = it->second;
        if (author_verified == original_verified) {
            ++result.skipped_same_layer;
            continue;
        }
        if (direction == RetweetDirection::NonVerifiedToVerified && author_verified) {
            // verified author retweeting a non-verified user: dropped in the
            // restricted mode
            continue;
        }
        const std::string& v = author_verified ? rec.user_id : *rec.retweeted_user_id;
        const std::string& nv = author_verified ? *rec.retweeted_user_id : rec.user_id;
        edges.emplace_back(verified.intern(v), nonverified.intern(nv));
    }
    result.graph =
        BipartiteGraph::from_edges(std::move(verified.ids), std::move(nonverified.ids), edges);
    return result;
}

}  // namespace semnet
