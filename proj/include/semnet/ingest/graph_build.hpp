#pragma once

#include <cstdint>
#include <vector>

#include "semnet/graph/bipartite.hpp"
#include "semnet/ingest/lexicon.hpp"
#include "semnet/ingest/record.hpp"

namespace semnet {

// Binary users (top) x canonical hashtags (bottom) graph: an edge when the
// user used the hashtag at least once. Retweeted hashtags are attributed to
// the retweeted (original) author, whose id rides along in the record.
BipartiteGraph build_user_hashtag_graph(const std::vector<TweetRecord>& records,
                                        const HashtagLexicon& lexicon);

enum class RetweetDirection {
    Both,                   // an edge whichever side retweeted the other
    NonVerifiedToVerified,  // only non-verified authors retweeting verified users
};

struct RetweetGraphResult {
    BipartiteGraph graph;  // verified (top) x non-verified (bottom)
    std::uint64_t skipped_unknown_status = 0;  // retweeted user never seen as an author
    std::uint64_t skipped_same_layer = 0;      // both endpoints on one layer
};

// Verified x non-verified retweet graph. A user's verified status comes from
// the records they authored; retweeted accounts that never authored a record
// have unknown status and their pairs are skipped (counted).
RetweetGraphResult build_verified_retweet_graph(const std::vector<TweetRecord>& records,
                                                RetweetDirection direction = RetweetDirection::Both);

}  // namespace semnet
