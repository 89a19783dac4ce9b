#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "semnet/analytics/analytics.hpp"
#include "semnet/community/modularity.hpp"
#include "semnet/core/parallel.hpp"
#include "semnet/ingest/graph_build.hpp"
#include "semnet/ingest/lexicon.hpp"
#include "semnet/projection/project.hpp"

namespace semnet {

// Declarative pipeline configuration: a flat key/value file with TOML-style
// sections, every field overridable from the command line. Defaults mirror
// the reference study setup (observation window, Levenshtein threshold 0.82,
// 500 propagation runs).
struct PipelineConfig {
    // [input]
    std::string records_path;
    std::string bot_scores_path;  // optional
    std::string keywords_path;    // optional; built-in list when empty

    // [window]
    std::string window_start = "2020-03-23";
    std::string window_end = "2020-04-23";
    bool keyword_filter = true;

    // [normalize]
    double levenshtein_threshold = 0.82;
    LevenshteinNorm levenshtein_norm = LevenshteinNorm::Max;

    // [projection]
    double alpha = 0.05;
    FdrUniverse fdr_universe = FdrUniverse::AllPairs;
    double solver_tolerance = 1e-8;
    std::uint32_t solver_max_iterations = 10000;

    // [communities]
    NullModel null_model = NullModel::ExactUcm;
    std::uint32_t subdivide_min_size = 0;  // 0 disables the refinement rerun

    // [propagation]
    std::uint32_t propagation_runs = 500;
    std::string seeds_path;  // optional; default seeds = verified communities
    RetweetDirection retweet_direction = RetweetDirection::Both;

    // [bots]
    double bot_threshold = 0.5;

    // [analytics]
    double polarization_bin_width = 0.05;
    SeriesNormalization series_normalization = SeriesNormalization::PerGroupTotal;

    // [run]
    std::string output_dir = "out";
    std::uint64_t root_seed = 0;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::string kernel_backend = "auto";

    unsigned effective_threads() const { return threads == 0 ? default_thread_count() : threads; }

    std::optional<std::int64_t> window_start_epoch() const;
    std::optional<std::int64_t> window_end_epoch() const;  // inclusive end of day

    // Throws ConfigError on out-of-range values.
    void validate() const;

    // Applies `key = value` with section-qualified keys ("projection.alpha").
    void set(const std::string& key, const std::string& value);

    static PipelineConfig from_file(const std::string& path);

    nlohmann::ordered_json to_json() const;
};

// SEMNET_CONFIG names the default configuration file.
const char* config_env_var();

}  // namespace semnet
