#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "semnet/community/louvain.hpp"
#include "semnet/pipeline/config.hpp"

namespace semnet {

struct PipelineResult {
    std::string output_dir;
    nlohmann::ordered_json manifest;
};

// Runs the full ten-stage flow — ingest and retweet graph, BiCM, validated
// projection, Louvain, label propagation, hashtag graph (with lexicon), BiCM,
// semantic projection, Louvain, analytics — persisting every intermediate
// artifact under config.output_dir and writing manifest.json last. A stage
// failure aborts with the stage named in the exception message.
PipelineResult run_pipeline(const PipelineConfig& config);

// Louvain against the configured null model, optionally refined by re-running
// inside every community of at least `subdivide_min_size` nodes (fresh null
// model fit on each induced subgraph). Returns the final partition over g's
// nodes; `top_level` receives the outer run's result when non-null.
Partition detect_communities(const UndirectedGraph& g, NullModel model, std::uint64_t seed,
                             const SolveOptions& solve, std::uint32_t subdivide_min_size,
                             LouvainResult* top_level = nullptr);

struct FprBenchResult {
    double alpha = 0.0;
    std::uint32_t samples = 0;
    std::vector<double> validated_fraction;  // per sample: validated / tested
    double mean_fraction = 0.0;
    double stderr_mean = 0.0;
    std::uint64_t total_tested = 0;
    std::uint64_t total_validated = 0;

    nlohmann::ordered_json to_json() const;
};

// Samples `samples` graphs from the fitted null and runs the complete
// validation procedure (fresh fit per sample) on each, reporting the
// distribution of validated-pair fractions against alpha.
FprBenchResult fpr_bench(const BicmFit& fit, double alpha, std::uint32_t samples,
                         std::uint64_t seed, FdrUniverse universe, unsigned threads);

// Bipartite graph viewed as a monopartite one (both layers merged, unit
// weights): the label-propagation substrate.
UndirectedGraph flatten_bipartite(const BipartiteGraph& g);

void write_json_file(const std::string& path, const nlohmann::ordered_json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace semnet
