#include "semnet/pipeline/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "semnet/analytics/analytics.hpp"
#include "semnet/community/label_propagation.hpp"
#include "semnet/core/errors.hpp"
#include "semnet/core/rng.hpp"
#include "semnet/graph/io.hpp"
#include "semnet/ingest/record.hpp"
#include "semnet/kernels/kernels.hpp"

namespace semnet {

namespace fs = std::filesystem;

void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return nlohmann::json::parse(in);
}

UndirectedGraph flatten_bipartite(const BipartiteGraph& g) {
    std::vector<std::string> ids;
    ids.reserve(g.top_count() + g.bottom_count());
    ids.insert(ids.end(), g.top_ids().begin(), g.top_ids().end());
    ids.insert(ids.end(), g.bottom_ids().begin(), g.bottom_ids().end());
    std::vector<UndirectedGraph::Edge> edges;
    edges.reserve(g.edge_count());
    const std::uint32_t offset = static_cast<std::uint32_t>(g.top_count());
    for (std::uint32_t i = 0; i < g.top_count(); ++i)
        for (std::uint32_t a : g.top_adjacency(i)) edges.push_back({i, offset + a, 1.0});
    return UndirectedGraph::from_edges(std::move(ids), std::move(edges));
}

Partition detect_communities(const UndirectedGraph& g, NullModel model, std::uint64_t seed,
                             const SolveOptions& solve, std::uint32_t subdivide_min_size,
                             LouvainResult* top_level) {
    UcmFit fit;
    ModularityContext ctx = model == NullModel::ExactUcm
                                ? (fit = solve_ucm(g, solve), ModularityContext::exact_ucm(g, fit))
                                : ModularityContext::chung_lu(g);
    LouvainResult result = louvain(ctx, seed);
    if (top_level) *top_level = result;
    if (subdivide_min_size == 0) return result.partition;

    // Rerun inside every large community on its induced subgraph with a
    // fresh null-model fit; smaller communities keep their assignment.
    Partition refined;
    refined.community_of.assign(g.node_count(), 0);
    std::uint32_t next_community = 0;
    const auto members = result.partition.members();
    for (std::uint32_t c = 0; c < members.size(); ++c) {
        const auto& nodes = members[c];
        bool split = false;
        if (nodes.size() >= subdivide_min_size) {
            std::unordered_set<std::string> ids;
            for (std::uint32_t v : nodes) ids.insert(g.node_id(v));
            const UndirectedGraph sub = g.induced_subgraph(ids);
            if (sub.total_weight() > 0.0) {
                const Partition sub_partition = detect_communities(
                    sub, model, derive_seed(seed, c + 1), solve, 0, nullptr);
                for (std::uint32_t s = 0; s < sub.node_count(); ++s) {
                    const std::int64_t orig = g.node_index(sub.node_id(s));
                    refined.community_of[static_cast<std::size_t>(orig)] =
                        next_community + sub_partition.community_of[s];
                }
                next_community += sub_partition.community_count;
                split = true;
            }
        }
        if (!split) {
            for (std::uint32_t v : nodes) refined.community_of[v] = next_community;
            ++next_community;
        }
    }
    refined.community_count = next_community;
    refined.normalize();
    return refined;
}

nlohmann::ordered_json FprBenchResult::to_json() const {
    nlohmann::ordered_json j;
    j["alpha"] = alpha;
    j["samples"] = samples;
    j["mean_validated_fraction"] = mean_fraction;
    j["stderr_mean"] = stderr_mean;
    j["total_tested_pairs"] = total_tested;
    j["total_validated_pairs"] = total_validated;
    j["validated_fraction_per_sample"] = validated_fraction;
    return j;
}

FprBenchResult fpr_bench(const BicmFit& fit, double alpha, std::uint32_t samples,
                         std::uint64_t seed, FdrUniverse universe, unsigned threads) {
    FprBenchResult result;
    result.alpha = alpha;
    result.samples = samples;
    const std::vector<BipartiteGraph> graphs = sample_ensemble(fit, samples, seed);
    for (const auto& g : graphs) {
        ProjectionOptions opts;
        opts.universe = universe;
        opts.threads = threads;
        const ValidatedProjection proj = project_validated(g, BipartiteGraph::Layer::Top, alpha,
                                                           nullptr, opts);
        const double fraction =
            proj.tests.empty()
                ? 0.0
                : static_cast<double>(proj.validated_count) / static_cast<double>(proj.tests.size());
        result.validated_fraction.push_back(fraction);
        result.total_tested += proj.tests.size();
        result.total_validated += proj.validated_count;
    }
    double mean = 0.0;
    for (double f : result.validated_fraction) mean += f;
    mean /= std::max<std::size_t>(1, result.validated_fraction.size());
    double var = 0.0;
    for (double f : result.validated_fraction) var += (f - mean) * (f - mean);
    if (result.validated_fraction.size() > 1)
        var /= static_cast<double>(result.validated_fraction.size() - 1);
    result.mean_fraction = mean;
    result.stderr_mean =
        std::sqrt(var / std::max<std::size_t>(1, result.validated_fraction.size()));
    return result;
}

namespace {

// Rethrows stage failures with the stage named, preserving the error type so
// the CLI exit code stays meaningful.
template <typename Fn>
void run_stage(nlohmann::ordered_json& stages, nlohmann::ordered_json& timings,
               const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    try {
        fn();
    } catch (const ConvergenceError& e) {
        throw ConvergenceError("stage " + name + ": " + e.what(), e.residual);
    } catch (const ConfigError& e) {
        throw ConfigError("stage " + name + ": " + e.what());
    } catch (const std::exception& e) {
        throw DataError("stage " + name + ": " + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    stages.push_back(name);
    timings[name] = seconds;
}

std::string community_label(const char* prefix, std::uint32_t c) {
    return std::string(prefix) + std::to_string(c);
}

struct CommunityOutputs {
    Partition partition;          // over the non-isolated subgraph
    UndirectedGraph subgraph;     // nodes with at least one validated edge
    LouvainResult top_level;
    std::map<std::string, std::string> label_of;  // node id -> community label
};

// Louvain runs on the subgraph spanned by validated edges; isolated nodes
// carry no community.
CommunityOutputs community_stage(const UndirectedGraph& projection, const PipelineConfig& config,
                                 std::uint64_t seed, const char* label_prefix,
                                 const std::string& out_dir) {
    CommunityOutputs out;
    std::unordered_set<std::string> connected;
    for (std::uint32_t i = 0; i < projection.node_count(); ++i)
        if (projection.degree(i) > 0) connected.insert(projection.node_id(i));
    if (connected.empty())
        throw DataError("no validated edges; nothing to cluster (raise projection.alpha?)");
    out.subgraph = projection.induced_subgraph(connected);

    SolveOptions solve;
    solve.tolerance = config.solver_tolerance;
    solve.max_iterations = config.solver_max_iterations;
    out.partition = detect_communities(out.subgraph, config.null_model, seed, solve,
                                       config.subdivide_min_size, &out.top_level);
    for (std::uint32_t i = 0; i < out.subgraph.node_count(); ++i)
        out.label_of[out.subgraph.node_id(i)] =
            community_label(label_prefix, out.partition.community_of[i]);

    std::ofstream csv(out_dir + "/partition.csv");
    if (!csv) throw DataError("cannot write " + out_dir + "/partition.csv");
    csv << "node,community\n";
    for (std::uint32_t i = 0; i < out.subgraph.node_count(); ++i)
        csv << csv_escape(out.subgraph.node_id(i)) << ','
            << community_label(label_prefix, out.partition.community_of[i]) << '\n';

    nlohmann::ordered_json j;
    j["nodes"] = out.subgraph.node_count();
    j["edges"] = out.subgraph.edge_count();
    j["null_model"] = config.null_model == NullModel::ExactUcm ? "exact-ucm" : "chung-lu";
    j["modularity"] = out.top_level.modularity;
    j["passes"] = out.top_level.passes;
    j["q_trace"] = out.top_level.q_trace;
    j["communities"] = out.partition.community_count;
    j["subdivide_min_size"] = config.subdivide_min_size;
    write_json_file(out_dir + "/result.json", j);
    return out;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    config.validate();
    if (config.records_path.empty()) throw ConfigError("input.records is required");
    if (!kernels::set_backend(config.kernel_backend))
        throw ConfigError("kernel backend '" + config.kernel_backend +
                          "' unavailable on this machine");
    const unsigned threads = config.effective_threads();

    const fs::path root(config.output_dir);
    const char* stage_dirs[] = {"01_retweet_graph",  "02_bicm_retweet",  "03_project_verified",
                                "04_louvain_verified", "05_propagation", "06_hashtag_graph",
                                "07_bicm_hashtag",   "08_project_semantic", "09_louvain_semantic",
                                "10_analytics"};
    for (const char* d : stage_dirs) fs::create_directories(root / d);

    nlohmann::ordered_json stages = nlohmann::ordered_json::array();
    nlohmann::ordered_json timings;

    // Stage state shared along the flow.
    std::vector<TweetRecord> records;
    IngestStats ingest_stats;
    RetweetGraphResult retweet;
    BicmFit retweet_fit;
    ValidatedProjection verified_projection;
    CommunityOutputs discursive;
    NodeLabeling labeling;
    UndirectedGraph propagation_graph;
    HashtagLexicon lexicon;
    BipartiteGraph hashtag_graph;
    BicmFit hashtag_fit;
    ValidatedProjection semantic_projection;
    CommunityOutputs semantic;

    SolveOptions solve;
    solve.tolerance = config.solver_tolerance;
    solve.max_iterations = config.solver_max_iterations;

    run_stage(stages, timings, "build-retweet-graph", [&] {
        IngestOptions opts;
        opts.keyword_filter = config.keyword_filter;
        if (!config.keywords_path.empty()) opts.keywords = read_keyword_file(config.keywords_path);
        opts.window_start = config.window_start_epoch();
        opts.window_end = config.window_end_epoch();
        records = parse_records_file(config.records_path, opts, &ingest_stats);
        if (records.empty()) throw DataError("no records survive ingestion");
        retweet = build_verified_retweet_graph(records, config.retweet_direction);
        write_bipartite_edgelist_file((root / "01_retweet_graph" / "bipartite.tsv").string(),
                                      retweet.graph);
        nlohmann::ordered_json j;
        j["lines"] = ingest_stats.lines;
        j["kept"] = ingest_stats.kept;
        j["malformed"] = ingest_stats.malformed;
        j["dropped_keyword"] = ingest_stats.dropped_keyword;
        j["dropped_no_hashtag"] = ingest_stats.dropped_no_hashtag;
        j["dropped_window"] = ingest_stats.dropped_window;
        j["verified_users"] = retweet.graph.top_count();
        j["nonverified_users"] = retweet.graph.bottom_count();
        j["retweet_edges"] = retweet.graph.edge_count();
        j["skipped_unknown_status"] = retweet.skipped_unknown_status;
        j["skipped_same_layer"] = retweet.skipped_same_layer;
        write_json_file((root / "01_retweet_graph" / "stats.json").string(), j);
    });

    run_stage(stages, timings, "solve-bicm-retweet", [&] {
        retweet_fit = solve_bicm(retweet.graph, solve);
        write_json_file((root / "02_bicm_retweet" / "fit.json").string(), retweet_fit.to_json());
    });

    run_stage(stages, timings, "project-verified", [&] {
        ProjectionOptions opts;
        opts.universe = config.fdr_universe;
        opts.threads = threads;
        opts.solve = solve;
        verified_projection = project_validated(retweet.graph, BipartiteGraph::Layer::Top,
                                                config.alpha, &retweet_fit, opts);
        std::ofstream csv(root / "03_project_verified" / "pairs.csv");
        write_projection_csv(csv, retweet.graph, verified_projection);
        write_undirected_edgelist_file((root / "03_project_verified" / "projection.tsv").string(),
                                       verified_projection.graph);
        write_json_file((root / "03_project_verified" / "summary.json").string(),
                        projection_summary(verified_projection));
    });

    run_stage(stages, timings, "louvain-discursive", [&] {
        discursive = community_stage(verified_projection.graph, config, derive_seed(config.root_seed, 4),
                                     "c", (root / "04_louvain_verified").string());
    });

    run_stage(stages, timings, "propagate-labels", [&] {
        std::map<std::string, std::string> seeds;
        if (!config.seeds_path.empty())
            seeds = read_seeds_csv_file(config.seeds_path);
        else
            seeds = discursive.label_of;
        propagation_graph = flatten_bipartite(retweet.graph);
        // seeds must exist in the propagation graph; communities computed on
        // the projection always do
        LabelPropagationOptions opts;
        opts.runs = config.propagation_runs;
        opts.rng_seed = derive_seed(config.root_seed, 5);
        opts.threads = threads;
        labeling = seeded_label_propagation(propagation_graph, seeds, opts);
        {
            std::ofstream out(root / "05_propagation" / "seeds.csv");
            out << "node,label\n";
            for (const auto& [node, label] : seeds)
                out << csv_escape(node) << ',' << csv_escape(label) << '\n';
        }
        write_labeling_csv_file((root / "05_propagation" / "labels.csv").string(),
                                propagation_graph, labeling);
        std::uint64_t labeled = 0, nonverified_labeled = 0;
        for (std::uint32_t i = 0; i < propagation_graph.node_count(); ++i) {
            if (labeling.final_label[i].empty()) continue;
            ++labeled;
            if (static_cast<std::size_t>(i) >= retweet.graph.top_count()) ++nonverified_labeled;
        }
        nlohmann::ordered_json j;
        j["runs"] = config.propagation_runs;
        j["nodes"] = propagation_graph.node_count();
        j["seeds"] = seeds.size();
        j["labeled"] = labeled;
        j["coverage"] = propagation_graph.node_count() == 0
                            ? 0.0
                            : static_cast<double>(labeled) /
                                  static_cast<double>(propagation_graph.node_count());
        j["nonverified_labeled"] = nonverified_labeled;
        write_json_file((root / "05_propagation" / "summary.json").string(), j);
    });

    run_stage(stages, timings, "build-hashtag-graph", [&] {
        std::map<std::string, std::uint64_t> counts;
        for (const auto& rec : records) {
            for (const auto& tag : rec.hashtags) ++counts[tag];
            for (const auto& tag : rec.retweeted_hashtags) ++counts[tag];
        }
        if (counts.empty()) throw DataError("no hashtags in the record set");
        lexicon = dedup_hashtags(counts, config.levenshtein_threshold, config.levenshtein_norm);
        {
            std::ofstream out(root / "06_hashtag_graph" / "lexicon.csv");
            write_lexicon_csv(out, lexicon);
        }
        nlohmann::ordered_json j;
        j["raw_hashtags"] = lexicon.raw_size();
        j["canonical_hashtags"] = lexicon.canonical_size();
        j["reduction_ratio"] = lexicon.reduction_ratio();
        j["threshold"] = config.levenshtein_threshold;
        j["norm"] = config.levenshtein_norm == LevenshteinNorm::Max ? "max" : "sum";
        write_json_file((root / "06_hashtag_graph" / "lexicon_summary.json").string(), j);
        hashtag_graph = build_user_hashtag_graph(records, lexicon);
        write_bipartite_edgelist_file((root / "06_hashtag_graph" / "bipartite.tsv").string(),
                                      hashtag_graph);
    });

    run_stage(stages, timings, "solve-bicm-hashtag", [&] {
        hashtag_fit = solve_bicm(hashtag_graph, solve);
        write_json_file((root / "07_bicm_hashtag" / "fit.json").string(), hashtag_fit.to_json());
    });

    run_stage(stages, timings, "project-semantic", [&] {
        ProjectionOptions opts;
        opts.universe = config.fdr_universe;
        opts.threads = threads;
        opts.solve = solve;
        semantic_projection = project_validated(hashtag_graph, BipartiteGraph::Layer::Bottom,
                                                config.alpha, &hashtag_fit, opts);
        std::ofstream csv(root / "08_project_semantic" / "pairs.csv");
        write_projection_csv(csv, hashtag_graph, semantic_projection);
        write_undirected_edgelist_file((root / "08_project_semantic" / "projection.tsv").string(),
                                       semantic_projection.graph);
        write_json_file((root / "08_project_semantic" / "summary.json").string(),
                        projection_summary(semantic_projection));
    });

    run_stage(stages, timings, "louvain-semantic", [&] {
        semantic = community_stage(semantic_projection.graph, config,
                                   derive_seed(config.root_seed, 9), "s",
                                   (root / "09_louvain_semantic").string());
    });

    run_stage(stages, timings, "analytics", [&] {
        const fs::path dir = root / "10_analytics";
        // user -> discursive community: verified from Louvain, the rest from
        // label propagation
        std::map<std::string, std::string> user_community = discursive.label_of;
        for (std::uint32_t i = 0; i < propagation_graph.node_count(); ++i) {
            if (labeling.final_label[i].empty()) continue;
            user_community.emplace(propagation_graph.node_id(i), labeling.final_label[i]);
        }

        const PolarizationReport pol =
            polarization(retweet.graph, discursive.label_of, config.polarization_bin_width);
        {
            std::ofstream out(dir / "polarization.csv");
            write_polarization_csv(out, pol);
        }
        {
            std::ofstream out(dir / "polarization_hist.csv");
            write_polarization_histogram_csv(out, pol);
        }

        const ActivitySeries series =
            temporal_series(records, SeriesItem::Hashtag, semantic.label_of,
                            config.series_normalization, &lexicon, config.window_start_epoch(),
                            config.window_end_epoch());
        {
            std::ofstream out(dir / "series_semantic.csv");
            write_series_csv(out, series);
        }

        const CrossTab tab = crosstab(records, user_community, semantic.label_of, &lexicon, false);
        {
            std::ofstream out(dir / "crosstab.csv");
            write_crosstab_csv(out, tab);
        }
        const CrossTab tab_verified =
            crosstab(records, user_community, semantic.label_of, &lexicon, true);
        {
            std::ofstream out(dir / "crosstab_verified.csv");
            write_crosstab_csv(out, tab_verified);
        }

        nlohmann::ordered_json j;
        j["polarized_users"] = pol.rows.size();
        j["excluded_no_neighbors"] = pol.excluded_no_neighbors;
        j["crosstab_events"] = tab.total_events;
        j["crosstab_untracked"] = tab.untracked;

        if (!config.bot_scores_path.empty()) {
            const auto scores = read_bot_scores_file(config.bot_scores_path);
            const BotFilterResult bots =
                filter_by_bot_score(records, scores, config.bot_threshold);
            std::map<std::string, std::string> bot_group, all_group;
            for (const auto& rec : bots.records) bot_group.emplace(rec.user_id, "bots");
            for (const auto& rec : records) all_group.emplace(rec.user_id, "all");
            const ActivitySeries bot_series = temporal_series(
                bots.records, SeriesItem::TweetAuthor, bot_group, config.series_normalization,
                nullptr, config.window_start_epoch(), config.window_end_epoch());
            const ActivitySeries all_series = temporal_series(
                records, SeriesItem::TweetAuthor, all_group, config.series_normalization, nullptr,
                config.window_start_epoch(), config.window_end_epoch());
            {
                std::ofstream out(dir / "series_bot_tweets.csv");
                write_series_csv(out, bot_series);
            }
            {
                std::ofstream out(dir / "series_all_tweets.csv");
                write_series_csv(out, all_series);
            }
            const CrossTab bot_tab =
                crosstab(bots.records, user_community, semantic.label_of, &lexicon, false);
            {
                std::ofstream out(dir / "crosstab_bots.csv");
                write_crosstab_csv(out, bot_tab);
            }
            nlohmann::ordered_json b;
            b["threshold"] = config.bot_threshold;
            b["bot_records"] = bots.kept;
            b["dropped_below_threshold"] = bots.dropped_below_threshold;
            b["dropped_unscored"] = bots.dropped_unscored;
            b["unscored_users"] = bots.unscored_users;
            j["bots"] = b;
        }
        write_json_file((dir / "summary.json").string(), j);
    });

    nlohmann::ordered_json manifest;
    manifest["tool"] = "semnet";
    manifest["version"] = "0.1.0";
    manifest["config"] = config.to_json();
    manifest["root_seed"] = config.root_seed;
    nlohmann::ordered_json seeds;
    seeds["louvain-discursive"] = derive_seed(config.root_seed, 4);
    seeds["propagate-labels"] = derive_seed(config.root_seed, 5);
    seeds["louvain-semantic"] = derive_seed(config.root_seed, 9);
    manifest["stage_seeds"] = seeds;
    manifest["stages"] = stages;
    manifest["kernel_backend"] = std::string(kernels::active_backend_name());
    manifest["timings_seconds"] = timings;
    write_json_file((root / "manifest.json").string(), manifest);

    PipelineResult result;
    result.output_dir = config.output_dir;
    result.manifest = std::move(manifest);
    return result;
}

}  // namespace semnet
