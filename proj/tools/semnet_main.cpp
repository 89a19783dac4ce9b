// semnet command-line interface: composable subcommands over the pipeline
// stages plus the end-to-end `pipeline` driver.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical
// non-convergence.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "semnet/analytics/analytics.hpp"
#include "semnet/community/label_propagation.hpp"
#include "semnet/community/louvain.hpp"
#include "semnet/core/errors.hpp"
#include "semnet/core/rng.hpp"
#include "semnet/graph/io.hpp"
#include "semnet/ingest/graph_build.hpp"
#include "semnet/ingest/lexicon.hpp"
#include "semnet/ingest/record.hpp"
#include "semnet/kernels/kernels.hpp"
#include "semnet/pipeline/pipeline.hpp"

namespace fs = std::filesystem;
using namespace semnet;

namespace {

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

IngestOptions ingest_options(const PipelineConfig& cfg) {
    IngestOptions opts;
    opts.keyword_filter = cfg.keyword_filter;
    if (!cfg.keywords_path.empty()) opts.keywords = read_keyword_file(cfg.keywords_path);
    opts.window_start = cfg.window_start_epoch();
    opts.window_end = cfg.window_end_epoch();
    return opts;
}

std::map<std::string, std::uint64_t> hashtag_counts(const std::vector<TweetRecord>& records) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& rec : records) {
        for (const auto& tag : rec.hashtags) ++counts[tag];
        for (const auto& tag : rec.retweeted_hashtags) ++counts[tag];
    }
    return counts;
}

void write_lexicon_outputs(const std::string& out_dir, const HashtagLexicon& lexicon,
                           double threshold, LevenshteinNorm norm) {
    std::ofstream csv(fs::path(out_dir) / "lexicon.csv");
    if (!csv) throw DataError("cannot write lexicon.csv under " + out_dir);
    write_lexicon_csv(csv, lexicon);
    nlohmann::ordered_json j;
    j["raw_hashtags"] = lexicon.raw_size();
    j["canonical_hashtags"] = lexicon.canonical_size();
    j["reduction_ratio"] = lexicon.reduction_ratio();
    j["threshold"] = threshold;
    j["norm"] = norm == LevenshteinNorm::Max ? "max" : "sum";
    write_json_file((fs::path(out_dir) / "lexicon_summary.json").string(), j);
}

// `node,<value>` two-column CSV with an optional header line.
std::map<std::string, std::string> read_two_column_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.rfind("node,", 0) == 0) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw DataError(path + ": bad line " + std::to_string(lineno));
        out[line.substr(0, comma)] = line.substr(comma + 1);
    }
    return out;
}

// labels.csv (`node,final_label,label,count`) -> node -> final label,
// skipping nodes that ended unlabeled.
std::map<std::string, std::string> read_final_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "node,final_label,label,count") continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos) throw DataError(path + ": bad line " + std::to_string(lineno));
        const std::string node = line.substr(0, c1);
        const std::string final_label = line.substr(c1 + 1, c2 - c1 - 1);
        if (!final_label.empty()) out.emplace(node, final_label);
    }
    return out;
}

struct CommonConfigFlags {
    std::string config_path;

    PipelineConfig load() const {
        std::string path = config_path;
        if (path.empty()) {
            if (const char* env = std::getenv(config_env_var())) path = env;
        }
        PipelineConfig cfg;
        if (!path.empty()) cfg = PipelineConfig::from_file(path);
        return cfg;
    }
};

int dispatch(CLI::App& app, int argc, char** argv) {
    try {
        // let per-subcommand invocations carry the global flags too
        for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
            sub->fallthrough();
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);  // prints message or help text
        return rc == 0 ? 0 : 1;     // any parse failure is a usage error
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "semnet: maximum-entropy null models, statistically validated projections and "
        "community analytics for bipartite interaction data"};
    app.require_subcommand(1);

    CommonConfigFlags common;
    app.add_option("--config", common.config_path,
                   "configuration file (also via " + std::string(config_env_var()) + ")");
    std::string backend = "auto";
    app.add_option("--kernel-backend", backend, "numeric kernels: auto|scalar|avx2")
        ->default_str("auto");
    app.parse_complete_callback([&] {
        if (!kernels::set_backend(backend))
            throw ConfigError("kernel backend '" + backend + "' unavailable on this machine");
    });

    // ---- normalize -------------------------------------------------------
    auto* normalize = app.add_subcommand(
        "normalize", "build the hashtag lexicon by Levenshtein deduplication");
    struct {
        std::string records, out = "out";
        double threshold = 0.82;
        std::string norm = "max";
        bool no_filter = false;
    } nz;
    normalize->add_option("--records", nz.records, "newline-delimited JSON records")->required();
    normalize->add_option("--out", nz.out, "output directory");
    normalize->add_option("--threshold", nz.threshold,
                          "similarity threshold (collection-protocol default 0.82)");
    normalize->add_option("--levenshtein-norm", nz.norm,
                          "max|sum edit-distance normalization (default max)");
    normalize->add_flag("--no-keyword-filter", nz.no_filter, "ingest every record");
    normalize->callback([&] {
        PipelineConfig cfg = common.load();
        cfg.levenshtein_threshold = nz.threshold;
        cfg.levenshtein_norm = nz.norm == "sum" ? LevenshteinNorm::Sum : LevenshteinNorm::Max;
        if (nz.no_filter) cfg.keyword_filter = false;
        cfg.validate();
        ensure_dir(nz.out);
        IngestStats stats;
        const auto records = parse_records_file(nz.records, ingest_options(cfg), &stats);
        if (records.empty()) throw DataError("no records survive ingestion");
        const auto counts = hashtag_counts(records);
        const HashtagLexicon lexicon =
            dedup_hashtags(counts, cfg.levenshtein_threshold, cfg.levenshtein_norm);
        write_lexicon_outputs(nz.out, lexicon, cfg.levenshtein_threshold, cfg.levenshtein_norm);
        std::cout << "lexicon: " << lexicon.raw_size() << " raw -> " << lexicon.canonical_size()
                  << " canonical (reduction " << format_double(lexicon.reduction_ratio() * 100.0)
                  << "%)\n";
    });

    // ---- build-graphs ----------------------------------------------------
    auto* build = app.add_subcommand("build-graphs",
                                     "ingest records and build the retweet and hashtag graphs");
    struct {
        std::string records, out = "out";
        double threshold = 0.82;
        std::string norm = "max";
        std::string direction = "both";
        bool no_filter = false;
    } bg;
    build->add_option("--records", bg.records)->required();
    build->add_option("--out", bg.out, "output directory");
    build->add_option("--threshold", bg.threshold, "lexicon similarity threshold");
    build->add_option("--levenshtein-norm", bg.norm, "max|sum");
    build->add_option("--retweet-direction", bg.direction, "both|nonverified-to-verified");
    build->add_flag("--no-keyword-filter", bg.no_filter);
    build->callback([&] {
        PipelineConfig cfg = common.load();
        cfg.levenshtein_threshold = bg.threshold;
        cfg.levenshtein_norm = bg.norm == "sum" ? LevenshteinNorm::Sum : LevenshteinNorm::Max;
        cfg.retweet_direction = bg.direction == "nonverified-to-verified"
                                    ? RetweetDirection::NonVerifiedToVerified
                                    : RetweetDirection::Both;
        if (bg.no_filter) cfg.keyword_filter = false;
        cfg.validate();
        ensure_dir(bg.out);
        IngestStats stats;
        const auto records = parse_records_file(bg.records, ingest_options(cfg), &stats);
        if (records.empty()) throw DataError("no records survive ingestion");
        const auto retweet = build_verified_retweet_graph(records, cfg.retweet_direction);
        write_bipartite_edgelist_file((fs::path(bg.out) / "retweet_bipartite.tsv").string(),
                                      retweet.graph);
        const HashtagLexicon lexicon = dedup_hashtags(
            hashtag_counts(records), cfg.levenshtein_threshold, cfg.levenshtein_norm);
        write_lexicon_outputs(bg.out, lexicon, cfg.levenshtein_threshold, cfg.levenshtein_norm);
        write_bipartite_edgelist_file((fs::path(bg.out) / "hashtag_bipartite.tsv").string(),
                                      build_user_hashtag_graph(records, lexicon));
        nlohmann::ordered_json j;
        j["kept_records"] = stats.kept;
        j["malformed"] = stats.malformed;
        j["dropped_keyword"] = stats.dropped_keyword;
        j["dropped_no_hashtag"] = stats.dropped_no_hashtag;
        j["dropped_window"] = stats.dropped_window;
        j["retweet_edges"] = retweet.graph.edge_count();
        j["skipped_unknown_status"] = retweet.skipped_unknown_status;
        j["skipped_same_layer"] = retweet.skipped_same_layer;
        write_json_file((fs::path(bg.out) / "ingest_stats.json").string(), j);
        std::cout << "records kept: " << stats.kept << "\n";
    });

    // ---- solve -----------------------------------------------------------
    auto* solve_cmd =
        app.add_subcommand("solve", "fit a configuration model (BiCM or UCM) to a graph");
    struct {
        std::string graph, out = "fit.json";
        std::string kind = "bipartite";
        double tolerance = 1e-8;
        std::uint32_t max_iterations = 10000;
    } sv;
    solve_cmd->add_option("--graph", sv.graph, "edge-list file")->required();
    solve_cmd->add_option("--kind", sv.kind, "bipartite|monopartite");
    solve_cmd->add_option("--out", sv.out, "fit JSON path");
    solve_cmd->add_option("--tolerance", sv.tolerance, "max degree residual (default 1e-8)");
    solve_cmd->add_option("--max-iterations", sv.max_iterations);
    solve_cmd->callback([&] {
        SolveOptions opts;
        opts.tolerance = sv.tolerance;
        opts.max_iterations = sv.max_iterations;
        nlohmann::ordered_json fit_json;
        if (sv.kind == "bipartite") {
            const auto g = read_bipartite_edgelist_file(sv.graph);
            const auto fit = solve_bicm(g, opts);
            fit_json = fit.to_json();
            std::cout << "bicm solved: residual " << format_double(fit.residual()) << " after "
                      << fit.iterations() << " sweeps\n";
        } else if (sv.kind == "monopartite") {
            const auto g = read_undirected_edgelist_file(sv.graph);
            const auto fit = solve_ucm(g, opts);
            fit_json = fit.to_json();
            std::cout << "ucm solved: residual " << format_double(fit.residual()) << " after "
                      << fit.iterations() << " sweeps\n";
        } else {
            throw ConfigError("--kind must be bipartite or monopartite");
        }
        write_json_file(sv.out, fit_json);
    });

    // ---- project ---------------------------------------------------------
    auto* project = app.add_subcommand(
        "project", "statistically validated monopartite projection of a bipartite graph");
    struct {
        std::string graph, fit, out = "out";
        std::string layer = "top";
        double alpha = 0.05;
        std::string universe = "all-pairs";
        unsigned threads = 0;
    } pj;
    project->add_option("--graph", pj.graph)->required();
    project->add_option("--layer", pj.layer, "top|bottom");
    project->add_option("--alpha", pj.alpha, "FDR level (default 0.05)");
    project->add_option("--fdr-universe", pj.universe, "all-pairs|observed");
    project->add_option("--fit", pj.fit, "precomputed fit JSON (solved internally when absent)");
    project->add_option("--out", pj.out, "output directory");
    project->add_option("--threads", pj.threads);
    project->callback([&] {
        if (!(pj.alpha > 0.0 && pj.alpha < 1.0)) throw ConfigError("--alpha must lie in (0,1)");
        ensure_dir(pj.out);
        const auto g = read_bipartite_edgelist_file(pj.graph);
        ProjectionOptions opts;
        opts.universe =
            pj.universe == "observed" ? FdrUniverse::Observed : FdrUniverse::AllPairs;
        opts.threads = pj.threads == 0 ? default_thread_count() : pj.threads;
        std::optional<BicmFit> fit;
        if (!pj.fit.empty()) fit = BicmFit::from_json(read_json_file(pj.fit));
        const auto layer =
            pj.layer == "bottom" ? BipartiteGraph::Layer::Bottom : BipartiteGraph::Layer::Top;
        const auto proj = project_validated(g, layer, pj.alpha, fit ? &*fit : nullptr, opts);
        std::ofstream csv(fs::path(pj.out) / "pairs.csv");
        write_projection_csv(csv, g, proj);
        write_undirected_edgelist_file((fs::path(pj.out) / "projection.tsv").string(), proj.graph);
        write_json_file((fs::path(pj.out) / "summary.json").string(), projection_summary(proj));
        std::cout << "validated " << proj.validated_count << " of " << proj.tests.size()
                  << " tested pairs (alpha " << pj.alpha << ")\n";
    });

    // ---- communities -----------------------------------------------------
    auto* comm = app.add_subcommand("communities", "Louvain community detection");
    struct {
        std::string graph, out = "out";
        std::string null_model = "exact-ucm";
        std::uint64_t seed = 0;
        std::uint32_t subdivide = 0;
    } cm;
    comm->add_option("--graph", cm.graph, "monopartite edge list")->required();
    comm->add_option("--null-model", cm.null_model, "exact-ucm|chung-lu");
    comm->add_option("--seed", cm.seed, "rng seed");
    comm->add_option("--subdivide-min-size", cm.subdivide,
                     "rerun inside communities of at least this size (0 = off)");
    comm->add_option("--out", cm.out, "output directory");
    comm->callback([&] {
        ensure_dir(cm.out);
        const auto g = read_undirected_edgelist_file(cm.graph);
        const NullModel model =
            cm.null_model == "chung-lu" ? NullModel::ChungLu : NullModel::ExactUcm;
        LouvainResult top;
        const Partition partition = detect_communities(g, model, cm.seed, {}, cm.subdivide, &top);
        write_partition_csv_file((fs::path(cm.out) / "partition.csv").string(), g, partition);
        nlohmann::ordered_json j;
        j["modularity"] = top.modularity;
        j["passes"] = top.passes;
        j["q_trace"] = top.q_trace;
        j["communities"] = partition.community_count;
        write_json_file((fs::path(cm.out) / "result.json").string(), j);
        std::cout << "communities: " << partition.community_count << " (Q "
                  << format_double(top.modularity) << ")\n";
    });

    // ---- propagate -------------------------------------------------------
    auto* prop = app.add_subcommand("propagate", "seeded label propagation");
    struct {
        std::string graph, seeds, out = "out";
        std::uint32_t runs = 500;
        std::uint64_t seed = 0;
        unsigned threads = 0;
    } lp;
    prop->add_option("--graph", lp.graph, "monopartite edge list")->required();
    prop->add_option("--seeds", lp.seeds, "seeds CSV node,label")->required();
    prop->add_option("--runs", lp.runs, "independent runs (protocol default 500)");
    prop->add_option("--seed", lp.seed, "rng seed");
    prop->add_option("--threads", lp.threads);
    prop->add_option("--out", lp.out, "output directory");
    prop->callback([&] {
        ensure_dir(lp.out);
        const auto g = read_undirected_edgelist_file(lp.graph);
        LabelPropagationOptions opts;
        opts.runs = lp.runs;
        opts.rng_seed = lp.seed;
        opts.threads = lp.threads == 0 ? default_thread_count() : lp.threads;
        const auto labeling = seeded_label_propagation(g, read_seeds_csv_file(lp.seeds), opts);
        write_labeling_csv_file((fs::path(lp.out) / "labels.csv").string(), g, labeling);
        std::uint64_t labeled = 0;
        for (const auto& l : labeling.final_label)
            if (!l.empty()) ++labeled;
        nlohmann::ordered_json j;
        j["runs"] = lp.runs;
        j["nodes"] = g.node_count();
        j["labeled"] = labeled;
        j["coverage"] =
            g.node_count() == 0 ? 0.0 : static_cast<double>(labeled) / g.node_count();
        write_json_file((fs::path(lp.out) / "summary.json").string(), j);
        std::cout << "labeled " << labeled << " of " << g.node_count() << " nodes\n";
    });

    // ---- analyze ---------------------------------------------------------
    auto* an = app.add_subcommand(
        "analyze", "polarization, betweenness, series and cross-tabs from persisted stages");
    struct {
        std::string records, retweet_graph, verified_communities, labels, hashtag_communities,
            lexicon, bot_scores, out = "out";
        double bot_threshold = 0.5;
        double bin_width = 0.05;
        std::string normalization = "per-group";
        std::string betweenness_graph;
    } az;
    an->add_option("--records", az.records)->required();
    an->add_option("--retweet-graph", az.retweet_graph, "bipartite edge list")->required();
    an->add_option("--verified-communities", az.verified_communities, "partition.csv")->required();
    an->add_option("--labels", az.labels, "labels.csv from propagate");
    an->add_option("--hashtag-communities", az.hashtag_communities, "partition.csv");
    an->add_option("--lexicon", az.lexicon, "lexicon.csv");
    an->add_option("--bot-scores", az.bot_scores, "user_id,score CSV");
    an->add_option("--bot-threshold", az.bot_threshold, "default 0.5");
    an->add_option("--polarization-bin-width", az.bin_width, "histogram bin width (default 0.05)");
    an->add_option("--series-normalization", az.normalization, "none|per-group|global");
    an->add_option("--betweenness-graph", az.betweenness_graph,
                   "optional monopartite edge list; writes betweenness.csv");
    an->add_option("--out", az.out, "output directory");
    an->callback([&] {
        PipelineConfig cfg = common.load();
        ensure_dir(az.out);
        IngestStats stats;
        const auto records = parse_records_file(az.records, ingest_options(cfg), &stats);
        const auto retweet_graph = read_bipartite_edgelist_file(az.retweet_graph);
        const auto verified_comms = read_two_column_csv(az.verified_communities);

        const auto pol = polarization(retweet_graph, verified_comms, az.bin_width);
        {
            std::ofstream out(fs::path(az.out) / "polarization.csv");
            write_polarization_csv(out, pol);
        }
        {
            std::ofstream out(fs::path(az.out) / "polarization_hist.csv");
            write_polarization_histogram_csv(out, pol);
        }

        HashtagLexicon lexicon;
        if (!az.lexicon.empty()) lexicon = read_lexicon_csv_file(az.lexicon);
        const SeriesNormalization norm =
            az.normalization == "none"
                ? SeriesNormalization::None
                : (az.normalization == "global" ? SeriesNormalization::GlobalTotal
                                                : SeriesNormalization::PerGroupTotal);
        if (!az.hashtag_communities.empty()) {
            const auto hashtag_comms = read_two_column_csv(az.hashtag_communities);
            const auto series = temporal_series(records, SeriesItem::Hashtag, hashtag_comms, norm,
                                                &lexicon, cfg.window_start_epoch(),
                                                cfg.window_end_epoch());
            std::ofstream out(fs::path(az.out) / "series_semantic.csv");
            write_series_csv(out, series);

            std::map<std::string, std::string> user_comms = verified_comms;
            if (!az.labels.empty())
                for (const auto& [node, label] : read_final_labels(az.labels))
                    user_comms.emplace(node, label);
            const auto tab = crosstab(records, user_comms, hashtag_comms, &lexicon, false);
            std::ofstream tout(fs::path(az.out) / "crosstab.csv");
            write_crosstab_csv(tout, tab);
            const auto tabv = crosstab(records, user_comms, hashtag_comms, &lexicon, true);
            std::ofstream vout(fs::path(az.out) / "crosstab_verified.csv");
            write_crosstab_csv(vout, tabv);
        }
        if (!az.betweenness_graph.empty()) {
            const auto g = read_undirected_edgelist_file(az.betweenness_graph);
            const auto bc = betweenness_map(g, std::nullopt, default_thread_count());
            std::ofstream out(fs::path(az.out) / "betweenness.csv");
            out << "node,betweenness\n";
            for (const auto& [node, value] : bc)
                out << csv_escape(node) << ',' << format_double(value) << '\n';
        }
        if (!az.bot_scores.empty()) {
            const auto scores = read_bot_scores_file(az.bot_scores);
            const auto bots = filter_by_bot_score(records, scores, az.bot_threshold);
            nlohmann::ordered_json j;
            j["threshold"] = az.bot_threshold;
            j["bot_records"] = bots.kept;
            j["dropped_below_threshold"] = bots.dropped_below_threshold;
            j["dropped_unscored"] = bots.dropped_unscored;
            j["unscored_users"] = bots.unscored_users;
            write_json_file((fs::path(az.out) / "bot_summary.json").string(), j);
        }
        std::cout << "analytics written to " << az.out << "\n";
    });

    // ---- pipeline ----------------------------------------------------------
    auto* pipe = app.add_subcommand("pipeline", "run all ten stages end to end");
    struct {
        std::string records, out;
        std::uint64_t seed = 0;
        double alpha = 0.0;
        std::uint32_t runs = 0;
        unsigned threads = 0;
    } pl;
    pipe->add_option("--records", pl.records, "override input.records");
    pipe->add_option("--out", pl.out, "override run.output_dir");
    auto* seed_opt = pipe->add_option("--seed", pl.seed, "override run.root_seed");
    auto* alpha_opt = pipe->add_option("--alpha", pl.alpha, "override projection.alpha");
    auto* runs_opt = pipe->add_option("--runs", pl.runs, "override propagation.runs");
    auto* threads_opt = pipe->add_option("--threads", pl.threads, "override run.threads");
    pipe->callback([&] {
        PipelineConfig cfg = common.load();
        if (!pl.records.empty()) cfg.records_path = pl.records;
        if (!pl.out.empty()) cfg.output_dir = pl.out;
        if (seed_opt->count() > 0) cfg.root_seed = pl.seed;
        if (alpha_opt->count() > 0) cfg.alpha = pl.alpha;
        if (runs_opt->count() > 0) cfg.propagation_runs = pl.runs;
        if (threads_opt->count() > 0) cfg.threads = pl.threads;
        const auto result = run_pipeline(cfg);
        std::cout << "pipeline complete: " << result.output_dir << "\n";
    });

    // ---- fpr-bench ---------------------------------------------------------
    auto* bench = app.add_subcommand(
        "fpr-bench", "validated-fraction distribution over graphs sampled from the null");
    struct {
        std::string graph, out = "fpr_report.json";
        std::string random_spec;  // "NTxNB:density"
        double alpha = 0.05;
        std::uint32_t samples = 100;
        std::uint64_t seed = 0;
        std::string universe = "all-pairs";
        unsigned threads = 0;
    } fb;
    bench->add_option("--graph", fb.graph, "bipartite edge list to fit");
    bench->add_option("--random", fb.random_spec, "synthetic input, e.g. 100x300:0.05");
    bench->add_option("--alpha", fb.alpha);
    bench->add_option("--samples", fb.samples);
    bench->add_option("--seed", fb.seed);
    bench->add_option("--fdr-universe", fb.universe, "all-pairs|observed");
    bench->add_option("--threads", fb.threads);
    bench->add_option("--out", fb.out, "report JSON path");
    bench->callback([&] {
        if (!(fb.alpha > 0.0 && fb.alpha < 1.0)) throw ConfigError("--alpha must lie in (0,1)");
        BipartiteGraph g;
        if (!fb.graph.empty()) {
            g = read_bipartite_edgelist_file(fb.graph);
        } else if (!fb.random_spec.empty()) {
            std::size_t nt = 0, nb = 0;
            double density = 0.0;
            if (std::sscanf(fb.random_spec.c_str(), "%zux%zu:%lf", &nt, &nb, &density) != 3 ||
                nt == 0 || nb == 0 || density <= 0.0 || density > 1.0)
                throw ConfigError("--random must look like 100x300:0.05");
            Rng rng(fb.seed);
            std::vector<std::string> top(nt), bottom(nb);
            for (std::size_t i = 0; i < nt; ++i) top[i] = "t" + std::to_string(i);
            for (std::size_t a = 0; a < nb; ++a) bottom[a] = "b" + std::to_string(a);
            std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
            for (std::uint32_t i = 0; i < nt; ++i)
                for (std::uint32_t a = 0; a < nb; ++a)
                    if (rng.bernoulli(density)) edges.emplace_back(i, a);
            g = BipartiteGraph::from_edges(std::move(top), std::move(bottom), edges);
        } else {
            throw ConfigError("fpr-bench needs --graph or --random");
        }
        const auto fit = solve_bicm(g);
        const auto result = fpr_bench(
            fit, fb.alpha, fb.samples, derive_seed(fb.seed, 1),
            fb.universe == "observed" ? FdrUniverse::Observed : FdrUniverse::AllPairs,
            fb.threads == 0 ? default_thread_count() : fb.threads);
        write_json_file(fb.out, result.to_json());
        std::cout << "mean validated fraction " << format_double(result.mean_fraction)
                  << " (alpha " << fb.alpha << ", " << fb.samples << " samples)\n";
    });

    // ---- sample ------------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "draw graphs from a fitted ensemble");
    struct {
        std::string fit, out = "out";
        std::uint32_t count = 1;
        std::uint64_t seed = 0;
    } sm;
    sample->add_option("--fit", sm.fit, "fit JSON from `solve`")->required();
    sample->add_option("--count", sm.count, "number of samples");
    sample->add_option("--seed", sm.seed, "rng seed");
    sample->add_option("--out", sm.out, "output directory");
    sample->callback([&] {
        ensure_dir(sm.out);
        const auto fit = BicmFit::from_json(read_json_file(sm.fit));
        const auto graphs = sample_ensemble(fit, sm.count, sm.seed);
        for (std::size_t k = 0; k < graphs.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof(name), "sample_%04zu.tsv", k);
            write_bipartite_edgelist_file((fs::path(sm.out) / name).string(), graphs[k]);
        }
        std::cout << "wrote " << graphs.size() << " samples to " << sm.out << "\n";
    });

    return dispatch(app, argc, argv);
}
