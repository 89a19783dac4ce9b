#include "semnet/pipeline/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "semnet/core/errors.hpp"
#include "semnet/ingest/record.hpp"

namespace semnet {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string v) {
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                          (v.front() == '\'' && v.back() == '\'')))
        return v.substr(1, v.size() - 2);
    return v;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": expected a number, got '" + v + "'");
    }
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("config key " + key + ": expected a non-negative integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ConfigError("config key " + key + ": expected a boolean, got '" + v + "'");
}

}  // namespace

std::optional<std::int64_t> PipelineConfig::window_start_epoch() const {
    if (window_start.empty()) return std::nullopt;
    const auto t = parse_utc_date(window_start);
    if (!t) throw ConfigError("window.start: bad date '" + window_start + "'");
    return t;
}

std::optional<std::int64_t> PipelineConfig::window_end_epoch() const {
    if (window_end.empty()) return std::nullopt;
    const auto t = parse_utc_date(window_end);
    if (!t) throw ConfigError("window.end: bad date '" + window_end + "'");
    return *t + 86399;  // inclusive end of day
}

void PipelineConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("projection.alpha must lie in (0,1)");
    if (!(levenshtein_threshold >= 0.0 && levenshtein_threshold <= 1.0))
        throw ConfigError("normalize.threshold must lie in [0,1]");
    if (propagation_runs < 1) throw ConfigError("propagation.runs must be >= 1");
    if (!(solver_tolerance > 0.0)) throw ConfigError("projection.solver_tolerance must be > 0");
    if (solver_max_iterations == 0) throw ConfigError("projection.solver_max_iterations must be >= 1");
    if (!(polarization_bin_width > 0.0 && polarization_bin_width <= 1.0))
        throw ConfigError("analytics.polarization_bin_width must lie in (0,1]");
    const auto start = window_start_epoch();
    const auto end = window_end_epoch();
    if (start && end && *start > *end) throw ConfigError("window.start is after window.end");
    if (kernel_backend != "auto" && kernel_backend != "scalar" && kernel_backend != "avx2")
        throw ConfigError("run.kernel_backend must be auto, scalar or avx2");
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
    const std::string v = unquote(trim(value));
    if (key == "input.records") records_path = v;
    else if (key == "input.bot_scores") bot_scores_path = v;
    else if (key == "input.keywords") keywords_path = v;
    else if (key == "window.start") window_start = v;
    else if (key == "window.end") window_end = v;
    else if (key == "window.keyword_filter") keyword_filter = to_bool(key, v);
    else if (key == "normalize.threshold") levenshtein_threshold = to_double(key, v);
    else if (key == "normalize.norm") {
        if (v == "max") levenshtein_norm = LevenshteinNorm::Max;
        else if (v == "sum") levenshtein_norm = LevenshteinNorm::Sum;
        else throw ConfigError("normalize.norm must be max or sum");
    } else if (key == "projection.alpha") alpha = to_double(key, v);
    else if (key == "projection.fdr_universe") {
        if (v == "all-pairs") fdr_universe = FdrUniverse::AllPairs;
        else if (v == "observed") fdr_universe = FdrUniverse::Observed;
        else throw ConfigError("projection.fdr_universe must be all-pairs or observed");
    } else if (key == "projection.solver_tolerance") solver_tolerance = to_double(key, v);
    else if (key == "projection.solver_max_iterations")
        solver_max_iterations = static_cast<std::uint32_t>(to_uint(key, v));
    else if (key == "communities.null_model") {
        if (v == "exact-ucm") null_model = NullModel::ExactUcm;
        else if (v == "chung-lu") null_model = NullModel::ChungLu;
        else throw ConfigError("communities.null_model must be exact-ucm or chung-lu");
    } else if (key == "communities.subdivide_min_size")
        subdivide_min_size = static_cast<std::uint32_t>(to_uint(key, v));
    else if (key == "propagation.runs")
        propagation_runs = static_cast<std::uint32_t>(to_uint(key, v));
    else if (key == "propagation.seeds") seeds_path = v;
    else if (key == "propagation.retweet_direction") {
        if (v == "both") retweet_direction = RetweetDirection::Both;
        else if (v == "nonverified-to-verified")
            retweet_direction = RetweetDirection::NonVerifiedToVerified;
        else throw ConfigError("propagation.retweet_direction must be both or nonverified-to-verified");
    } else if (key == "bots.threshold") bot_threshold = to_double(key, v);
    else if (key == "analytics.polarization_bin_width")
        polarization_bin_width = to_double(key, v);
    else if (key == "analytics.series_normalization") {
        if (v == "none") series_normalization = SeriesNormalization::None;
        else if (v == "per-group") series_normalization = SeriesNormalization::PerGroupTotal;
        else if (v == "global") series_normalization = SeriesNormalization::GlobalTotal;
        else throw ConfigError("analytics.series_normalization must be none, per-group or global");
    } else if (key == "run.output_dir") output_dir = v;
    else if (key == "run.root_seed") root_seed = to_uint(key, v);
    else if (key == "run.threads") threads = static_cast<unsigned>(to_uint(key, v));
    else if (key == "run.kernel_backend") kernel_backend = v;
    else throw ConfigError("unknown config key: " + key);
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    PipelineConfig cfg;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        cfg.set(section.empty() ? key : section + "." + key, value);
    }
    // Relative input paths resolve against the config file's directory.
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    auto resolve = [&](std::string& p) {
        if (!p.empty() && std::filesystem::path(p).is_relative()) p = (base / p).string();
    };
    resolve(cfg.records_path);
    resolve(cfg.bot_scores_path);
    resolve(cfg.keywords_path);
    resolve(cfg.seeds_path);
    return cfg;
}

nlohmann::ordered_json PipelineConfig::to_json() const {
    nlohmann::ordered_json j;
    j["input"]["records"] = records_path;
    j["input"]["bot_scores"] = bot_scores_path;
    j["input"]["keywords"] = keywords_path;
    j["window"]["start"] = window_start;
    j["window"]["end"] = window_end;
    j["window"]["keyword_filter"] = keyword_filter;
    j["normalize"]["threshold"] = levenshtein_threshold;
    j["normalize"]["norm"] = levenshtein_norm == LevenshteinNorm::Max ? "max" : "sum";
    j["projection"]["alpha"] = alpha;
    j["projection"]["fdr_universe"] =
        fdr_universe == FdrUniverse::AllPairs ? "all-pairs" : "observed";
    j["projection"]["solver_tolerance"] = solver_tolerance;
    j["projection"]["solver_max_iterations"] = solver_max_iterations;
    j["communities"]["null_model"] =
        null_model == NullModel::ExactUcm ? "exact-ucm" : "chung-lu";
    j["communities"]["subdivide_min_size"] = subdivide_min_size;
    j["propagation"]["runs"] = propagation_runs;
    j["propagation"]["seeds"] = seeds_path;
    j["propagation"]["retweet_direction"] =
        retweet_direction == RetweetDirection::Both ? "both" : "nonverified-to-verified";
    j["bots"]["threshold"] = bot_threshold;
    j["analytics"]["polarization_bin_width"] = polarization_bin_width;
    j["analytics"]["series_normalization"] =
        series_normalization == SeriesNormalization::None
            ? "none"
            : (series_normalization == SeriesNormalization::PerGroupTotal ? "per-group" : "global");
    j["run"]["output_dir"] = output_dir;
    j["run"]["root_seed"] = root_seed;
    j["run"]["threads"] = threads;
    j["run"]["effective_threads"] = effective_threads();
    j["run"]["kernel_backend"] = kernel_backend;
    return j;
}

const char* config_env_var() { return "SEMNET_CONFIG"; }

}  // namespace semnet
