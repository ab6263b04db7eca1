#pragma once

// Config-driven experiment orchestration. A recipe expands into replicate
// jobs (generate truth, produce data, learn or mutate structures, score with
// SHD / SID / interventional total variation); jobs run on a worker pool and
// reduce into an EvalReport whose content is a pure function of the config
// and master seed. Reports render as csv, min/median/max tables, or plot
// data grouped for box plots.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "causeval/datagen.hpp"
#include "causeval/dataset.hpp"
#include "causeval/discovery.hpp"
#include "causeval/graph.hpp"
#include "causeval/io.hpp"
#include "causeval/metrics.hpp"
#include "causeval/network.hpp"
#include "causeval/rng.hpp"
#include "causeval/stats.hpp"
#include "causeval/tv.hpp"

namespace causeval {

// ---------------------------------------------------------------------------
// Recipes

enum class Recipe { relative_performance, over_under, strength_sweep, table1, custom };

inline std::string recipe_name(Recipe r) {
    switch (r) {
        case Recipe::relative_performance: return "relative-performance";
        case Recipe::over_under: return "over-under";
        case Recipe::strength_sweep: return "strength-sweep";
        case Recipe::table1: return "table1";
        case Recipe::custom: return "custom";
    }
    throw std::logic_error("recipe_name: bad recipe");
}

inline Recipe recipe_from_name(const std::string& s) {
    if (s == "relative-performance") return Recipe::relative_performance;
    if (s == "over-under") return Recipe::over_under;
    if (s == "strength-sweep") return Recipe::strength_sweep;
    if (s == "table1") return Recipe::table1;
    if (s == "custom") return Recipe::custom;
    throw std::invalid_argument("unknown recipe '" + s +
                                "' (expected relative-performance, over-under, strength-sweep, "
                                "table1, or custom)");
}

// ---------------------------------------------------------------------------
// Configuration

// One experiment: a recipe plus every knob its jobs read. Synthetic recipes
// cross generators x strength multipliers x replicates; over-under builds a
// biased look-alike study per replicate and scores graph mutants; table1
// evaluates the fixed two-cause example; custom either behaves like a
// synthetic recipe or, when dataset_path is set, learns from an ingested
// file and scores against the network at truth_net_path.
//
// Algorithms that cannot handle a configuration's data (hill-climb on
// continuous columns) are skipped for that configuration rather than failed.
struct ExperimentConfig {
    Recipe recipe = Recipe::custom;
    std::vector<GenConfig> generators;
    std::vector<double> strength_multipliers{1.0};
    std::vector<std::string> algorithms;
    int replicates = 1;
    int sample_size = 5000;
    double alpha = 0.05;
    int max_cond_size = 3;
    LookalikeConfig lookalike;
    double pseudocount = 1.0;
    TvMode tv_mode = TvMode::marginal;
    InterventionPolicy policy;
    int extension_cap = 100;
    double tv_tolerance = 1e-6;
    std::string dataset_path;
    std::string truth_net_path;
    std::string output_dir;
    std::uint64_t master_seed = 0;

    static ExperimentConfig recipe_defaults(Recipe r);
    void validate() const;
};

inline ExperimentConfig ExperimentConfig::recipe_defaults(Recipe r) {
    ExperimentConfig cfg;
    cfg.recipe = r;
    const auto synthetic_trio = [] {
        std::vector<GenConfig> gens(3);
        for (GenConfig& g : gens) {
            g.n_vertices = 14;
            g.expected_neighborhood = 2.0;
        }
        gens[0].family = Family::dirichlet;
        gens[1].family = Family::linear_gaussian;
        gens[2].family = Family::logistic;
        return gens;
    };
    switch (r) {
        case Recipe::relative_performance:
            cfg.generators = synthetic_trio();
            cfg.algorithms = {"pc", "hill-climb"};
            cfg.replicates = 30;
            break;
        case Recipe::strength_sweep:
            cfg.generators = synthetic_trio();
            cfg.strength_multipliers = {0.1, 1.0, 10.0};
            cfg.algorithms = {"pc", "hill-climb"};
            cfg.replicates = 10;
            break;
        case Recipe::over_under:
            cfg.lookalike = lookalike_config("P");
            cfg.replicates = 10;
            break;
        case Recipe::table1:
            cfg.tv_mode = TvMode::parents_at_mean;
            break;
        case Recipe::custom:
            break;
    }
    return cfg;
}

inline void ExperimentConfig::validate() const {
    if (replicates < 1) throw std::invalid_argument("ExperimentConfig: replicates must be >= 1");
    if (sample_size < 1) throw std::invalid_argument("ExperimentConfig: sample_size must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ExperimentConfig: alpha must lie in (0, 1)");
    if (max_cond_size < 0)
        throw std::invalid_argument("ExperimentConfig: max_cond_size must be >= 0");
    if (pseudocount < 0.0)
        throw std::invalid_argument("ExperimentConfig: pseudocount must be non-negative");
    if (extension_cap < 1)
        throw std::invalid_argument("ExperimentConfig: extension_cap must be >= 1");
    if (!(tv_tolerance > 0.0))
        throw std::invalid_argument("ExperimentConfig: tv_tolerance must be positive");
    for (const std::string& a : algorithms)
        if (a != "pc" && a != "hill-climb")
            throw std::invalid_argument("ExperimentConfig: unknown algorithm '" + a +
                                        "' (expected pc or hill-climb)");
    for (double m : strength_multipliers)
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument(
                "ExperimentConfig: strength multipliers must be positive and finite");
    const bool synthetic = recipe == Recipe::relative_performance ||
                           recipe == Recipe::strength_sweep ||
                           (recipe == Recipe::custom && dataset_path.empty());
    if (synthetic) {
        if (generators.empty())
            throw std::invalid_argument("ExperimentConfig: recipe needs at least one generator");
        if (algorithms.empty())
            throw std::invalid_argument("ExperimentConfig: recipe needs at least one algorithm");
        if (strength_multipliers.empty())
            throw std::invalid_argument(
                "ExperimentConfig: recipe needs at least one strength multiplier");
        for (const GenConfig& g : generators) g.validate();
    }
    if (recipe == Recipe::over_under) {
        const LookalikeConfig& lc = lookalike;
        if (lc.subjects < 1 || lc.treatments < 1 || lc.outcomes < 1 || lc.covariates < 0 ||
            lc.biasing_levels < 1)
            throw std::invalid_argument(
                "ExperimentConfig: over-under needs subjects/treatments/outcomes >= 1, "
                "covariates >= 0, biasing_levels >= 1");
        if (!(lc.beta >= 0.0) || !std::isfinite(lc.beta))
            throw std::invalid_argument(
                "ExperimentConfig: lookalike beta must be non-negative and finite");
        if (lc.domain.empty())
            throw std::invalid_argument("ExperimentConfig: lookalike domain label must be set");
    }
    if (recipe == Recipe::custom && !dataset_path.empty()) {
        if (truth_net_path.empty())
            throw std::invalid_argument(
                "ExperimentConfig: dataset_path needs truth_net_path for scoring");
        if (algorithms.empty())
            throw std::invalid_argument("ExperimentConfig: recipe needs at least one algorithm");
    }
    for (const std::string& path : {dataset_path, truth_net_path})
        if (!path.empty() && !std::filesystem::exists(path))
            throw std::invalid_argument("ExperimentConfig: referenced file does not exist: " +
                                        path);
}

// ---------------------------------------------------------------------------
// Report

// One scored structure: a learner run or a mutant evaluation. Failed stages
// leave the metrics NaN and record the reason; wall_time covers the
// algorithm invocation only and is excluded from determinism guarantees.
struct EvalRow {
    std::string recipe;
    std::string config;
    std::string family;
    std::string algorithm;
    int replicate = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double shd = std::numeric_limits<double>::quiet_NaN();
    double sid = std::numeric_limits<double>::quiet_NaN();
    double tv = std::numeric_limits<double>::quiet_NaN();
    double wall_time = 0.0;
    std::string error;

    bool ok() const { return error.empty(); }
};

namespace detail {

inline bool same_metric(double a, double b) {
    return a == b || (std::isnan(a) && std::isnan(b));
}

}  // namespace detail

inline bool operator==(const EvalRow& a, const EvalRow& b) {
    return a.recipe == b.recipe && a.config == b.config && a.family == b.family &&
           a.algorithm == b.algorithm && a.replicate == b.replicate && a.seed == b.seed &&
           a.n == b.n && detail::same_metric(a.shd, b.shd) && detail::same_metric(a.sid, b.sid) &&
           detail::same_metric(a.tv, b.tv) && detail::same_metric(a.wall_time, b.wall_time) &&
           a.error == b.error;
}
inline bool operator!=(const EvalRow& a, const EvalRow& b) { return !(a == b); }

struct EvalReport {
    std::vector<EvalRow> rows;
    int failed_replicates = 0;

    std::string to_csv(bool include_wall_time = true) const;
    static EvalReport from_csv(const std::string& text);
    std::string to_table() const;
    std::string to_plotdata() const;
};

inline bool operator==(const EvalReport& a, const EvalReport& b) {
    return a.rows == b.rows && a.failed_replicates == b.failed_replicates;
}
inline bool operator!=(const EvalReport& a, const EvalReport& b) { return !(a == b); }

namespace detail {

inline constexpr const char* kCsvHeader =
    "recipe,config,family,algorithm,replicate,seed,n,shd,sid,tv,wall_time,error";
inline constexpr const char* kCsvHeaderNoWall =
    "recipe,config,family,algorithm,replicate,seed,n,shd,sid,tv,error";

// Median with the even-count midpoint convention; values must be non-empty.
inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline std::string fixed4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace detail

inline std::string EvalReport::to_csv(bool include_wall_time) const {
    std::string out = include_wall_time ? detail::kCsvHeader : detail::kCsvHeaderNoWall;
    out += '\n';
    for (const EvalRow& r : rows) {
        out += r.recipe + ',' + r.config + ',' + r.family + ',' + r.algorithm + ',' +
               std::to_string(r.replicate) + ',' + std::to_string(r.seed) + ',' +
               std::to_string(r.n) + ',' + format_double(r.shd) + ',' + format_double(r.sid) +
               ',' + format_double(r.tv);
        if (include_wall_time) out += ',' + format_double(r.wall_time);
        out += ',' + r.error + '\n';
    }
    out += "# failed_replicates=" + std::to_string(failed_replicates) + '\n';
    return out;
}

inline EvalReport EvalReport::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("report csv: empty text");
    line = detail::trim_cr(line);
    bool with_wall = false;
    if (line == detail::kCsvHeader)
        with_wall = true;
    else if (line != detail::kCsvHeaderNoWall)
        throw std::runtime_error("report csv: unrecognized header '" + line + "'");
    const std::size_t want = with_wall ? 12 : 11;
    EvalReport rpt;
    while (std::getline(in, line)) {
        line = detail::trim_cr(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string tag = "# failed_replicates=";
            if (line.rfind(tag, 0) == 0)
                rpt.failed_replicates = std::atoi(line.c_str() + tag.size());
            continue;
        }
        std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() != want)
            throw std::runtime_error("report csv: expected " + std::to_string(want) +
                                     " fields, got " + std::to_string(cells.size()) + " in '" +
                                     line + "'");
        EvalRow r;
        r.recipe = cells[0];
        r.config = cells[1];
        r.family = cells[2];
        r.algorithm = cells[3];
        r.replicate = std::atoi(cells[4].c_str());
        r.seed = std::strtoull(cells[5].c_str(), nullptr, 10);
        r.n = std::strtoull(cells[6].c_str(), nullptr, 10);
        r.shd = parse_double(cells[7]);
        r.sid = parse_double(cells[8]);
        r.tv = parse_double(cells[9]);
        if (with_wall) r.wall_time = parse_double(cells[10]);
        r.error = cells[want - 1];
        rpt.rows.push_back(std::move(r));
    }
    return rpt;
}

inline std::string EvalReport::to_table() const {
    std::string out = "# rows=" + std::to_string(rows.size()) +
                      " failed_replicates=" + std::to_string(failed_replicates) + '\n';
    out +=
        "config family algorithm count | sid min/med/max | shd min/med/max | tv min/med/max\n";
    std::vector<std::tuple<std::string, std::string, std::string>> order;
    std::map<std::tuple<std::string, std::string, std::string>, std::vector<const EvalRow*>>
        groups;
    for (const EvalRow& r : rows) {
        const auto key = std::make_tuple(r.config, r.family, r.algorithm);
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) order.push_back(key);
        it->second.push_back(&r);
    }
    std::string footnotes;
    for (const auto& key : order) {
        std::vector<double> shd_v, sid_v, tv_v;
        for (const EvalRow* r : groups[key])
            if (r->ok()) {
                shd_v.push_back(r->shd);
                sid_v.push_back(r->sid);
                tv_v.push_back(r->tv);
            }
        const auto& [config, family, algorithm] = key;
        if (shd_v.empty()) {
            footnotes += "# group " + config + "/" + family + "/" + algorithm +
                         " omitted (no successful rows)\n";
            continue;
        }
        const auto span = [](const std::vector<double>& v) {
            return detail::fixed4(*std::min_element(v.begin(), v.end())) + " " +
                   detail::fixed4(detail::median_of(v)) + " " +
                   detail::fixed4(*std::max_element(v.begin(), v.end()));
        };
        out += config + " " + family + " " + algorithm + " " + std::to_string(shd_v.size()) +
               " | " + span(sid_v) + " | " + span(shd_v) + " | " + span(tv_v) + '\n';
    }
    return out + footnotes;
}

inline std::string EvalReport::to_plotdata() const {
    std::string out = "# plotdata: one line per (family, algorithm, metric); values ordered by "
                      "(config, replicate)\n";
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::vector<const EvalRow*>> groups;
    for (const EvalRow& r : rows) {
        const auto key = std::make_pair(r.family, r.algorithm);
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) order.push_back(key);
        it->second.push_back(&r);
    }
    for (const auto& key : order) {
        std::vector<const EvalRow*> ok_rows;
        for (const EvalRow* r : groups[key])
            if (r->ok()) ok_rows.push_back(r);
        if (ok_rows.empty()) {
            out += "# group " + key.first + "/" + key.second +
                   " omitted (no successful rows)\n";
            continue;
        }
        const auto emit = [&](const char* metric, double EvalRow::*field) {
            out += "family=" + key.first + " algorithm=" + key.second + " metric=" + metric +
                   " values=";
            for (std::size_t i = 0; i < ok_rows.size(); ++i) {
                if (i) out += ' ';
                out += format_double(ok_rows[i]->*field);
            }
            out += '\n';
        };
        emit("sid", &EvalRow::sid);
        emit("shd", &EvalRow::shd);
        emit("tv", &EvalRow::tv);
    }
    return out;
}

// Renders a report in one of the documented formats.
inline std::string emit_report(const EvalReport& report, const std::string& format) {
    if (report.rows.empty()) throw std::invalid_argument("emit_report: empty report");
    if (format == "table") return report.to_table();
    if (format == "csv") return report.to_csv();
    if (format == "plotdata") return report.to_plotdata();
    throw std::invalid_argument("emit_report: unknown format '" + format +
                                "' (expected table, csv, or plotdata)");
}

inline void emit_report(const EvalReport& report, const std::string& format,
                        const std::string& path) {
    write_text_file(path, emit_report(report, format));
}

// ---------------------------------------------------------------------------
// Dataset ingestion

// Reads a delimited dataset file (two-line name/type header, then rows),
// skipping '#' comment lines so emitted artifacts round-trip.
inline Dataset ingest_dataset(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line, kept;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        kept += line;
        kept += '\n';
    }
    return Dataset::parse(kept);
}

// ---------------------------------------------------------------------------
// Network plumbing

inline const Dag& network_dag(const Network& net) {
    return std::visit([](const auto& m) -> const Dag& { return m.dag(); }, net);
}

inline std::string network_to_string(const Network& net) {
    return std::visit([](const auto& m) { return m.to_string(); }, net);
}

// Dispatches on the 'network: <kind>' tag.
inline Network parse_network_auto(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = detail::trim(detail::trim_cr(line));
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("network:", 0) != 0) break;
        const std::string kind = detail::trim(line.substr(8));
        if (kind == "discrete") return DiscreteNetwork::parse(text);
        if (kind == "gaussian") return GaussianNetwork::parse(text);
        throw std::runtime_error("network text: unknown kind '" + kind + "'");
    }
    throw std::runtime_error("network text: missing 'network:' header");
}

// ---------------------------------------------------------------------------
// Look-alike studies

namespace detail {

// A synthetic factorial study shaped like one of the real domains, after
// Algorithm-1 biasing. `truth` and `truth_net` describe the biased world
// exactly: the generation graph plus C -> T_j, with each treatment's CPT set
// to P(T_j=1 | C=c) = logistic(s*beta), s = +1 iff c*j is even.
struct Lookalike {
    Dag truth;
    DiscreteNetwork truth_net;
    Dataset data;
    std::vector<std::string> treatments;
    std::vector<std::string> outcomes;
    std::vector<std::pair<std::string, std::string>> pairs;
};

inline Lookalike build_lookalike(const LookalikeConfig& lc, std::uint64_t seed) {
    if (lc.subjects < 1)
        throw std::invalid_argument("build_lookalike: needs at least one subject");
    if (lc.treatments < 1 || lc.treatments > 20)
        throw std::invalid_argument("build_lookalike: treatments must lie in 1..20");
    if (lc.outcomes < 1)
        throw std::invalid_argument("build_lookalike: needs at least one outcome");
    if (lc.covariates < 0)
        throw std::invalid_argument("build_lookalike: covariates must be non-negative");
    if (lc.biasing_levels < 1)
        throw std::invalid_argument("build_lookalike: biasing_levels must be >= 1");
    if (!(lc.beta >= 0.0) || !std::isfinite(lc.beta))
        throw std::invalid_argument("build_lookalike: beta must be non-negative and finite");

    const int k = lc.treatments, p = lc.outcomes, m = lc.covariates, l = lc.biasing_levels;
    const int n = 1 + m + k + p;
    // Declaration order fixes treatment column order and with it the parity
    // index j used by both the biasing step and the truth CPTs.
    Dag gen;
    gen.add_vertex("C");
    for (int i = 1; i <= m; ++i) gen.add_vertex("W" + std::to_string(i));
    for (int j = 1; j <= k; ++j) gen.add_vertex("T" + std::to_string(j));
    for (int i = 1; i <= p; ++i) gen.add_vertex("O" + std::to_string(i));
    const auto w_at = [&](int i) { return i; };          // W_i, i in 1..m
    const auto t_at = [&](int j) { return m + j; };      // T_j, j in 1..k
    const auto o_at = [&](int i) { return m + k + i; };  // O_i, i in 1..p

    Rng rng(derive_seed(seed, {1}));
    // Randomized-world structure: the biasing covariate may drive subject
    // covariates and outcomes, treatments stay roots for the factorial
    // design, and fix-ups guarantee every treatment touches an outcome and
    // every outcome descends from a treatment.
    for (int i = 1; i <= m; ++i)
        if (rng.bernoulli(0.5)) gen.add_edge(0, w_at(i));
    std::vector<int> t_children(static_cast<std::size_t>(k) + 1, 0);
    std::vector<int> o_parents(static_cast<std::size_t>(p) + 1, 0);
    for (int j = 1; j <= k; ++j)
        for (int i = 1; i <= p; ++i)
            if (rng.bernoulli(0.5)) {
                gen.add_edge(t_at(j), o_at(i));
                ++t_children[static_cast<std::size_t>(j)];
                ++o_parents[static_cast<std::size_t>(i)];
            }
    for (int j = 1; j <= k; ++j)
        if (t_children[static_cast<std::size_t>(j)] == 0) {
            const int i = (j - 1) % p + 1;
            gen.add_edge(t_at(j), o_at(i));
            ++o_parents[static_cast<std::size_t>(i)];
        }
    for (int i = 1; i <= p; ++i)
        if (o_parents[static_cast<std::size_t>(i)] == 0)
            gen.add_edge(t_at((i - 1) % k + 1), o_at(i));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= p; ++j)
            if (rng.bernoulli(0.5)) gen.add_edge(w_at(i), o_at(j));
    for (int i = 1; i <= p; ++i)
        if (rng.bernoulli(0.5)) gen.add_edge(0, o_at(i));

    std::vector<int> arities(static_cast<std::size_t>(n), 2);
    arities[0] = l + 1;  // state 0 never occurs; Algorithm 1 codes C as 1..l
    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    {
        const std::vector<double> levels = rng.dirichlet(std::vector<double>(l, 5.0));
        std::vector<double> c_row(static_cast<std::size_t>(l) + 1, 0.0);
        for (int s = 0; s < l; ++s) c_row[static_cast<std::size_t>(s) + 1] = levels[s];
        cpts[0] = std::move(c_row);
    }
    for (int v = 1; v < n; ++v) {
        std::size_t rows = 1;
        for (int u : gen.parents(v)) rows *= static_cast<std::size_t>(arities[u]);
        const bool outcome = v >= o_at(1);
        const bool treatment = v >= t_at(1) && v < o_at(1);
        std::vector<double> table;
        table.reserve(rows * 2);
        for (std::size_t r = 0; r < rows; ++r) {
            if (treatment) {
                table.push_back(0.5);
                table.push_back(0.5);
            } else {
                // Skewed rows for outcomes keep treatment effects strong.
                const std::vector<double> row =
                    rng.dirichlet(std::vector<double>(2, outcome ? 0.5 : 2.0));
                table.push_back(row[0]);
                table.push_back(row[1]);
            }
        }
        cpts[static_cast<std::size_t>(v)] = std::move(table);
    }
    const DiscreteNetwork gen_net(gen, arities, cpts);

    std::vector<std::string> treatments, outcomes;
    for (int j = 1; j <= k; ++j) treatments.push_back("T" + std::to_string(j));
    for (int i = 1; i <= p; ++i) outcomes.push_back("O" + std::to_string(i));
    const Dataset factorial =
        factorial_dataset(gen_net, lc.subjects, treatments, derive_seed(seed, {2}));
    Dataset data = bias_sample(factorial, lc.beta, "C", derive_seed(seed, {3}));

    Dag truth;
    for (const std::string& name : gen.vertex_names()) truth.add_vertex(name);
    for (const auto& [a, b] : gen.edges()) truth.add_edge(a, b);
    for (int j = 1; j <= k; ++j) truth.add_edge(0, t_at(j));
    for (int j = 1; j <= k; ++j) {
        std::vector<double> table;
        table.reserve(2 * static_cast<std::size_t>(l + 1));
        table.push_back(0.5);  // C = 0 is unreachable
        table.push_back(0.5);
        for (int c = 1; c <= l; ++c) {
            const int s = (static_cast<long long>(c) * j) % 2 == 0 ? 1 : -1;
            const double q = logistic(s * lc.beta);
            table.push_back(1.0 - q);
            table.push_back(q);
        }
        cpts[static_cast<std::size_t>(t_at(j))] = std::move(table);
    }
    DiscreteNetwork truth_net(truth, arities, cpts);

    std::vector<std::pair<std::string, std::string>> pairs;
    for (const std::string& t : treatments)
        for (const std::string& o : outcomes) pairs.emplace_back(t, o);
    return Lookalike{std::move(truth), std::move(truth_net), std::move(data),
                     std::move(treatments), std::move(outcomes), std::move(pairs)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Experiment execution

namespace detail {

inline int worker_count() {
    if (const char* env = std::getenv("CAUSEVAL_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

inline std::string sanitize_error(std::string msg) {
    for (char& c : msg)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return msg;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline bool all_variable_columns_discrete(const Dataset& data) {
    for (int c = 0; c < data.column_count(); ++c)
        if (data.column(c).role != Role::id && data.column(c).type != ColType::discrete)
            return false;
    return true;
}

// Runs one learner and returns the equivalence class it commits to; raw
// hill-climb output is reported as its CPDAG so metrics average over the
// class for every algorithm alike.
inline Cpdag run_learner(const std::string& algo, const Dataset& data,
                         const ExperimentConfig& cfg, Dag* raw = nullptr) {
    if (algo == "pc") {
        const CiKind kind =
            all_variable_columns_discrete(data) ? CiKind::g_test : CiKind::fisher_z;
        return pc(data, kind, cfg.alpha, cfg.max_cond_size);
    }
    if (algo == "hill-climb") {
        Dag g = hill_climb(data);
        Cpdag c = cpdag_of(g);
        if (raw) *raw = std::move(g);
        return c;
    }
    throw std::invalid_argument("unknown algorithm '" + algo + "' (expected pc or hill-climb)");
}

struct JobResult {
    std::vector<EvalRow> rows;
    bool failed = false;
};

// Persists one artifact if the job has an output directory.
inline void persist(const std::string& dir, const std::string& name, const std::string& text) {
    if (!dir.empty()) write_text_file(dir + "/" + name, text);
}

struct SyntheticTask {
    GenConfig gen;
    std::string config_label;
    std::string family;
};

// Sub-seed tags off the replicate seed; documented so single replicates can
// be reproduced in isolation: 1 = generation, 2 = sampling, 3 = biasing,
// 4 = extension sampling in metric_on_cpdag.
inline void run_synthetic_replicate(const ExperimentConfig& cfg, const SyntheticTask& task,
                                    int rep, std::uint64_t rep_seed, const std::string& dir,
                                    JobResult& out) {
    EvalRow base;
    base.recipe = recipe_name(cfg.recipe);
    base.config = task.config_label;
    base.family = task.family;
    base.replicate = rep;
    base.seed = rep_seed;
    base.n = static_cast<std::size_t>(cfg.sample_size);
    std::vector<std::string> algos;
    for (const std::string& a : cfg.algorithms)
        if (a != "hill-climb" || task.gen.family != Family::linear_gaussian)
            algos.push_back(a);
    try {
        GenConfig gen = task.gen;
        gen.seed = derive_seed(rep_seed, {1});
        const Network truth = generate_network(gen);
        const Dataset data = sample(truth, cfg.sample_size, derive_seed(rep_seed, {2}));
        const Dag& truth_dag = network_dag(truth);
        persist(dir, "truth.dag", truth_dag.to_string());
        persist(dir, "truth.net", network_to_string(truth));
        persist(dir, "data.csv", data.to_string());
        for (const std::string& algo : algos) {
            EvalRow row = base;
            row.algorithm = algo;
            try {
                const auto t0 = std::chrono::steady_clock::now();
                Dag raw;
                const Cpdag learned = run_learner(algo, data, cfg, &raw);
                row.wall_time = seconds_since(t0);
                if (algo == "hill-climb") persist(dir, algo + ".dag", raw.to_string());
                persist(dir, algo + ".cpdag",
                        learner_manifest(algo, cfg.alpha, rep_seed) + learned.to_string());
                const std::uint64_t mseed = derive_seed(rep_seed, {4});
                row.shd = metric_on_cpdag(truth_dag, learned, StructMetric::shd,
                                          cfg.extension_cap, mseed)
                              .value;
                row.sid = metric_on_cpdag(truth_dag, learned, StructMetric::sid,
                                          cfg.extension_cap, mseed)
                              .value;
                TvContext ctx;
                ctx.reference = &truth;
                ctx.data = &data;
                ctx.policy = cfg.policy;
                ctx.mode = cfg.tv_mode;
                ctx.pseudocount = cfg.pseudocount;
                ctx.tol = cfg.tv_tolerance;
                row.tv = metric_on_cpdag(truth_dag, learned, StructMetric::tv,
                                         cfg.extension_cap, mseed, &ctx)
                             .value;
            } catch (const std::exception& e) {
                row.error = sanitize_error(e.what());
                out.failed = true;
            }
            out.rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        for (const std::string& algo : algos) {
            EvalRow row = base;
            row.algorithm = algo;
            row.error = sanitize_error(e.what());
            out.rows.push_back(std::move(row));
        }
        out.failed = true;
    }
}

inline void run_over_under_replicate(const ExperimentConfig& cfg, int rep,
                                     std::uint64_t rep_seed, const std::string& dir,
                                     JobResult& out) {
    EvalRow base;
    base.recipe = recipe_name(cfg.recipe);
    base.config = cfg.lookalike.domain;
    base.family = "lookalike";
    base.replicate = rep;
    base.seed = rep_seed;
    std::vector<std::string> labels;
    for (int j = 1; j <= cfg.lookalike.treatments; ++j) {
        labels.push_back("over-T" + std::to_string(j));
        labels.push_back("under-T" + std::to_string(j));
    }
    try {
        const Lookalike lk = build_lookalike(cfg.lookalike, rep_seed);
        base.n = lk.data.row_count();
        persist(dir, "truth.dag", lk.truth.to_string());
        persist(dir, "truth.net", lk.truth_net.to_string());
        persist(dir, "data.csv", lk.data.to_string());
        const VertexSet outcome_set(lk.outcomes.begin(), lk.outcomes.end());
        for (const std::string& t : lk.treatments) {
            for (const bool over : {true, false}) {
                EvalRow row = base;
                row.algorithm = (over ? "over-" : "under-") + t;
                try {
                    const auto t0 = std::chrono::steady_clock::now();
                    const Dag mutant = over ? mutate_overspecify(lk.truth, t, outcome_set)
                                            : mutate_underspecify(lk.truth, t);
                    row.shd = shd(lk.truth, mutant).value;
                    row.sid = sid(lk.truth, mutant).value;
                    const DiscreteNetwork fit =
                        fit_mle_discrete(mutant, lk.data, cfg.pseudocount);
                    row.tv = tv_dag(lk.truth_net, fit, cfg.policy, cfg.tv_mode, &lk.pairs,
                                    cfg.tv_tolerance);
                    row.wall_time = seconds_since(t0);
                    persist(dir, row.algorithm + ".dag", mutant.to_string());
                } catch (const std::exception& e) {
                    row.error = sanitize_error(e.what());
                    out.failed = true;
                }
                out.rows.push_back(std::move(row));
            }
        }
    } catch (const std::exception& e) {
        for (const std::string& label : labels) {
            EvalRow row = base;
            row.algorithm = label;
            row.error = sanitize_error(e.what());
            out.rows.push_back(std::move(row));
        }
        out.failed = true;
    }
}

inline void run_table1_replicate(const ExperimentConfig& cfg, int rep, std::uint64_t rep_seed,
                                 const std::string& dir, JobResult& out) {
    Dag t;
    t.add_vertex("V1");
    t.add_vertex("V2");
    t.add_vertex("V3");
    t.add_edge("V1", "V3");
    t.add_edge("V2", "V3");
    const GaussianNetwork truth(t, {{}, {}, {1.0, 0.1}}, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    // Dropping one cause keeps the remaining coefficient and noise unchanged.
    Dag d1;
    d1.add_vertex("V1");
    d1.add_vertex("V2");
    d1.add_vertex("V3");
    d1.add_edge("V2", "V3");
    const GaussianNetwork est1(d1, {{}, {}, {0.1}}, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    Dag d2;
    d2.add_vertex("V1");
    d2.add_vertex("V2");
    d2.add_vertex("V3");
    d2.add_edge("V1", "V3");
    const GaussianNetwork est2(d2, {{}, {}, {1.0}}, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    const std::vector<std::pair<std::string, const GaussianNetwork*>> models = {
        {"omit-V1", &est1}, {"omit-V2", &est2}};
    std::string table = "# interventional total variation of V3, mode=" +
                        tv_mode_name(cfg.tv_mode) + "\n            omit-V1     omit-V2\n";
    for (const std::string& target : {std::string("V1"), std::string("V2")}) {
        table += "do(" + target + "=2)";
        for (const auto& [label, est] : models) {
            EvalRow row;
            row.recipe = recipe_name(cfg.recipe);
            row.config = "do-" + target;
            row.family = "linear-gaussian";
            row.algorithm = label;
            row.replicate = rep;
            row.seed = rep_seed;
            try {
                const auto t0 = std::chrono::steady_clock::now();
                row.tv = tv_pair(truth, *est, target, 2.0, "V3", cfg.tv_mode, cfg.tv_tolerance);
                row.shd = shd(t, est->dag()).value;
                row.sid = sid(t, est->dag()).value;
                row.wall_time = seconds_since(t0);
                table += "    " + fixed4(row.tv);
            } catch (const std::exception& e) {
                row.error = sanitize_error(e.what());
                out.failed = true;
                table += "    failed";
            }
            out.rows.push_back(std::move(row));
        }
        table += '\n';
    }
    persist(dir, "table1.txt", table);
}

inline void run_ingested_replicate(const ExperimentConfig& cfg, int rep, std::uint64_t rep_seed,
                                   const std::string& dir, JobResult& out) {
    EvalRow base;
    base.recipe = recipe_name(cfg.recipe);
    base.config = std::filesystem::path(cfg.dataset_path).stem().string();
    base.family = "ingested";
    base.replicate = rep;
    base.seed = rep_seed;
    try {
        const Dataset data = ingest_dataset(cfg.dataset_path);
        const Network truth = parse_network_auto(read_text_file(cfg.truth_net_path));
        const Dag& truth_dag = network_dag(truth);
        base.n = data.row_count();
        for (const std::string& algo : cfg.algorithms) {
            EvalRow row = base;
            row.algorithm = algo;
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const Cpdag learned = run_learner(algo, data, cfg);
                row.wall_time = seconds_since(t0);
                persist(dir, algo + ".cpdag",
                        learner_manifest(algo, cfg.alpha, rep_seed) + learned.to_string());
                const std::uint64_t mseed = derive_seed(rep_seed, {4});
                row.shd = metric_on_cpdag(truth_dag, learned, StructMetric::shd,
                                          cfg.extension_cap, mseed)
                              .value;
                row.sid = metric_on_cpdag(truth_dag, learned, StructMetric::sid,
                                          cfg.extension_cap, mseed)
                              .value;
                TvContext ctx;
                ctx.reference = &truth;
                ctx.data = &data;
                ctx.policy = cfg.policy;
                ctx.mode = cfg.tv_mode;
                ctx.pseudocount = cfg.pseudocount;
                ctx.tol = cfg.tv_tolerance;
                row.tv = metric_on_cpdag(truth_dag, learned, StructMetric::tv,
                                         cfg.extension_cap, mseed, &ctx)
                             .value;
            } catch (const std::exception& e) {
                row.error = sanitize_error(e.what());
                out.failed = true;
            }
            out.rows.push_back(std::move(row));
        }
    } catch (const std::exception& e) {
        for (const std::string& algo : cfg.algorithms) {
            EvalRow row = base;
            row.algorithm = algo;
            row.error = sanitize_error(e.what());
            out.rows.push_back(std::move(row));
        }
        out.failed = true;
    }
}

}  // namespace detail

// Expands the recipe into replicate jobs, runs them on a worker pool sized
// by CAUSEVAL_WORKERS (default: hardware concurrency), and reduces results
// in (configuration, replicate) order so the report does not depend on
// scheduling. Per-replicate seeds are derive_seed(master, {recipe,
// configuration index, replicate}).
inline EvalReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    using detail::JobResult;
    struct Job {
        std::string dir;
        std::function<void(JobResult&)> run;
    };
    std::vector<Job> jobs;
    const auto rep_seed_for = [&](int config_index, int rep) {
        return derive_seed(cfg.master_seed,
                           {static_cast<std::uint64_t>(cfg.recipe),
                            static_cast<std::uint64_t>(config_index),
                            static_cast<std::uint64_t>(rep)});
    };
    const auto dir_for = [&](const std::string& config_label, int rep) {
        if (cfg.output_dir.empty()) return std::string();
        return cfg.output_dir + "/" + config_label + "/rep" + std::to_string(rep);
    };

    const bool synthetic = cfg.recipe == Recipe::relative_performance ||
                           cfg.recipe == Recipe::strength_sweep ||
                           (cfg.recipe == Recipe::custom && cfg.dataset_path.empty());
    if (synthetic) {
        int config_index = 0;
        for (const GenConfig& gen : cfg.generators) {
            for (double mult : cfg.strength_multipliers) {
                detail::SyntheticTask task;
                task.gen = gen;
                task.gen.strength_multiplier = gen.strength_multiplier * mult;
                task.family = family_name(gen.family);
                task.config_label = "g" + std::to_string(config_index) + "-" + task.family;
                if (cfg.strength_multipliers.size() > 1 || mult != 1.0) {
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "%g", mult);
                    task.config_label += std::string("-x") + buf;
                }
                for (int rep = 0; rep < cfg.replicates; ++rep) {
                    const std::uint64_t rs = rep_seed_for(config_index, rep);
                    const std::string dir = dir_for(task.config_label, rep);
                    jobs.push_back({dir, [&cfg, task, rep, rs, dir](JobResult& out) {
                                        detail::run_synthetic_replicate(cfg, task, rep, rs, dir,
                                                                        out);
                                    }});
                }
                ++config_index;
            }
        }
    } else if (cfg.recipe == Recipe::over_under) {
        for (int rep = 0; rep < cfg.replicates; ++rep) {
            const std::uint64_t rs = rep_seed_for(0, rep);
            const std::string dir = dir_for(cfg.lookalike.domain, rep);
            jobs.push_back({dir, [&cfg, rep, rs, dir](JobResult& out) {
                                detail::run_over_under_replicate(cfg, rep, rs, dir, out);
                            }});
        }
    } else if (cfg.recipe == Recipe::table1) {
        for (int rep = 0; rep < cfg.replicates; ++rep) {
            const std::uint64_t rs = rep_seed_for(0, rep);
            const std::string dir = dir_for("table1", rep);
            jobs.push_back({dir, [&cfg, rep, rs, dir](JobResult& out) {
                                detail::run_table1_replicate(cfg, rep, rs, dir, out);
                            }});
        }
    } else {  // custom with an ingested dataset
        for (int rep = 0; rep < cfg.replicates; ++rep) {
            const std::uint64_t rs = rep_seed_for(0, rep);
            const std::string dir = dir_for("ingested", rep);
            jobs.push_back({dir, [&cfg, rep, rs, dir](JobResult& out) {
                                detail::run_ingested_replicate(cfg, rep, rs, dir, out);
                            }});
        }
    }

    if (!cfg.output_dir.empty())
        for (const Job& job : jobs)
            if (!job.dir.empty()) std::filesystem::create_directories(job.dir);

    std::vector<JobResult> results(jobs.size());
    const auto run_job = [&](std::size_t i) {
        try {
            jobs[i].run(results[i]);
        } catch (const std::exception& e) {
            // Job bodies record their own failures; this guards artifact I/O.
            EvalRow row;
            row.recipe = recipe_name(cfg.recipe);
            row.algorithm = "internal";
            row.error = detail::sanitize_error(e.what());
            results[i].rows.push_back(std::move(row));
            results[i].failed = true;
        }
    };
    const int workers = std::min<int>(detail::worker_count(), static_cast<int>(jobs.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
    } else {
        std::atomic<std::size_t> next{0};
        const auto work = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) run_job(i);
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }

    EvalReport report;
    for (JobResult& r : results) {
        report.failed_replicates += r.failed ? 1 : 0;
        for (EvalRow& row : r.rows) report.rows.push_back(std::move(row));
    }
    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        write_text_file(cfg.output_dir + "/report.csv", report.to_csv());
        if (!report.rows.empty()) {
            write_text_file(cfg.output_dir + "/report.txt", report.to_table());
            write_text_file(cfg.output_dir + "/plotdata.txt", report.to_plotdata());
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Experiment config documents. Line-oriented `key = value`; '#' starts a
// comment; blank lines ignored. `recipe` must come first and seeds the
// defaults; later keys override them. `generator` and `algorithms` replace
// the defaults on first use; `generator` may repeat to add configurations.
//
//   recipe = strength-sweep
//   replicates = 10
//   sample_size = 5000
//   alpha = 0.05
//   max_cond_size = 3
//   seed = 7
//   output_dir = out/sweep
//   algorithms = pc,hill-climb
//   multipliers = 0.1,1,10
//   tv_mode = marginal            # or parents-at-mean
//   pseudocount = 1
//   extension_cap = 100
//   tv_tolerance = 1e-6
//   policy = V3=2,V1=1            # do()-values; defaults used when absent
//   generator = family=dirichlet vertices=14 neighborhood=2 arity=3 ess=10
//   generator = family=logistic vertices=14 delta=0.375
//   lookalike = domain=P subjects=5000 treatments=3 outcomes=4 covariates=4 levels=2 beta=1
//   dataset = path/to/data.csv    # custom recipe only
//   truth_net = path/to/truth.net

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline GenConfig parse_generator_spec(const std::string& spec) {
    GenConfig gen;
    for (const std::string& tok : split_ws(spec)) {
        const std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("generator spec: expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "family") gen.family = family_from_name(val);
        else if (key == "vertices") gen.n_vertices = std::stoi(val);
        else if (key == "neighborhood") gen.expected_neighborhood = parse_double(val);
        else if (key == "arity") gen.arity = std::stoi(val);
        else if (key == "ess") gen.equivalent_sample_size = parse_double(val);
        else if (key == "delta") gen.delta = parse_double(val);
        else if (key == "weight_lo") gen.weight_lo = parse_double(val);
        else if (key == "weight_hi") gen.weight_hi = parse_double(val);
        else if (key == "multiplier") gen.strength_multiplier = parse_double(val);
        else throw std::runtime_error("generator spec: unknown key '" + key + "'");
    }
    return gen;
}

inline LookalikeConfig parse_lookalike_spec(const std::string& spec, LookalikeConfig base) {
    for (const std::string& tok : split_ws(spec)) {
        const std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("lookalike spec: expected key=value, got '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "domain") base = lookalike_config(val);
        else if (key == "subjects") base.subjects = std::stoi(val);
        else if (key == "treatments") base.treatments = std::stoi(val);
        else if (key == "outcomes") base.outcomes = std::stoi(val);
        else if (key == "covariates") base.covariates = std::stoi(val);
        else if (key == "levels") base.biasing_levels = std::stoi(val);
        else if (key == "beta") base.beta = parse_double(val);
        else throw std::runtime_error("lookalike spec: unknown key '" + key + "'");
    }
    return base;
}

inline InterventionPolicy parse_policy_spec(const std::string& spec) {
    InterventionPolicy policy;
    for (const std::string& item : split(spec, ',')) {
        const std::string tok = trim(item);
        if (tok.empty()) continue;
        const std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("policy: expected name=value, got '" + tok + "'");
        policy.values[trim(tok.substr(0, eq))] = parse_double(trim(tok.substr(eq + 1)));
    }
    return policy;
}

}  // namespace detail

inline ExperimentConfig load_experiment_config(const std::string& text) {
    using detail::split;
    using detail::trim;
    bool have_recipe = false;
    bool generators_replaced = false;
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim_cr(raw);
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!have_recipe) {
            if (key != "recipe")
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": first key must be 'recipe'");
            cfg = ExperimentConfig::recipe_defaults(recipe_from_name(val));
            have_recipe = true;
            continue;
        }
        try {
            if (key == "recipe") {
                throw std::runtime_error("'recipe' may appear only once");
            } else if (key == "replicates") {
                cfg.replicates = std::stoi(val);
            } else if (key == "sample_size") {
                cfg.sample_size = std::stoi(val);
            } else if (key == "alpha") {
                cfg.alpha = parse_double(val);
            } else if (key == "max_cond_size") {
                cfg.max_cond_size = std::stoi(val);
            } else if (key == "seed") {
                cfg.master_seed = std::stoull(val);
            } else if (key == "output_dir") {
                cfg.output_dir = val;
            } else if (key == "algorithms") {
                cfg.algorithms.clear();
                for (const std::string& a : split(val, ','))
                    if (!trim(a).empty()) cfg.algorithms.push_back(trim(a));
            } else if (key == "multipliers") {
                cfg.strength_multipliers.clear();
                for (const std::string& m : split(val, ','))
                    if (!trim(m).empty()) cfg.strength_multipliers.push_back(parse_double(trim(m)));
            } else if (key == "tv_mode") {
                cfg.tv_mode = tv_mode_from_name(val);
            } else if (key == "pseudocount") {
                cfg.pseudocount = parse_double(val);
            } else if (key == "extension_cap") {
                cfg.extension_cap = std::stoi(val);
            } else if (key == "tv_tolerance") {
                cfg.tv_tolerance = parse_double(val);
            } else if (key == "policy") {
                cfg.policy = detail::parse_policy_spec(val);
            } else if (key == "generator") {
                if (!generators_replaced) cfg.generators.clear();
                generators_replaced = true;
                cfg.generators.push_back(detail::parse_generator_spec(val));
            } else if (key == "lookalike") {
                cfg.lookalike = detail::parse_lookalike_spec(val, cfg.lookalike);
            } else if (key == "dataset") {
                cfg.dataset_path = val;
            } else if (key == "truth_net") {
                cfg.truth_net_path = val;
            } else {
                throw std::runtime_error("unknown key '" + key + "'");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_recipe) throw std::runtime_error("config document: missing 'recipe'");
    return cfg;
}

}  // namespace causeval
