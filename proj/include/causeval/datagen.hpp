#pragma once
// Synthetic causal systems: random DAG generation, the three generative
// families (linear-Gaussian, Dirichlet-multinomial, logistic), ancestral and
// factorial sampling, logistic treatment biasing, and structure mutations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "causeval/dataset.hpp"
#include "causeval/graph.hpp"
#include "causeval/network.hpp"
#include "causeval/rng.hpp"
#include "causeval/stats.hpp"

namespace causeval {

enum class Family { linear_gaussian, dirichlet, logistic };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::linear_gaussian: return "linear-gaussian";
        case Family::dirichlet: return "dirichlet";
        case Family::logistic: return "logistic";
    }
    throw std::logic_error("family_name: bad enum");
}

inline Family family_from_name(const std::string& s) {
    if (s == "linear-gaussian") return Family::linear_gaussian;
    if (s == "dirichlet") return Family::dirichlet;
    if (s == "logistic") return Family::logistic;
    throw std::invalid_argument("unknown family '" + s +
                                "' (expected linear-gaussian, dirichlet, or logistic)");
}

// Knobs for one synthetic system. strength_multiplier scales dependence on a
// single axis across families: linear-Gaussian weights and the logistic delta
// are multiplied by it, while the Dirichlet equivalent sample size is divided
// by it (smaller S concentrates rows, i.e. stronger dependence).
struct GenConfig {
    int n_vertices = 10;
    double expected_neighborhood = 2.0;
    Family family = Family::linear_gaussian;
    double weight_lo = 0.1;
    double weight_hi = 1.0;
    double equivalent_sample_size = 10.0;
    int arity = 3;
    double delta = 0.375;
    double strength_multiplier = 1.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_vertices < 2)
            throw std::invalid_argument("GenConfig: n_vertices must be at least 2");
        if (!(expected_neighborhood > 0.0) ||
            expected_neighborhood > static_cast<double>(n_vertices - 1))
            throw std::invalid_argument(
                "GenConfig: expected_neighborhood must lie in (0, n_vertices - 1]");
        if (!(weight_lo > 0.0) || !(weight_hi >= weight_lo))
            throw std::invalid_argument("GenConfig: weight interval must satisfy 0 < lo <= hi");
        if (!(equivalent_sample_size > 0.0))
            throw std::invalid_argument("GenConfig: equivalent_sample_size must be positive");
        if (arity < 2)
            throw std::invalid_argument("GenConfig: arity must be at least 2");
        if (!(delta > 0.0))
            throw std::invalid_argument("GenConfig: delta must be positive");
        if (!(strength_multiplier > 0.0))
            throw std::invalid_argument("GenConfig: strength_multiplier must be positive");
    }
};

// Draws a uniformly random vertex order, then includes each of the n(n-1)/2
// order-respecting edges independently with probability
// expected_neighborhood / (n - 1), so every vertex's expected total degree is
// expected_neighborhood. Vertices are named V1..Vn in declaration order; the
// random order only dictates edge directions.
inline Dag random_dag(int n, double expected_neighborhood, std::uint64_t seed) {
    if (n < 2)
        throw std::invalid_argument("random_dag: need at least 2 vertices");
    if (!(expected_neighborhood > 0.0) ||
        expected_neighborhood > static_cast<double>(n - 1))
        throw std::invalid_argument("random_dag: expected_neighborhood must lie in (0, n - 1]");
    Rng rng(seed);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    const double p = expected_neighborhood / static_cast<double>(n - 1);
    Dag g;
    for (int v = 1; v <= n; ++v) g.add_vertex("V" + std::to_string(v));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p))
                g.add_edge(order[static_cast<std::size_t>(i)],
                           order[static_cast<std::size_t>(j)]);
    return g;
}

namespace detail {

inline void check_cpt_budget(const Dag& g, int v, int k, const char* who) {
    std::size_t rows = 1;
    for (int u : g.parents(v)) {
        (void)u;
        if (rows > kMaxTableCells / static_cast<std::size_t>(k) / static_cast<std::size_t>(k))
            throw std::runtime_error(std::string(who) + ": CPT for vertex '" +
                                     g.vertex_names()[static_cast<std::size_t>(v)] +
                                     "' exceeds the table cell limit");
        rows *= static_cast<std::size_t>(k);
    }
}

inline int draw_categorical(Rng& rng, const std::vector<double>& cpt, std::size_t row, int k) {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (int s = 0; s < k; ++s) {
        cum += cpt[row * static_cast<std::size_t>(k) + static_cast<std::size_t>(s)];
        if (u < cum) return s;
    }
    return k - 1;
}

}  // namespace detail

// Edge weights ~ Uniform(weight_interval) * strength_multiplier, intercepts 0,
// noise variance 1. Weights are positive by default; random_sign flips each
// weight's sign with probability 1/2. Weights are drawn per (child, parent)
// pair, children ascending and parents in declaration order.
inline GaussianNetwork gen_linear_gaussian(const Dag& dag,
                                           std::pair<double, double> weight_interval = {0.1, 1.0},
                                           double strength_multiplier = 1.0,
                                           std::uint64_t seed = 0, bool random_sign = false) {
    const auto [lo, hi] = weight_interval;
    if (!(lo > 0.0) || !(hi >= lo))
        throw std::invalid_argument("gen_linear_gaussian: weight interval must satisfy 0 < lo <= hi");
    if (!(strength_multiplier > 0.0))
        throw std::invalid_argument("gen_linear_gaussian: strength_multiplier must be positive");
    Rng rng(seed);
    const int n = dag.vertex_count();
    std::vector<std::vector<double>> weights(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        for (int u : dag.parents(v)) {
            (void)u;
            double w = rng.uniform_real(lo, hi) * strength_multiplier;
            if (random_sign && rng.bernoulli(0.5)) w = -w;
            weights[static_cast<std::size_t>(v)].push_back(w);
        }
    }
    return GaussianNetwork(dag, std::move(weights),
                           std::vector<double>(static_cast<std::size_t>(n), 0.0),
                           std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

// Every vertex gets arity k. With mu = (1/1, 1/2, ..., 1/k) and
// alpha = 1 / sum(mu), the CPT row for parent assignment number a (1..A,
// row-major over parents in declaration order, last parent fastest) is drawn
// from Dirichlet(S * alpha * mu_a), where mu_a is mu rotated right by a
// positions: mu_1 = (1/k, 1/1, ..., 1/(k-1)). A parentless vertex has the
// single row a = 1.
inline DiscreteNetwork gen_dirichlet(const Dag& dag, int k, double equivalent_sample_size = 10.0,
                                     std::uint64_t seed = 0) {
    if (k < 2)
        throw std::invalid_argument("gen_dirichlet: arity must be at least 2");
    if (!(equivalent_sample_size > 0.0))
        throw std::invalid_argument("gen_dirichlet: equivalent sample size must be positive");
    Rng rng(seed);
    const int n = dag.vertex_count();
    std::vector<double> mu(static_cast<std::size_t>(k));
    for (int s = 0; s < k; ++s) mu[static_cast<std::size_t>(s)] = 1.0 / (s + 1);
    const double alpha = 1.0 / std::accumulate(mu.begin(), mu.end(), 0.0);
    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    std::vector<double> conc(static_cast<std::size_t>(k));
    for (int v = 0; v < n; ++v) {
        detail::check_cpt_budget(dag, v, k, "gen_dirichlet");
        std::size_t rows = 1;
        for (int u : dag.parents(v)) {
            (void)u;
            rows *= static_cast<std::size_t>(k);
        }
        auto& cpt = cpts[static_cast<std::size_t>(v)];
        cpt.reserve(rows * static_cast<std::size_t>(k));
        for (std::size_t a = 1; a <= rows; ++a) {
            for (int s = 0; s < k; ++s) {
                const std::size_t src = (static_cast<std::size_t>(s) + rows * static_cast<std::size_t>(k) - a) %
                                        static_cast<std::size_t>(k);
                conc[static_cast<std::size_t>(s)] = equivalent_sample_size * alpha * mu[src];
            }
            const auto row = rng.dirichlet(conc);
            cpt.insert(cpt.end(), row.begin(), row.end());
        }
    }
    return DiscreteNetwork(dag, std::vector<int>(static_cast<std::size_t>(n), k), std::move(cpts));
}

// Binary network with one weight per vertex drawn uniformly from
// {+delta, -delta} (a vertex's weight is shared across all of its children).
// For parent assignment x over PA(v), P(v=1 | x) = logistic(sum_j x_j * W_j),
// materialized as explicit CPT rows. Parentless vertices get P(1) = 1/2.
inline DiscreteNetwork gen_logistic(const Dag& dag, double delta = 0.375, std::uint64_t seed = 0) {
    if (!(delta > 0.0))
        throw std::invalid_argument("gen_logistic: delta must be positive");
    Rng rng(seed);
    const int n = dag.vertex_count();
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) w[static_cast<std::size_t>(v)] = rng.bernoulli(0.5) ? delta : -delta;
    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        detail::check_cpt_budget(dag, v, 2, "gen_logistic");
        const auto& pa = dag.parents(v);
        const int np = static_cast<int>(pa.size());
        const std::size_t rows = std::size_t{1} << np;
        auto& cpt = cpts[static_cast<std::size_t>(v)];
        cpt.reserve(rows * 2);
        for (std::size_t r = 0; r < rows; ++r) {
            double z = 0.0;
            for (int m = 0; m < np; ++m)
                if ((r >> (np - 1 - m)) & 1) z += w[static_cast<std::size_t>(pa[static_cast<std::size_t>(m)])];
            const double p1 = logistic(z);
            cpt.push_back(1.0 - p1);
            cpt.push_back(p1);
        }
    }
    return DiscreteNetwork(dag, std::vector<int>(static_cast<std::size_t>(n), 2), std::move(cpts));
}

// Builds the configured random system: random_dag(n, E[N]) parameterized by
// the configured family with the strength multiplier applied as documented on
// GenConfig. Structure and parameters use seeds derived from cfg.seed.
inline Network generate_network(const GenConfig& cfg) {
    cfg.validate();
    const Dag g = random_dag(cfg.n_vertices, cfg.expected_neighborhood, derive_seed(cfg.seed, {1}));
    const std::uint64_t pseed = derive_seed(cfg.seed, {2});
    switch (cfg.family) {
        case Family::linear_gaussian:
            return gen_linear_gaussian(g, {cfg.weight_lo, cfg.weight_hi}, cfg.strength_multiplier,
                                       pseed);
        case Family::dirichlet:
            return gen_dirichlet(g, cfg.arity, cfg.equivalent_sample_size / cfg.strength_multiplier,
                                 pseed);
        case Family::logistic:
            return gen_logistic(g, cfg.delta * cfg.strength_multiplier, pseed);
    }
    throw std::logic_error("generate_network: bad family");
}

// n independent joint draws by ancestral sampling in topological order; rows
// are generated one at a time, so a fixed seed fixes the dataset exactly.
// Columns follow vertex declaration order and default to the covariate role.
inline Dataset sample(const DiscreteNetwork& net, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample: need at least one row");
    const Dag& g = net.dag();
    const int nv = g.vertex_count();
    Dataset data;
    for (int v = 0; v < nv; ++v)
        data.add_discrete_column(g.vertex_names()[static_cast<std::size_t>(v)], net.arity(v),
                                 Role::covariate);
    const auto topo = g.topological_order();
    Rng rng(seed);
    std::vector<int> x(static_cast<std::size_t>(nv), 0);
    std::vector<double> row(static_cast<std::size_t>(nv));
    for (int i = 0; i < n; ++i) {
        for (int v : topo)
            x[static_cast<std::size_t>(v)] =
                detail::draw_categorical(rng, net.cpt(v), net.row_of(v, x), net.arity(v));
        for (int v = 0; v < nv; ++v)
            row[static_cast<std::size_t>(v)] = x[static_cast<std::size_t>(v)];
        data.append_row(row);
    }
    return data;
}

inline Dataset sample(const GaussianNetwork& net, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample: need at least one row");
    const Dag& g = net.dag();
    const int nv = g.vertex_count();
    Dataset data;
    for (int v = 0; v < nv; ++v)
        data.add_continuous_column(g.vertex_names()[static_cast<std::size_t>(v)], Role::covariate);
    const auto topo = g.topological_order();
    Rng rng(seed);
    std::vector<double> x(static_cast<std::size_t>(nv), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int v : topo) {
            const auto& pa = g.parents(v);
            const auto& w = net.weights(v);
            double mean = net.intercept(v);
            for (std::size_t m = 0; m < pa.size(); ++m)
                mean += w[m] * x[static_cast<std::size_t>(pa[m])];
            x[static_cast<std::size_t>(v)] = rng.normal(mean, std::sqrt(net.noise_variance(v)));
        }
        data.append_row(x);
    }
    return data;
}

inline Dataset sample(const Network& net, int n, std::uint64_t seed) {
    return std::visit([&](const auto& m) { return sample(m, n, seed); }, net);
}

namespace detail {

// Factorial design: every subject draws its covariates (non-descendants of
// all treatments) once, then contributes one row per joint treatment
// assignment, resampling treatment descendants under each assignment.
// Treatment assignment c in 0..2^k-1 sets treatment m to bit (k-1-m) of c,
// so the first listed treatment varies slowest.
template <class Net>
Dataset factorial_impl(const Net& net, int subjects, const std::vector<std::string>& treatments,
                       std::uint64_t seed) {
    constexpr bool discrete = std::is_same_v<Net, DiscreteNetwork>;
    if (subjects < 1)
        throw std::invalid_argument("factorial_dataset: need at least one subject");
    const int k = static_cast<int>(treatments.size());
    if (k > 20)
        throw std::runtime_error("factorial_dataset: " + std::to_string(k) +
                                 " treatments need 2^" + std::to_string(k) +
                                 " rows per subject; the limit is 20");
    const Dag& g = net.dag();
    const int nv = g.vertex_count();
    std::vector<int> tidx;
    for (const auto& name : treatments) {
        const int t = g.index_of(name);
        if (std::find(tidx.begin(), tidx.end(), t) != tidx.end())
            throw std::invalid_argument("factorial_dataset: duplicate treatment '" + name + "'");
        if (!g.parents(t).empty())
            throw std::invalid_argument("factorial_dataset: treatment '" + name +
                                        "' must be a root vertex");
        if constexpr (discrete) {
            if (net.arity(t) != 2)
                throw std::invalid_argument("factorial_dataset: treatment '" + name +
                                            "' must be binary");
        }
        tidx.push_back(t);
    }
    std::vector<char> is_treatment(static_cast<std::size_t>(nv), 0);
    std::vector<char> is_downstream(static_cast<std::size_t>(nv), 0);
    for (int t : tidx) is_treatment[static_cast<std::size_t>(t)] = 1;
    for (int t : tidx)
        for (int d : g.descendants(t)) is_downstream[static_cast<std::size_t>(d)] = 1;

    Dataset data;
    data.add_discrete_column("id", std::max(subjects, 2), Role::id);
    for (int v = 0; v < nv; ++v) {
        const std::string& name = g.vertex_names()[static_cast<std::size_t>(v)];
        const Role role = is_downstream[static_cast<std::size_t>(v)] ? Role::outcome : Role::covariate;
        if (is_treatment[static_cast<std::size_t>(v)])
            data.add_discrete_column(name, 2, Role::treatment);
        else if constexpr (discrete)
            data.add_discrete_column(name, net.arity(v), role);
        else
            data.add_continuous_column(name, role);
    }

    const auto topo = g.topological_order();
    Rng rng(seed);
    std::vector<int> xi(static_cast<std::size_t>(nv), 0);
    std::vector<double> xd(static_cast<std::size_t>(nv), 0.0);
    const auto draw = [&](int v) {
        if constexpr (discrete) {
            xi[static_cast<std::size_t>(v)] =
                draw_categorical(rng, net.cpt(v), net.row_of(v, xi), net.arity(v));
            xd[static_cast<std::size_t>(v)] = xi[static_cast<std::size_t>(v)];
        } else {
            const auto& pa = g.parents(v);
            const auto& w = net.weights(v);
            double mean = net.intercept(v);
            for (std::size_t m = 0; m < pa.size(); ++m)
                mean += w[m] * xd[static_cast<std::size_t>(pa[m])];
            xd[static_cast<std::size_t>(v)] = rng.normal(mean, std::sqrt(net.noise_variance(v)));
        }
    };
    const std::size_t combos = std::size_t{1} << k;
    std::vector<double> row(static_cast<std::size_t>(nv) + 1);
    for (int e = 0; e < subjects; ++e) {
        for (int v : topo)
            if (!is_treatment[static_cast<std::size_t>(v)] && !is_downstream[static_cast<std::size_t>(v)])
                draw(v);
        for (std::size_t c = 0; c < combos; ++c) {
            for (int m = 0; m < k; ++m) {
                const int bit = static_cast<int>((c >> (k - 1 - m)) & 1);
                xi[static_cast<std::size_t>(tidx[static_cast<std::size_t>(m)])] = bit;
                xd[static_cast<std::size_t>(tidx[static_cast<std::size_t>(m)])] = bit;
            }
            for (int v : topo)
                if (is_downstream[static_cast<std::size_t>(v)]) draw(v);
            row[0] = e;
            for (int v = 0; v < nv; ++v)
                row[static_cast<std::size_t>(v) + 1] = xd[static_cast<std::size_t>(v)];
            data.append_row(row);
        }
    }
    return data;
}

}  // namespace detail

// Interventional dataset of subjects * 2^k rows: an id column plus one column
// per vertex, treatments flagged with the treatment role and descendants of
// any treatment with the outcome role. Treatments must be root vertices
// (binary for discrete networks; set to 0/1 for Gaussian ones, stored as
// binary discrete columns either way).
inline Dataset factorial_dataset(const DiscreteNetwork& net, int subjects,
                                 const std::vector<std::string>& treatments, std::uint64_t seed) {
    return detail::factorial_impl(net, subjects, treatments, seed);
}

inline Dataset factorial_dataset(const GaussianNetwork& net, int subjects,
                                 const std::vector<std::string>& treatments, std::uint64_t seed) {
    return detail::factorial_impl(net, subjects, treatments, seed);
}

inline Dataset factorial_dataset(const Network& net, int subjects,
                                 const std::vector<std::string>& treatments, std::uint64_t seed) {
    return std::visit([&](const auto& m) { return factorial_dataset(m, subjects, treatments, seed); },
                      net);
}

// Logistic sampling of passive treatments. For subject e with biasing value
// C_e and treatment number j (1..k, in column order): s_ej = +1 if C_e * j is
// even, else -1; treatment j is set to 1 with probability logistic(s_ej *
// beta), and the subject's unique factorial row matching the sampled joint
// assignment is emitted. Output has exactly one row per subject, subjects in
// order of first appearance.
inline Dataset bias_sample(const Dataset& interventional, double beta,
                           const std::string& biasing_column, std::uint64_t seed) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("bias_sample: beta must be non-negative and finite");
    const auto ids = interventional.columns_with_role(Role::id);
    if (ids.size() != 1)
        throw std::invalid_argument("bias_sample: dataset needs exactly one id column");
    const int idc = ids.front();
    const auto tcols = interventional.columns_with_role(Role::treatment);
    for (int tc : tcols) {
        const auto& col = interventional.column(tc);
        if (col.type != ColType::discrete || col.arity != 2)
            throw std::invalid_argument("bias_sample: treatment column '" + col.name +
                                        "' must be binary discrete");
    }
    const int cc = interventional.index_of(biasing_column);
    if (interventional.column(cc).type != ColType::discrete)
        throw std::invalid_argument("bias_sample: biasing column '" + biasing_column +
                                    "' must be discrete");

    std::vector<int> subject_order;
    std::map<int, std::vector<std::size_t>> rows_of;
    for (std::size_t r = 0; r < interventional.row_count(); ++r) {
        const int id = interventional.int_at(idc, r);
        auto [it, fresh] = rows_of.try_emplace(id);
        if (fresh) subject_order.push_back(id);
        it->second.push_back(r);
    }

    Dataset out;
    for (int ci = 0; ci < interventional.column_count(); ++ci) {
        const auto& col = interventional.column(ci);
        if (col.type == ColType::discrete)
            out.add_discrete_column(col.name, col.arity, col.role);
        else
            out.add_continuous_column(col.name, col.role);
    }

    Rng rng(seed);
    const int k = static_cast<int>(tcols.size());
    std::vector<int> want(static_cast<std::size_t>(k));
    std::vector<double> row(static_cast<std::size_t>(interventional.column_count()));
    for (int id : subject_order) {
        const auto& rows = rows_of[id];
        const int ce = interventional.int_at(cc, rows.front());
        if (ce < 1)
            throw std::runtime_error("bias_sample: biasing column '" + biasing_column +
                                     "' must be coded 1..l; id " + std::to_string(id) + " has " +
                                     std::to_string(ce));
        for (std::size_t r : rows)
            if (interventional.int_at(cc, r) != ce)
                throw std::runtime_error("bias_sample: biasing column '" + biasing_column +
                                         "' varies within id " + std::to_string(id));
        for (int j = 1; j <= k; ++j) {
            const int s = (static_cast<long long>(ce) * j) % 2 == 0 ? 1 : -1;
            want[static_cast<std::size_t>(j - 1)] = rng.bernoulli(logistic(s * beta)) ? 1 : 0;
        }
        std::size_t hit = 0;
        int matches = 0;
        for (std::size_t r : rows) {
            bool match = true;
            for (int j = 0; j < k; ++j)
                if (interventional.int_at(tcols[static_cast<std::size_t>(j)], r) !=
                    want[static_cast<std::size_t>(j)]) {
                    match = false;
                    break;
                }
            if (match) {
                hit = r;
                ++matches;
            }
        }
        if (matches == 0)
            throw std::runtime_error("bias_sample: id " + std::to_string(id) +
                                     " has no row for the sampled treatment assignment; the "
                                     "factorial design is incomplete");
        if (matches > 1)
            throw std::runtime_error("bias_sample: id " + std::to_string(id) + " has " +
                                     std::to_string(matches) +
                                     " rows for the sampled treatment assignment");
        for (int ci = 0; ci < interventional.column_count(); ++ci)
            row[static_cast<std::size_t>(ci)] = interventional.real_at(ci, hit);
        out.append_row(row);
    }
    return out;
}

// Adds a directed edge from t to every listed outcome that is not already a
// child of t. Errors if any addition would create a cycle.
inline Dag mutate_overspecify(const Dag& g, const std::string& t, const VertexSet& outcomes) {
    Dag out = g;
    const int ti = g.index_of(t);
    for (const auto& name : outcomes) {
        const int o = out.index_of(name);
        if (!out.has_edge(ti, o)) out.add_edge(ti, o);
    }
    return out;
}

// Removes every edge out of t; idempotent.
inline Dag mutate_underspecify(const Dag& g, const std::string& t) {
    const int ti = g.index_of(t);
    Dag out;
    for (const auto& name : g.vertex_names()) out.add_vertex(name);
    for (const auto& [a, b] : g.edges())
        if (a != ti) out.add_edge(a, b);
    return out;
}

// Shape of a synthetic configuration sized to match one of the three real
// factorial studies: a compiler toolchain (J), a database server (P), and a
// web protocol (H). Subject and treatment counts follow the study designs;
// outcome, covariate, biasing-level, and beta defaults are configurable
// conventions. `covariates` counts subject covariates other than the biasing
// covariate, which is always present with values coded 1..biasing_levels.
struct LookalikeConfig {
    std::string domain;
    int subjects = 0;
    int treatments = 0;
    int outcomes = 0;
    int covariates = 0;
    int biasing_levels = 2;
    double beta = 1.0;
};

inline LookalikeConfig lookalike_config(const std::string& domain) {
    if (domain == "J") return {"J", 473, 4, 4, 4, 2, 1.0};
    if (domain == "P") return {"P", 5000, 3, 4, 4, 2, 1.0};
    if (domain == "H") return {"H", 2599, 3, 5, 0, 2, 1.0};
    throw std::invalid_argument("lookalike_config: unknown domain '" + domain +
                                "' (expected J, P, or H)");
}

}  // namespace causeval
