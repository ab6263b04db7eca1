#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "graph.hpp"
#include "network.hpp"
#include "tv.hpp"

namespace causeval {

// Result of a structural metric; per_pair_detail maps ordered (treatment,
// outcome) pairs to true when the pair counts as mis-estimated (SID only).
struct MetricResult {
    double value = 0.0;
    std::map<std::pair<std::string, std::string>, bool> per_pair_detail;
};

namespace detail {

enum class PairStatus { none, forward, backward, undirected };

inline void require_same_vertex_set(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b, const char* what) {
    std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    if (sa == sb) return;
    std::string diff;
    for (const std::string& v : sa)
        if (!sb.count(v)) diff += (diff.empty() ? "" : ", ") + v;
    for (const std::string& v : sb)
        if (!sa.count(v)) diff += (diff.empty() ? "" : ", ") + v;
    throw std::invalid_argument(std::string(what) + ": vertex sets differ (symmetric difference: " +
                                diff + ")");
}

inline PairStatus pair_status(const Dag& g, const std::string& a, const std::string& b) {
    if (g.has_edge(a, b)) return PairStatus::forward;
    if (g.has_edge(b, a)) return PairStatus::backward;
    return PairStatus::none;
}

inline PairStatus pair_status(const Cpdag& g, const std::string& a, const std::string& b) {
    if (g.has_directed(a, b)) return PairStatus::forward;
    if (g.has_directed(b, a)) return PairStatus::backward;
    if (g.has_undirected(a, b)) return PairStatus::undirected;
    return PairStatus::none;
}

template <class G, class H>
inline MetricResult shd_impl(const G& g, const H& h) {
    require_same_vertex_set(g.vertex_names(), h.vertex_names(), "shd");
    std::vector<std::string> names = g.vertex_names();
    std::sort(names.begin(), names.end());
    MetricResult r;
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (pair_status(g, names[i], names[j]) != pair_status(h, names[i], names[j]))
                r.value += 1.0;
    return r;
}

}  // namespace detail

// Structural Hamming distance: number of vertex pairs whose edge status
// (absent, either direction, undirected) differs; a reversal costs 1.
inline MetricResult shd(const Dag& g, const Dag& h) { return detail::shd_impl(g, h); }
inline MetricResult shd(const Dag& g, const Cpdag& h) { return detail::shd_impl(g, h); }
inline MetricResult shd(const Cpdag& g, const Dag& h) { return detail::shd_impl(g, h); }
inline MetricResult shd(const Cpdag& g, const Cpdag& h) { return detail::shd_impl(g, h); }

namespace detail {

inline bool valid_adjustment_indices(const Dag& g, int t, int o, const std::vector<int>& z_sorted,
                                     const std::vector<int>& desc_t) {
    for (int v : z_sorted)
        if (std::binary_search(desc_t.begin(), desc_t.end(), v)) return false;
    return g.d_separated(t, o, z_sorted, t);
}

}  // namespace detail

// Generalized back-door test: z is a valid adjustment set for the effect of
// t on o in g iff z contains no descendant of t and z d-separates t from o
// once all edges out of t are removed.
inline bool is_valid_adjustment(const Dag& g, const std::string& t, const std::string& o,
                                const VertexSet& z) {
    if (t == o) throw std::invalid_argument("is_valid_adjustment: treatment equals outcome");
    if (z.count(t) || z.count(o))
        throw std::invalid_argument("is_valid_adjustment: adjustment set contains treatment or outcome");
    const int ti = g.index_of(t);
    const int oi = g.index_of(o);
    std::vector<int> zi;
    for (const std::string& v : z) zi.push_back(g.index_of(v));
    std::sort(zi.begin(), zi.end());
    return detail::valid_adjustment_indices(g, ti, oi, zi, g.descendants(ti));
}

// Structural intervention distance: the number of ordered pairs (t, o) whose
// interventional distribution h's parent adjustment gets wrong. With z =
// PA_h(t): when o is in z the pair fails iff o is a true descendant of t;
// otherwise it fails iff z is not a valid adjustment set in g. When
// `penalized` is set, max(0, |E(h)| - |E(g)|) is added to the value.
inline MetricResult sid(const Dag& g, const Dag& h, bool penalized = false) {
    detail::require_same_vertex_set(g.vertex_names(), h.vertex_names(), "sid");
    const int n = g.vertex_count();
    MetricResult r;
    for (int t = 0; t < n; ++t) {
        const std::string& tname = g.name_of(t);
        const std::vector<int> desc_t = g.descendants(t);
        // h's parent set of t, translated to g's vertex indices.
        std::vector<int> z;
        for (int p : h.parents(h.index_of(tname))) z.push_back(g.index_of(h.name_of(p)));
        std::sort(z.begin(), z.end());
        for (int o = 0; o < n; ++o) {
            if (o == t) continue;
            bool failed;
            if (std::binary_search(z.begin(), z.end(), o)) {
                failed = std::binary_search(desc_t.begin(), desc_t.end(), o);
            } else {
                failed = !detail::valid_adjustment_indices(g, t, o, z, desc_t);
            }
            r.per_pair_detail[{tname, g.name_of(o)}] = failed;
            if (failed) r.value += 1.0;
        }
    }
    if (penalized)
        r.value += std::max(0, static_cast<int>(h.edge_count()) - static_cast<int>(g.edge_count()));
    return r;
}

enum class StructMetric { shd, sid, tv };

inline StructMetric struct_metric_from_name(const std::string& s) {
    if (s == "shd") return StructMetric::shd;
    if (s == "sid") return StructMetric::sid;
    if (s == "tv") return StructMetric::tv;
    throw std::invalid_argument("unknown metric '" + s + "'");
}

// Everything the tv metric needs to score one extension: the reference
// parameterized network, the dataset to fit extension parameters on, and the
// evaluation conventions.
struct TvContext {
    const Network* reference = nullptr;
    const Dataset* data = nullptr;
    InterventionPolicy policy;
    TvMode mode = TvMode::marginal;
    double pseudocount = 1.0;
    double tol = 1e-6;
    const std::vector<std::pair<std::string, std::string>>* pairs = nullptr;
};

// Mean of a metric over the (possibly sampled) consistent extensions of c.
inline MetricResult metric_on_cpdag(const Dag& g, const Cpdag& c, StructMetric metric, int cap = 100,
                                    std::uint64_t seed = 0, const TvContext* tv = nullptr) {
    const std::vector<Dag> exts = enumerate_extensions(c, cap, seed);
    if (exts.empty()) throw std::logic_error("metric_on_cpdag: no extensions");
    MetricResult r;
    for (const Dag& ext : exts) {
        switch (metric) {
            case StructMetric::shd:
                r.value += shd(g, ext).value;
                break;
            case StructMetric::sid:
                r.value += sid(g, ext).value;
                break;
            case StructMetric::tv: {
                if (!tv || !tv->reference || !tv->data)
                    throw std::invalid_argument("metric_on_cpdag: tv metric needs a TvContext");
                if (std::holds_alternative<DiscreteNetwork>(*tv->reference)) {
                    const auto& ref = std::get<DiscreteNetwork>(*tv->reference);
                    const DiscreteNetwork fit = fit_mle_discrete(ext, *tv->data, tv->pseudocount);
                    r.value += tv_dag(ref, fit, tv->policy, tv->mode, tv->pairs, tv->tol);
                } else {
                    const auto& ref = std::get<GaussianNetwork>(*tv->reference);
                    const GaussianNetwork fit = fit_mle_gaussian(ext, *tv->data);
                    r.value += tv_dag(ref, fit, tv->policy, tv->mode, tv->pairs, tv->tol);
                }
                break;
            }
        }
    }
    r.value /= static_cast<double>(exts.size());
    return r;
}

}  // namespace causeval
