#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "network.hpp"
#include "stats.hpp"

namespace causeval {

enum class TvMode { marginal, parents_at_mean };

inline TvMode tv_mode_from_name(const std::string& s) {
    if (s == "marginal") return TvMode::marginal;
    if (s == "parents-at-mean") return TvMode::parents_at_mean;
    throw std::invalid_argument("unknown tv mode '" + s + "'");
}

inline std::string tv_mode_name(TvMode m) {
    return m == TvMode::marginal ? "marginal" : "parents-at-mean";
}

// Total variation between two categorical distributions on the same support.
inline double tv_categorical(const Categorical& p, const Categorical& q) {
    if (p.probs.size() != q.probs.size())
        throw std::invalid_argument("tv_categorical: support mismatch (" +
                                    std::to_string(p.probs.size()) + " vs " +
                                    std::to_string(q.probs.size()) + " states)");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) sum += std::fabs(p.probs[i] - q.probs[i]);
    return std::min(0.5 * sum, 1.0);
}

namespace detail {

inline double mixture_pdf(const GaussianMixture& m, double x) {
    double d = 0.0;
    for (const GaussianComponent& c : m.components)
        d += c.weight * normal_pdf(x, c.mean, std::sqrt(c.variance));
    return d;
}

inline void check_mixture(const GaussianMixture& m) {
    if (m.components.empty()) throw std::invalid_argument("tv_continuous: empty mixture");
    double total = 0.0;
    for (const GaussianComponent& c : m.components) {
        if (!std::isfinite(c.mean) || !std::isfinite(c.variance) || !std::isfinite(c.weight))
            throw std::invalid_argument("tv_continuous: non-finite mixture parameter");
        if (c.weight < 0.0) throw std::invalid_argument("tv_continuous: negative mixture weight");
        if (c.weight > 0.0 && c.variance <= 0.0)
            throw std::invalid_argument("tv_continuous: non-positive component variance");
        total += c.weight;
    }
    if (std::fabs(total - 1.0) > 1e-9)
        throw std::invalid_argument("tv_continuous: mixture weights sum to " + format_double(total));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double eps,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

// Total variation ½∫|p - q| between Gaussian mixtures by adaptive quadrature
// over a window covering ±10 standard deviations of every component, split at
// component means so no mass hides between quadrature points.
inline double tv_continuous(const GaussianMixture& p, const GaussianMixture& q, double tol = 1e-6) {
    if (!(tol > 0.0)) throw std::invalid_argument("tv_continuous: tol must be positive");
    detail::check_mixture(p);
    detail::check_mixture(q);
    std::vector<double> knots;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const GaussianMixture* m : {&p, &q}) {
        for (const GaussianComponent& c : m->components) {
            if (c.weight == 0.0) continue;
            const double sd = std::sqrt(c.variance);
            lo = std::min(lo, c.mean - 10.0 * sd);
            hi = std::max(hi, c.mean + 10.0 * sd);
            knots.push_back(c.mean);
        }
    }
    knots.push_back(lo);
    knots.push_back(hi);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    const std::function<double(double)> f = [&](double x) {
        return std::fabs(detail::mixture_pdf(p, x) - detail::mixture_pdf(q, x));
    };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = knots[i];
        const double b = knots[i + 1];
        if (!(b > a)) continue;
        const double fa = f(a);
        const double fb = f(b);
        const double fm = f(0.5 * (a + b));
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        const double eps = 2.0 * tol * (b - a) / (hi - lo);
        total += detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 52);
    }
    return std::clamp(0.5 * total, 0.0, 1.0);
}

// Dispatch on the variant; both arguments must hold the same kind.
inline double tv_distance(const Distribution& p, const Distribution& q, double tol = 1e-6) {
    if (std::holds_alternative<Categorical>(p) && std::holds_alternative<Categorical>(q))
        return tv_categorical(std::get<Categorical>(p), std::get<Categorical>(q));
    if (std::holds_alternative<GaussianMixture>(p) && std::holds_alternative<GaussianMixture>(q))
        return tv_continuous(std::get<GaussianMixture>(p), std::get<GaussianMixture>(q), tol);
    throw std::invalid_argument("tv_distance: mixed distribution kinds");
}

namespace detail {

inline void check_same_vertices(const Dag& a, const Dag& b, const char* what) {
    if (a.vertex_names() != b.vertex_names())
        throw std::invalid_argument(std::string(what) + ": networks do not share a vertex set");
}

inline int discrete_state_of(double value, int arity, const std::string& name) {
    const int s = static_cast<int>(value);
    if (static_cast<double>(s) != value || s < 0 || s >= arity)
        throw std::invalid_argument("intervention value " + format_double(value) + " invalid for '" +
                                    name + "' with " + std::to_string(arity) + " states");
    return s;
}

// Modal state of the reference model's observational marginal (lowest state
// wins ties).
inline int modal_state(const DiscreteNetwork& ref, int v) {
    const Categorical c = std::get<Categorical>(marginal(ref, v));
    return static_cast<int>(std::max_element(c.probs.begin(), c.probs.end()) - c.probs.begin());
}

inline double mean_of(const GaussianNetwork& ref, int v) {
    return std::get<GaussianMixture>(marginal(ref, v)).components.front().mean;
}

}  // namespace detail

// TV between the two models' distributions of o under do(t = t_value).
// marginal mode compares full interventional marginals; parents-at-mean mode
// compares o's local conditional with every non-intervened parent pinned to
// its reference-model mean (discrete: modal state).
inline double tv_pair(const DiscreteNetwork& ref, const DiscreteNetwork& est, const std::string& t,
                      double t_value, const std::string& o, TvMode mode, double tol = 1e-6) {
    detail::check_same_vertices(ref.dag(), est.dag(), "tv_pair");
    if (t == o) throw std::invalid_argument("tv_pair: treatment and outcome coincide");
    const int tr = ref.dag().index_of(t);
    const int orr = ref.dag().index_of(o);
    const int te = est.dag().index_of(t);
    const int oe = est.dag().index_of(o);
    if (ref.arity(tr) != est.arity(te) || ref.arity(orr) != est.arity(oe))
        throw std::invalid_argument("tv_pair: arity mismatch between networks");
    const int state = detail::discrete_state_of(t_value, ref.arity(tr), t);
    if (mode == TvMode::marginal) {
        const Distribution dp = marginal(intervene(ref, tr, state), orr);
        const Distribution dq = marginal(intervene(est, te, state), oe);
        return tv_categorical(std::get<Categorical>(dp), std::get<Categorical>(dq));
    }
    const auto conditional_row = [&](const DiscreteNetwork& net, int v, int tv) {
        std::vector<int> full(static_cast<std::size_t>(net.vertex_count()), 0);
        for (int p : net.dag().parents(v))
            full[static_cast<std::size_t>(p)] =
                p == tv ? state : detail::modal_state(ref, ref.dag().index_of(net.dag().name_of(p)));
        const std::size_t row = net.row_of(v, full);
        Categorical c;
        c.probs.resize(static_cast<std::size_t>(net.arity(v)));
        for (int s = 0; s < net.arity(v); ++s) c.probs[static_cast<std::size_t>(s)] = net.prob(v, row, s);
        return c;
    };
    return tv_categorical(conditional_row(ref, orr, tr), conditional_row(est, oe, te));
}

inline double tv_pair(const GaussianNetwork& ref, const GaussianNetwork& est, const std::string& t,
                      double t_value, const std::string& o, TvMode mode, double tol = 1e-6) {
    detail::check_same_vertices(ref.dag(), est.dag(), "tv_pair");
    if (t == o) throw std::invalid_argument("tv_pair: treatment and outcome coincide");
    if (!std::isfinite(t_value)) throw std::invalid_argument("tv_pair: non-finite treatment value");
    const int tr = ref.dag().index_of(t);
    const int orr = ref.dag().index_of(o);
    const int te = est.dag().index_of(t);
    const int oe = est.dag().index_of(o);
    if (mode == TvMode::marginal) {
        const Distribution dp = marginal(intervene(ref, tr, t_value), orr);
        const Distribution dq = marginal(intervene(est, te, t_value), oe);
        return tv_continuous(std::get<GaussianMixture>(dp), std::get<GaussianMixture>(dq), tol);
    }
    const auto conditional = [&](const GaussianNetwork& net, int v, int tv) {
        const std::vector<int>& pa = net.dag().parents(v);
        const std::vector<double>& w = net.weights(v);
        double mean = net.intercept(v);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            const double x = pa[i] == tv
                                 ? t_value
                                 : detail::mean_of(ref, ref.dag().index_of(net.dag().name_of(pa[i])));
            mean += w[i] * x;
        }
        GaussianMixture m;
        m.components.push_back({mean, net.noise_variance(v), 1.0});
        return m;
    };
    return tv_continuous(conditional(ref, orr, tr), conditional(est, oe, te), tol);
}

// Sum of tv_pair over ordered (treatment, outcome) pairs, either every pair of
// distinct vertices or an explicit restricted list. Treatment values come
// from the policy applied to the reference model.
template <class Net>
inline double tv_dag(const Net& ref, const Net& est, const InterventionPolicy& policy, TvMode mode,
                     const std::vector<std::pair<std::string, std::string>>* pairs = nullptr,
                     double tol = 1e-6) {
    detail::check_same_vertices(ref.dag(), est.dag(), "tv_dag");
    double total = 0.0;
    if (pairs) {
        for (const auto& [t, o] : *pairs)
            total += tv_pair(ref, est, t, policy.value_for(ref, ref.dag().index_of(t)), o, mode, tol);
        return total;
    }
    const int n = ref.dag().vertex_count();
    for (int t = 0; t < n; ++t) {
        const double value = policy.value_for(ref, t);
        for (int o = 0; o < n; ++o) {
            if (o == t) continue;
            total += tv_pair(ref, est, ref.dag().name_of(t), value, ref.dag().name_of(o), mode, tol);
        }
    }
    return total;
}

}  // namespace causeval
