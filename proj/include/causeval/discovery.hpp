#pragma once
// Structure-learning baselines: conditional-independence tests (G-test and
// Fisher z), the order-independent PC algorithm, and greedy BIC hill-climbing.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "causeval/dataset.hpp"
#include "causeval/graph.hpp"
#include "causeval/network.hpp"
#include "causeval/stats.hpp"

namespace causeval {

// One conditional-independence decision. dof holds the chi-squared degrees
// of freedom for the G-test and the effective sample size n - |z| - 3 for
// the Fisher z test. independent is exactly p_value > alpha.
struct CiTestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    bool independent = true;
    long long dof = 0;
};

enum class CiKind { g_test, fisher_z };

inline std::string ci_kind_name(CiKind k) { return k == CiKind::g_test ? "g-test" : "fisher-z"; }

inline CiKind ci_kind_from_name(const std::string& s) {
    if (s == "g-test") return CiKind::g_test;
    if (s == "fisher-z") return CiKind::fisher_z;
    throw std::invalid_argument("unknown CI test '" + s + "' (expected g-test or fisher-z)");
}

namespace detail {

inline void check_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument(std::string(who) + ": alpha must lie in (0, 1)");
}

inline void require_discrete_col(const Dataset& data, int c, const char* who) {
    if (data.column(c).type != ColType::discrete)
        throw std::invalid_argument(std::string(who) + ": column '" + data.column(c).name +
                                    "' must be discrete");
}

inline void check_ci_args(int x, int y, const std::vector<int>& z, const char* who) {
    if (x == y) throw std::invalid_argument(std::string(who) + ": x and y must differ");
    for (int c : z)
        if (c == x || c == y)
            throw std::invalid_argument(std::string(who) + ": conditioning set contains x or y");
}

// G = 2 sum O ln(O/E) over the (x, y) table within each stratum of z. Strata
// with no rows are skipped, and marginal zero rows/columns are dropped from
// both the statistic and the degrees of freedom, so each stratum contributes
// (rows_present - 1)(cols_present - 1) dof.
inline CiTestResult g_test_cols(const Dataset& data, int x, int y, const std::vector<int>& z,
                                double alpha) {
    check_alpha(alpha, "g_test");
    check_ci_args(x, y, z, "g_test");
    require_discrete_col(data, x, "g_test");
    require_discrete_col(data, y, "g_test");
    for (int c : z) require_discrete_col(data, c, "g_test");
    const std::size_t kx = static_cast<std::size_t>(data.column(x).arity);
    const std::size_t ky = static_cast<std::size_t>(data.column(y).arity);
    std::size_t strata = 1;
    for (int c : z) {
        const std::size_t kc = static_cast<std::size_t>(data.column(c).arity);
        if (strata > kMaxTableCells / kc)
            throw std::runtime_error("g_test: conditioning table too large");
        strata *= kc;
    }
    if (strata > kMaxTableCells / (kx * ky))
        throw std::runtime_error("g_test: conditioning table too large");

    std::vector<long long> counts(strata * kx * ky, 0);
    for (std::size_t r = 0; r < data.row_count(); ++r) {
        std::size_t s = 0;
        for (int c : z)
            s = s * static_cast<std::size_t>(data.column(c).arity) +
                static_cast<std::size_t>(data.int_at(c, r));
        const std::size_t xv = static_cast<std::size_t>(data.int_at(x, r));
        const std::size_t yv = static_cast<std::size_t>(data.int_at(y, r));
        ++counts[(s * kx + xv) * ky + yv];
    }

    double g = 0.0;
    long long dof = 0;
    std::vector<long long> rt(kx), ct(ky);
    for (std::size_t s = 0; s < strata; ++s) {
        const long long* cell = counts.data() + s * kx * ky;
        std::fill(rt.begin(), rt.end(), 0);
        std::fill(ct.begin(), ct.end(), 0);
        long long total = 0;
        for (std::size_t i = 0; i < kx; ++i)
            for (std::size_t j = 0; j < ky; ++j) {
                rt[i] += cell[i * ky + j];
                ct[j] += cell[i * ky + j];
                total += cell[i * ky + j];
            }
        if (total == 0) continue;
        const long long rows_present = std::count_if(rt.begin(), rt.end(), [](long long v) { return v > 0; });
        const long long cols_present = std::count_if(ct.begin(), ct.end(), [](long long v) { return v > 0; });
        if (rows_present < 2 || cols_present < 2) continue;
        dof += (rows_present - 1) * (cols_present - 1);
        for (std::size_t i = 0; i < kx; ++i)
            for (std::size_t j = 0; j < ky; ++j) {
                const long long o = cell[i * ky + j];
                if (o == 0) continue;
                const double e = static_cast<double>(rt[i]) * static_cast<double>(ct[j]) /
                                 static_cast<double>(total);
                g += static_cast<double>(o) * std::log(static_cast<double>(o) / e);
            }
    }
    g *= 2.0;
    const double p = dof > 0 ? chi2_sf(g, static_cast<int>(dof)) : 1.0;
    return {g, p, p > alpha, dof};
}

// Correlation matrix of the listed columns; errors on zero-variance columns.
inline Eigen::MatrixXd correlation_matrix(const Dataset& data, const std::vector<int>& cols,
                                          const char* who) {
    const std::size_t n = data.row_count();
    const Eigen::Index m = static_cast<Eigen::Index>(cols.size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
    for (std::size_t r = 0; r < n; ++r)
        for (Eigen::Index i = 0; i < m; ++i)
            mean(i) += data.real_at(cols[static_cast<std::size_t>(i)], r);
    mean /= static_cast<double>(n);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd d(m);
    for (std::size_t r = 0; r < n; ++r) {
        for (Eigen::Index i = 0; i < m; ++i)
            d(i) = data.real_at(cols[static_cast<std::size_t>(i)], r) - mean(i);
        cov += d * d.transpose();
    }
    for (Eigen::Index i = 0; i < m; ++i)
        if (!(cov(i, i) > 0.0))
            throw std::runtime_error(std::string(who) + ": column '" +
                                     data.column(cols[static_cast<std::size_t>(i)]).name +
                                     "' has zero variance");
    Eigen::MatrixXd r(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            r(i, j) = cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
    return r;
}

// Fisher z test from a correlation matrix over [x, y, z...]: the partial
// correlation of the first two variables given the rest, transformed to
// sqrt(n - |z| - 3) * atanh(r) with a two-sided normal p-value.
inline CiTestResult fisher_z_corr(const Eigen::MatrixXd& corr, std::size_t n, double alpha) {
    check_alpha(alpha, "fisher_z");
    const Eigen::Index m = corr.rows();
    const std::size_t zsize = static_cast<std::size_t>(m) - 2;
    if (n <= zsize + 3)
        throw std::runtime_error("fisher_z: needs more than |z| + 3 rows (n=" + std::to_string(n) +
                                 ", |z|=" + std::to_string(zsize) + ")");
    double r;
    if (m == 2) {
        r = corr(0, 1);
    } else {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(corr);
        if (!lu.isInvertible())
            throw std::runtime_error("fisher_z: singular correlation matrix");
        const Eigen::MatrixXd prec = lu.inverse();
        r = -prec(0, 1) / std::sqrt(prec(0, 0) * prec(1, 1));
    }
    r = std::clamp(r, -1.0, 1.0);
    const long long neff = static_cast<long long>(n - zsize) - 3;
    const double stat = std::sqrt(static_cast<double>(neff)) * std::atanh(r);
    const double p = std::abs(r) >= 1.0 ? 0.0 : 2.0 * normal_sf(std::abs(stat));
    return {stat, p, p > alpha, neff};
}

// Visits k-subsets of `pool` in lexicographic order until fn returns true;
// returns whether any subset was accepted.
template <class Fn>
bool any_subset(const std::vector<int>& pool, int k, Fn&& fn) {
    const int m = static_cast<int>(pool.size());
    if (k > m) return false;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> subset(static_cast<std::size_t>(k));
    while (true) {
        for (int i = 0; i < k; ++i)
            subset[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        if (fn(subset)) return true;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
        if (i < 0) return false;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace detail

// G-test of conditional independence of x and y given z with alpha = 0.05 by
// default. Degenerate strata are dropped as documented on g_test_cols.
inline CiTestResult g_test(const Dataset& data, const std::string& x, const std::string& y,
                           const VertexSet& z, double alpha = 0.05) {
    std::vector<int> zc;
    for (const auto& name : z) zc.push_back(data.index_of(name));
    return detail::g_test_cols(data, data.index_of(x), data.index_of(y), zc, alpha);
}

// Fisher z test of vanishing partial correlation of x and y given z.
inline CiTestResult fisher_z(const Dataset& data, const std::string& x, const std::string& y,
                             const VertexSet& z, double alpha = 0.05) {
    detail::check_alpha(alpha, "fisher_z");
    std::vector<int> cols{data.index_of(x), data.index_of(y)};
    for (const auto& name : z) cols.push_back(data.index_of(name));
    detail::check_ci_args(cols[0], cols[1], {cols.begin() + 2, cols.end()}, "fisher_z");
    if (data.row_count() <= z.size() + 3)
        throw std::runtime_error("fisher_z: needs more than |z| + 3 rows (n=" +
                                 std::to_string(data.row_count()) +
                                 ", |z|=" + std::to_string(z.size()) + ")");
    const Eigen::MatrixXd corr = detail::correlation_matrix(data, cols, "fisher_z");
    return detail::fisher_z_corr(corr, data.row_count(), alpha);
}

// Order-independent PC over an abstract independence callable, exposed so an
// exact d-separation oracle can drive the search. independent(x, y, z) takes
// vertex indices with z ascending. Skeleton removals within a level are
// decided against a snapshot of the previous level's adjacencies and applied
// together in sorted edge order, so the result does not depend on vertex
// order. V-structures x -> c <- y are oriented when c is outside the
// recorded separating set; opposing orientation demands cancel out (the edge
// stays undirected), and Meek rules R1-R3 close the pattern. If sampling
// noise leaves the pattern without a consistent extension, the skeleton is
// re-oriented from scratch: forced edges first, remaining edges in
// declaration order, each skipped if it would close a cycle, and the class
// of the resulting graph is returned.
template <class CiFn>
Cpdag pc_core(const std::vector<std::string>& names, CiFn&& independent, int max_cond_size = 3) {
    if (max_cond_size < 0)
        throw std::invalid_argument("pc_core: max_cond_size must be >= 0");
    const int n = static_cast<int>(names.size());
    std::vector<char> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 1);
    for (int v = 0; v < n; ++v) adj[static_cast<std::size_t>(v) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)] = 0;
    const auto linked = [&](const std::vector<char>& a, int x, int y) {
        return a[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)] != 0;
    };
    std::map<std::pair<int, int>, std::vector<int>> sepset;

    for (int level = 0; level <= max_cond_size; ++level) {
        const std::vector<char> snap = adj;
        std::vector<std::pair<int, int>> removals;
        for (int x = 0; x < n; ++x) {
            for (int y = x + 1; y < n; ++y) {
                if (!linked(snap, x, y)) continue;
                bool separated = false;
                std::vector<int> sep;
                for (int side = 0; side < 2 && !separated; ++side) {
                    if (level == 0 && side == 1) break;  // the empty set tests once
                    const int a = side == 0 ? x : y, b = side == 0 ? y : x;
                    std::vector<int> pool;
                    for (int c = 0; c < n; ++c)
                        if (c != b && linked(snap, a, c)) pool.push_back(c);
                    separated = detail::any_subset(pool, level, [&](const std::vector<int>& s) {
                        if (independent(x, y, s)) {
                            sep = s;
                            return true;
                        }
                        return false;
                    });
                }
                if (separated) {
                    removals.emplace_back(x, y);
                    sepset[{x, y}] = sep;
                }
            }
        }
        for (const auto& [x, y] : removals) {
            adj[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)] = 0;
            adj[static_cast<std::size_t>(y) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x)] = 0;
        }
        bool more = false;
        for (int x = 0; x < n && !more; ++x) {
            int deg = 0;
            for (int y = 0; y < n; ++y) deg += linked(adj, x, y);
            more = deg - 1 >= level + 1;  // some edge can draw a (level+1)-subset
        }
        if (!more) break;
    }

    // V-structure orientation with opposing demands cancelled.
    std::set<std::pair<int, int>> arrows;
    for (const auto& [pair, sep] : sepset) {
        const auto [x, y] = pair;
        for (int c = 0; c < n; ++c) {
            if (c == x || c == y || !linked(adj, x, c) || !linked(adj, y, c)) continue;
            if (!std::binary_search(sep.begin(), sep.end(), c)) {
                arrows.insert({x, c});
                arrows.insert({y, c});
            }
        }
    }
    detail::Pattern pat(n);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (linked(adj, x, y)) pat.set_undirected(x, y);
    for (const auto& [a, b] : arrows)
        if (!arrows.count({b, a})) pat.set_directed(a, b);
    detail::meek_closure(pat);

    std::vector<std::pair<int, int>> directed, undirected;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (pat.directed(a, b)) directed.emplace_back(a, b);
            if (a < b && pat.undirected(a, b)) undirected.emplace_back(a, b);
        }
    try {
        return Cpdag::from_indexed(names, directed, undirected);
    } catch (const std::exception&) {
        Dag repaired;
        for (const std::string& name : names) repaired.add_vertex(name);
        for (const auto& [a, b] : directed) {
            try {
                repaired.add_edge(a, b);
            } catch (const std::invalid_argument&) {
            }
        }
        for (const auto& [a, b] : undirected) {
            try {
                repaired.add_edge(a, b);
            } catch (const std::invalid_argument&) {
                repaired.add_edge(b, a);
            }
        }
        return cpdag_of(repaired);
    }
}

// PC on a dataset: vertices are the non-id columns in declaration order.
inline Cpdag pc(const Dataset& data, CiKind kind, double alpha = 0.05, int max_cond_size = 3) {
    detail::check_alpha(alpha, "pc");
    std::vector<int> cols;
    std::vector<std::string> names;
    for (int c = 0; c < data.column_count(); ++c)
        if (data.column(c).role != Role::id) {
            cols.push_back(c);
            names.push_back(data.column(c).name);
        }
    if (names.empty()) throw std::invalid_argument("pc: dataset has no variable columns");
    std::vector<int> zc;
    if (kind == CiKind::g_test) {
        for (int c : cols) detail::require_discrete_col(data, c, "pc");
        return pc_core(
            names,
            [&](int x, int y, const std::vector<int>& z) {
                zc.clear();
                for (int v : z) zc.push_back(cols[static_cast<std::size_t>(v)]);
                return detail::g_test_cols(data, cols[static_cast<std::size_t>(x)],
                                           cols[static_cast<std::size_t>(y)], zc, alpha)
                    .independent;
            },
            max_cond_size);
    }
    const Eigen::MatrixXd corr = detail::correlation_matrix(data, cols, "fisher_z");
    return pc_core(
        names,
        [&](int x, int y, const std::vector<int>& z) {
            const Eigen::Index m = static_cast<Eigen::Index>(z.size()) + 2;
            Eigen::MatrixXd sub(m, m);
            std::vector<int> pick{x, y};
            for (int v : z) pick.push_back(v);
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j < m; ++j)
                    sub(i, j) = corr(pick[static_cast<std::size_t>(i)], pick[static_cast<std::size_t>(j)]);
            return detail::fisher_z_corr(sub, data.row_count(), alpha).independent;
        },
        max_cond_size);
}

// Decomposable BIC: per-vertex log-likelihood at the MLE minus
// (free parameters / 2) * ln n, free = (k_v - 1) * prod over parents k_p.
struct Score {
    double total = 0.0;
    std::map<std::string, double> per_vertex;
};

namespace detail {

// Local BIC term for column vc with the given parent columns. Counts are
// kept sparsely, so unseen parent configurations add no likelihood terms;
// the penalty always uses the nominal (k_v - 1) * prod k_p parameter count.
inline double bic_local(const Dataset& data, int vc, const std::vector<int>& pcols) {
    require_discrete_col(data, vc, "bic_score");
    for (int p : pcols) require_discrete_col(data, p, "bic_score");
    const std::size_t n = data.row_count();
    const int kv = data.column(vc).arity;
    std::map<std::vector<int>, std::vector<long long>> table;
    std::vector<int> key(pcols.size());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < pcols.size(); ++i) key[i] = data.int_at(pcols[i], r);
        auto& cell = table[key];
        if (cell.empty()) cell.assign(static_cast<std::size_t>(kv), 0);
        ++cell[static_cast<std::size_t>(data.int_at(vc, r))];
    }
    double ll = 0.0;
    for (const auto& [cfg, cnt] : table) {
        (void)cfg;
        const double tot = static_cast<double>(std::accumulate(cnt.begin(), cnt.end(), 0LL));
        for (long long c : cnt)
            if (c > 0) ll += static_cast<double>(c) * std::log(static_cast<double>(c) / tot);
    }
    double configs = 1.0;
    for (int p : pcols) configs *= static_cast<double>(data.column(p).arity);
    const double penalty = 0.5 * static_cast<double>(kv - 1) * configs * std::log(static_cast<double>(n));
    return ll - penalty;
}

}  // namespace detail

inline Score bic_score(const Dag& dag, const Dataset& data) {
    if (data.row_count() == 0) throw std::invalid_argument("bic_score: empty dataset");
    Score s;
    for (int v = 0; v < dag.vertex_count(); ++v) {
        const std::string& name = dag.vertex_names()[static_cast<std::size_t>(v)];
        std::vector<int> pcols;
        for (int p : dag.parents(v))
            pcols.push_back(data.index_of(dag.vertex_names()[static_cast<std::size_t>(p)]));
        const double local = detail::bic_local(data, data.index_of(name), pcols);
        s.per_vertex[name] = local;
        s.total += local;
    }
    return s;
}

// Greedy BIC search from the empty graph over single-edge additions,
// deletions, and reversals, taking the best strict improvement each step.
// Ties break deterministically: additions before deletions before reversals,
// each scanned in ascending (source, target) declaration order, first hit
// kept. The seed is unused (the search is deterministic) and exists so every
// learner shares one call shape. max_iters bounds accepted moves.
inline Dag hill_climb(const Dataset& data, int max_iters = 1000, std::uint64_t seed = 0) {
    (void)seed;
    if (data.row_count() == 0) throw std::invalid_argument("hill_climb: empty dataset");
    std::vector<int> cols;
    std::vector<std::string> names;
    for (int c = 0; c < data.column_count(); ++c)
        if (data.column(c).role != Role::id) {
            detail::require_discrete_col(data, c, "hill_climb");
            cols.push_back(c);
            names.push_back(data.column(c).name);
        }
    if (names.empty()) throw std::invalid_argument("hill_climb: dataset has no variable columns");
    const int n = static_cast<int>(names.size());

    std::map<std::pair<int, std::vector<int>>, double> cache;
    const auto local = [&](int v, const std::vector<int>& parents) {
        const auto key = std::make_pair(v, parents);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::vector<int> pcols;
        for (int p : parents) pcols.push_back(cols[static_cast<std::size_t>(p)]);
        const double val = detail::bic_local(data, cols[static_cast<std::size_t>(v)], pcols);
        cache.emplace(key, val);
        return val;
    };
    const auto with_parent = [](std::vector<int> pa, int add) {
        pa.insert(std::upper_bound(pa.begin(), pa.end(), add), add);
        return pa;
    };
    const auto without_parent = [](std::vector<int> pa, int drop) {
        pa.erase(std::find(pa.begin(), pa.end(), drop));
        return pa;
    };

    Dag g;
    for (const std::string& name : names) g.add_vertex(name);
    std::vector<double> cur(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) cur[static_cast<std::size_t>(v)] = local(v, {});

    constexpr double kMinGain = 1e-9;
    for (int iter = 0; iter < max_iters; ++iter) {
        enum class Move { none, add, del, rev };
        Move best = Move::none;
        int bx = -1, by = -1;
        double best_gain = kMinGain;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y || g.has_edge(x, y) || g.has_edge(y, x)) continue;
                const auto desc = g.descendants(y);
                if (std::binary_search(desc.begin(), desc.end(), x)) continue;  // would cycle
                const double gain = local(y, with_parent(g.parents(y), x)) - cur[static_cast<std::size_t>(y)];
                if (gain > best_gain) {
                    best_gain = gain;
                    best = Move::add;
                    bx = x;
                    by = y;
                }
            }
        for (const auto& [x, y] : g.edges()) {
            const double gain = local(y, without_parent(g.parents(y), x)) - cur[static_cast<std::size_t>(y)];
            if (gain > best_gain) {
                best_gain = gain;
                best = Move::del;
                bx = x;
                by = y;
            }
        }
        for (const auto& [x, y] : g.edges()) {
            // x -> y becomes y -> x; illegal if another x ~> y path remains.
            bool other_path = false;
            std::vector<int> stack{x};
            std::vector<char> seen(static_cast<std::size_t>(n), 0);
            seen[static_cast<std::size_t>(x)] = 1;
            while (!stack.empty() && !other_path) {
                const int u = stack.back();
                stack.pop_back();
                for (int c : g.children(u)) {
                    if (u == x && c == y) continue;  // mask the reversed edge
                    if (c == y) {
                        other_path = true;
                        break;
                    }
                    if (!seen[static_cast<std::size_t>(c)]) {
                        seen[static_cast<std::size_t>(c)] = 1;
                        stack.push_back(c);
                    }
                }
            }
            if (other_path) continue;
            const double gain = (local(y, without_parent(g.parents(y), x)) - cur[static_cast<std::size_t>(y)]) +
                                (local(x, with_parent(g.parents(x), y)) - cur[static_cast<std::size_t>(x)]);
            if (gain > best_gain) {
                best_gain = gain;
                best = Move::rev;
                bx = x;
                by = y;
            }
        }
        if (best == Move::none) break;

        std::vector<std::pair<int, int>> edges = g.edges();
        if (best == Move::add) {
            edges.emplace_back(bx, by);
        } else if (best == Move::del) {
            edges.erase(std::find(edges.begin(), edges.end(), std::make_pair(bx, by)));
        } else {
            edges.erase(std::find(edges.begin(), edges.end(), std::make_pair(bx, by)));
            edges.emplace_back(by, bx);
        }
        Dag next;
        for (const std::string& name : names) next.add_vertex(name);
        std::sort(edges.begin(), edges.end());
        for (const auto& [a, b] : edges) next.add_edge(a, b);
        g = std::move(next);
        cur[static_cast<std::size_t>(by)] = local(by, g.parents(by));
        cur[static_cast<std::size_t>(bx)] = local(bx, g.parents(bx));
    }
    return g;
}

// Provenance header for learner output files; readers treat '#' lines as
// comments.
inline std::string learner_manifest(const std::string& algorithm, double alpha,
                                    std::uint64_t seed) {
    return "# algorithm=" + algorithm + " alpha=" + format_double(alpha) +
           " seed=" + std::to_string(seed) + "\n";
}

}  // namespace causeval
