#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dataset.hpp"
#include "graph.hpp"
#include "stats.hpp"

namespace causeval {

// z-score of the 0.9 quantile of a standard normal.
inline constexpr double kZQuantile90 = 1.2815515655446004;

// Largest joint/factor size exact discrete inference will materialize.
inline constexpr std::size_t kMaxTableCells = std::size_t{1} << 22;

struct Categorical {
    std::vector<double> probs;  // support is the state indices 0..k-1
};

struct GaussianComponent {
    double mean = 0.0;
    double variance = 0.0;
    double weight = 1.0;
};

struct GaussianMixture {
    std::vector<GaussianComponent> components;
};

using Distribution = std::variant<Categorical, GaussianMixture>;

// DAG plus one conditional probability table per vertex. CPT rows are indexed
// by the parent assignment in row-major order over parents in declaration
// order (last parent varies fastest); row r holds P(v = s | pa = r) at
// cpt(v)[r * arity(v) + s].
class DiscreteNetwork {
public:
    DiscreteNetwork(Dag dag, std::vector<int> arities, std::vector<std::vector<double>> cpts)
        : dag_(std::move(dag)), arities_(std::move(arities)), cpts_(std::move(cpts)) {
        validate();
    }

    const Dag& dag() const { return dag_; }
    int vertex_count() const { return dag_.vertex_count(); }

    int arity(int v) const { return arities_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& arities() const { return arities_; }

    std::size_t row_count(int v) const {
        std::size_t rows = 1;
        for (int p : dag_.parents(v)) rows *= static_cast<std::size_t>(arity(p));
        return rows;
    }

    const std::vector<double>& cpt(int v) const { return cpts_.at(static_cast<std::size_t>(v)); }

    // Row index of v's CPT under a full joint assignment (indexed by vertex).
    std::size_t row_of(int v, const std::vector<int>& assignment) const {
        std::size_t row = 0;
        for (int p : dag_.parents(v))
            row = row * static_cast<std::size_t>(arity(p)) +
                  static_cast<std::size_t>(assignment[static_cast<std::size_t>(p)]);
        return row;
    }

    double prob(int v, std::size_t row, int state) const {
        return cpts_[static_cast<std::size_t>(v)]
                    [row * static_cast<std::size_t>(arity(v)) + static_cast<std::size_t>(state)];
    }

    std::string to_string() const;
    static DiscreteNetwork parse(const std::string& text);

    friend bool operator==(const DiscreteNetwork& a, const DiscreteNetwork& b) {
        return a.dag_ == b.dag_ && a.arities_ == b.arities_ && a.cpts_ == b.cpts_;
    }

private:
    void validate() const {
        const int n = dag_.vertex_count();
        if (static_cast<int>(arities_.size()) != n || static_cast<int>(cpts_.size()) != n)
            throw std::invalid_argument("network: arity/CPT count does not match vertex count");
        for (int v = 0; v < n; ++v) {
            const int k = arities_[static_cast<std::size_t>(v)];
            if (k < 2)
                throw std::invalid_argument("vertex '" + dag_.name_of(v) + "': arity must be >= 2");
            const std::vector<double>& t = cpts_[static_cast<std::size_t>(v)];
            const std::size_t rows = row_count(v);
            if (t.size() != rows * static_cast<std::size_t>(k))
                throw std::invalid_argument("vertex '" + dag_.name_of(v) + "': CPT has " +
                                            std::to_string(t.size()) + " entries, expected " +
                                            std::to_string(rows * static_cast<std::size_t>(k)));
            for (std::size_t r = 0; r < rows; ++r) {
                double sum = 0.0;
                for (int s = 0; s < k; ++s) {
                    const double p = t[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(s)];
                    if (!(p >= 0.0))
                        throw std::invalid_argument("vertex '" + dag_.name_of(v) + "' row " +
                                                    std::to_string(r) + ": negative probability");
                    sum += p;
                }
                if (std::fabs(sum - 1.0) > 1e-9)
                    throw std::invalid_argument("vertex '" + dag_.name_of(v) + "' row " +
                                                std::to_string(r) + ": probabilities sum to " +
                                                format_double(sum));
            }
        }
    }

    Dag dag_;
    std::vector<int> arities_;
    std::vector<std::vector<double>> cpts_;
};

// DAG plus per-vertex linear model: v = intercept + w . parents + noise,
// noise ~ N(0, variance). A zero variance encodes the point mass produced by
// an intervention; fitting floors variances at 1e-12 instead.
class GaussianNetwork {
public:
    GaussianNetwork(Dag dag, std::vector<std::vector<double>> weights, std::vector<double> intercepts,
                    std::vector<double> noise_variances)
        : dag_(std::move(dag)),
          weights_(std::move(weights)),
          intercepts_(std::move(intercepts)),
          noise_vars_(std::move(noise_variances)) {
        validate();
    }

    const Dag& dag() const { return dag_; }
    int vertex_count() const { return dag_.vertex_count(); }

    // Aligned with dag().parents(v).
    const std::vector<double>& weights(int v) const { return weights_.at(static_cast<std::size_t>(v)); }
    double intercept(int v) const { return intercepts_.at(static_cast<std::size_t>(v)); }
    double noise_variance(int v) const { return noise_vars_.at(static_cast<std::size_t>(v)); }

    double weight(int parent, int child) const {
        const std::vector<int>& pa = dag_.parents(child);
        for (std::size_t i = 0; i < pa.size(); ++i)
            if (pa[i] == parent) return weights_[static_cast<std::size_t>(child)][i];
        throw std::invalid_argument("no edge " + dag_.name_of(parent) + " -> " + dag_.name_of(child));
    }
    double weight(const std::string& parent, const std::string& child) const {
        return weight(dag_.index_of(parent), dag_.index_of(child));
    }

    std::string to_string() const;
    static GaussianNetwork parse(const std::string& text);

    friend bool operator==(const GaussianNetwork& a, const GaussianNetwork& b) {
        return a.dag_ == b.dag_ && a.weights_ == b.weights_ && a.intercepts_ == b.intercepts_ &&
               a.noise_vars_ == b.noise_vars_;
    }

private:
    void validate() const {
        const int n = dag_.vertex_count();
        if (static_cast<int>(weights_.size()) != n || static_cast<int>(intercepts_.size()) != n ||
            static_cast<int>(noise_vars_.size()) != n)
            throw std::invalid_argument("network: parameter count does not match vertex count");
        for (int v = 0; v < n; ++v) {
            if (weights_[static_cast<std::size_t>(v)].size() != dag_.parents(v).size())
                throw std::invalid_argument("vertex '" + dag_.name_of(v) +
                                            "': weight count does not match parent count");
            if (!(noise_vars_[static_cast<std::size_t>(v)] >= 0.0))
                throw std::invalid_argument("vertex '" + dag_.name_of(v) + "': negative variance");
            if (!std::isfinite(intercepts_[static_cast<std::size_t>(v)]) ||
                !std::isfinite(noise_vars_[static_cast<std::size_t>(v)]))
                throw std::invalid_argument("vertex '" + dag_.name_of(v) + "': non-finite parameter");
            for (double w : weights_[static_cast<std::size_t>(v)])
                if (!std::isfinite(w))
                    throw std::invalid_argument("vertex '" + dag_.name_of(v) + "': non-finite weight");
        }
    }

    Dag dag_;
    std::vector<std::vector<double>> weights_;
    std::vector<double> intercepts_;
    std::vector<double> noise_vars_;
};

using Network = std::variant<DiscreteNetwork, GaussianNetwork>;

// ---------------------------------------------------------------------------
// Fitting

inline DiscreteNetwork fit_mle_discrete(const Dag& dag, const Dataset& data, double pseudocount) {
    if (pseudocount < 0.0) throw std::invalid_argument("pseudocount must be non-negative");
    if (data.row_count() == 0) throw std::invalid_argument("fit_mle_discrete: empty dataset");
    const int n = dag.vertex_count();
    std::vector<int> col(static_cast<std::size_t>(n));
    std::vector<int> arities(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const int c = data.index_of(dag.name_of(v));
        if (data.column(c).type != ColType::discrete)
            throw std::invalid_argument("fit_mle_discrete: column '" + dag.name_of(v) +
                                        "' is not discrete");
        col[static_cast<std::size_t>(v)] = c;
        arities[static_cast<std::size_t>(v)] = data.column(c).arity;
    }
    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const int k = arities[static_cast<std::size_t>(v)];
        std::size_t rows = 1;
        for (int p : dag.parents(v)) rows *= static_cast<std::size_t>(arities[static_cast<std::size_t>(p)]);
        if (rows * static_cast<std::size_t>(k) > kMaxTableCells)
            throw std::runtime_error("fit_mle_discrete: CPT for '" + dag.name_of(v) + "' too large");
        std::vector<double> counts(rows * static_cast<std::size_t>(k), 0.0);
        for (std::size_t r = 0; r < data.row_count(); ++r) {
            std::size_t row = 0;
            for (int p : dag.parents(v))
                row = row * static_cast<std::size_t>(arities[static_cast<std::size_t>(p)]) +
                      static_cast<std::size_t>(data.int_at(col[static_cast<std::size_t>(p)], r));
            counts[row * static_cast<std::size_t>(k) +
                   static_cast<std::size_t>(data.int_at(col[static_cast<std::size_t>(v)], r))] += 1.0;
        }
        std::vector<double> table(counts.size());
        for (std::size_t row = 0; row < rows; ++row) {
            double total = k * pseudocount;
            for (int s = 0; s < k; ++s)
                total += counts[row * static_cast<std::size_t>(k) + static_cast<std::size_t>(s)];
            for (int s = 0; s < k; ++s) {
                const std::size_t i = row * static_cast<std::size_t>(k) + static_cast<std::size_t>(s);
                table[i] = total > 0.0 ? (counts[i] + pseudocount) / total : 1.0 / k;
            }
        }
        cpts[static_cast<std::size_t>(v)] = std::move(table);
    }
    return DiscreteNetwork(dag, std::move(arities), std::move(cpts));
}

inline GaussianNetwork fit_mle_gaussian(const Dag& dag, const Dataset& data) {
    const int n = dag.vertex_count();
    const std::size_t rows = data.row_count();
    std::vector<int> col(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) col[static_cast<std::size_t>(v)] = data.index_of(dag.name_of(v));
    std::vector<std::vector<double>> weights(static_cast<std::size_t>(n));
    std::vector<double> intercepts(static_cast<std::size_t>(n)), variances(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const std::vector<int>& pa = dag.parents(v);
        const int p = static_cast<int>(pa.size());
        if (rows <= static_cast<std::size_t>(p) + 1)
            throw std::invalid_argument("fit_mle_gaussian: vertex '" + dag.name_of(v) + "' needs more than " +
                                        std::to_string(p + 1) + " rows, got " + std::to_string(rows));
        Eigen::MatrixXd x(rows, p + 1);
        Eigen::VectorXd y(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            x(static_cast<Eigen::Index>(r), 0) = 1.0;
            for (int j = 0; j < p; ++j)
                x(static_cast<Eigen::Index>(r), j + 1) =
                    data.real_at(col[static_cast<std::size_t>(pa[static_cast<std::size_t>(j)])], r);
            y(static_cast<Eigen::Index>(r)) = data.real_at(col[static_cast<std::size_t>(v)], r);
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
        if (qr.rank() < p + 1)
            throw std::invalid_argument("fit_mle_gaussian: design matrix for vertex '" +
                                        dag.name_of(v) + "' is rank deficient");
        const Eigen::VectorXd beta = qr.solve(y);
        const double rss = (y - x * beta).squaredNorm();
        intercepts[static_cast<std::size_t>(v)] = beta(0);
        std::vector<double> w(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) w[static_cast<std::size_t>(j)] = beta(j + 1);
        weights[static_cast<std::size_t>(v)] = std::move(w);
        const double denom = static_cast<double>(rows) - p - 1;
        variances[static_cast<std::size_t>(v)] = std::max(rss / denom, 1e-12);
    }
    return GaussianNetwork(dag, std::move(weights), std::move(intercepts), std::move(variances));
}

// ---------------------------------------------------------------------------
// Intervention by graph surgery

namespace detail {
inline Dag without_in_edges(const Dag& g, int v) {
    Dag out(g.vertex_names());
    for (const auto& [a, b] : g.edges())
        if (b != v) out.add_edge(a, b);
    return out;
}
}  // namespace detail

inline DiscreteNetwork intervene(const DiscreteNetwork& net, int v, int state) {
    if (v < 0 || v >= net.vertex_count())
        throw std::invalid_argument("intervene: vertex index out of range");
    if (state < 0 || state >= net.arity(v))
        throw std::invalid_argument("intervene: state " + std::to_string(state) +
                                    " outside arity of '" + net.dag().name_of(v) + "'");
    const int n = net.vertex_count();
    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) cpts[static_cast<std::size_t>(u)] = net.cpt(u);
    std::vector<double> point(static_cast<std::size_t>(net.arity(v)), 0.0);
    point[static_cast<std::size_t>(state)] = 1.0;
    cpts[static_cast<std::size_t>(v)] = std::move(point);
    return DiscreteNetwork(detail::without_in_edges(net.dag(), v), net.arities(), std::move(cpts));
}

inline GaussianNetwork intervene(const GaussianNetwork& net, int v, double value) {
    if (v < 0 || v >= net.vertex_count())
        throw std::invalid_argument("intervene: vertex index out of range");
    if (!std::isfinite(value)) throw std::invalid_argument("intervene: non-finite value");
    const int n = net.vertex_count();
    std::vector<std::vector<double>> weights(static_cast<std::size_t>(n));
    std::vector<double> intercepts(static_cast<std::size_t>(n)), variances(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        weights[static_cast<std::size_t>(u)] = net.weights(u);
        intercepts[static_cast<std::size_t>(u)] = net.intercept(u);
        variances[static_cast<std::size_t>(u)] = net.noise_variance(u);
    }
    weights[static_cast<std::size_t>(v)].clear();
    intercepts[static_cast<std::size_t>(v)] = value;
    variances[static_cast<std::size_t>(v)] = 0.0;
    return GaussianNetwork(detail::without_in_edges(net.dag(), v), std::move(weights),
                           std::move(intercepts), std::move(variances));
}

inline DiscreteNetwork intervene(const DiscreteNetwork& net, const std::string& v, int state) {
    return intervene(net, net.dag().index_of(v), state);
}
inline GaussianNetwork intervene(const GaussianNetwork& net, const std::string& v, double value) {
    return intervene(net, net.dag().index_of(v), value);
}

// ---------------------------------------------------------------------------
// Exact discrete inference

// Full joint over all vertices, row-major in declaration order (last vertex
// varies fastest). Errors when the table would exceed kMaxTableCells.
inline std::vector<double> joint_table(const DiscreteNetwork& net) {
    const int n = net.vertex_count();
    std::size_t cells = 1;
    for (int v = 0; v < n; ++v) {
        if (cells > kMaxTableCells / static_cast<std::size_t>(net.arity(v)))
            throw std::runtime_error("joint_table: joint has more than " +
                                     std::to_string(kMaxTableCells) + " cells");
        cells *= static_cast<std::size_t>(net.arity(v));
    }
    std::vector<double> joint(cells);
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < cells; ++i) {
        double p = 1.0;
        for (int v = 0; v < n; ++v)
            p *= net.prob(v, net.row_of(v, a), a[static_cast<std::size_t>(v)]);
        joint[i] = p;
        for (int v = n - 1; v >= 0; --v) {
            if (++a[static_cast<std::size_t>(v)] < net.arity(v)) break;
            a[static_cast<std::size_t>(v)] = 0;
        }
    }
    return joint;
}

namespace detail {

struct Factor {
    std::vector<int> vars;  // ascending vertex ids
    std::vector<double> vals;  // row-major, last var fastest
};

inline std::size_t factor_cells(const std::vector<int>& vars, const std::vector<int>& arity) {
    std::size_t cells = 1;
    for (int v : vars) {
        if (cells > kMaxTableCells / static_cast<std::size_t>(arity[static_cast<std::size_t>(v)]))
            throw std::runtime_error("exact inference: elimination width too large");
        cells *= static_cast<std::size_t>(arity[static_cast<std::size_t>(v)]);
    }
    return cells;
}

inline std::vector<std::size_t> strides_for(const std::vector<int>& vars,
                                            const std::vector<int>& arity) {
    std::vector<std::size_t> s(vars.size());
    std::size_t acc = 1;
    for (std::size_t i = vars.size(); i-- > 0;) {
        s[i] = acc;
        acc *= static_cast<std::size_t>(arity[static_cast<std::size_t>(vars[i])]);
    }
    return s;
}

inline Factor multiply_all(const std::vector<const Factor*>& fs, const std::vector<int>& arity) {
    Factor out;
    for (const Factor* f : fs)
        for (int v : f->vars)
            if (!std::binary_search(out.vars.begin(), out.vars.end(), v))
                out.vars.insert(std::lower_bound(out.vars.begin(), out.vars.end(), v), v);
    const std::size_t cells = factor_cells(out.vars, arity);
    const std::vector<std::size_t> stride = strides_for(out.vars, arity);
    // Per input factor, stride of each output var (0 when absent).
    std::vector<std::vector<std::size_t>> in_stride(fs.size());
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const std::vector<std::size_t> s = strides_for(fs[k]->vars, arity);
        in_stride[k].assign(out.vars.size(), 0);
        for (std::size_t i = 0; i < out.vars.size(); ++i) {
            const auto it = std::lower_bound(fs[k]->vars.begin(), fs[k]->vars.end(), out.vars[i]);
            if (it != fs[k]->vars.end() && *it == out.vars[i])
                in_stride[k][i] = s[static_cast<std::size_t>(it - fs[k]->vars.begin())];
        }
    }
    out.vals.resize(cells);
    std::vector<int> a(out.vars.size(), 0);
    for (std::size_t i = 0; i < cells; ++i) {
        double p = 1.0;
        for (std::size_t k = 0; k < fs.size(); ++k) {
            std::size_t idx = 0;
            for (std::size_t j = 0; j < out.vars.size(); ++j)
                idx += in_stride[k][j] * static_cast<std::size_t>(a[j]);
            p *= fs[k]->vals[idx];
        }
        out.vals[i] = p;
        for (std::size_t j = out.vars.size(); j-- > 0;) {
            if (++a[j] < arity[static_cast<std::size_t>(out.vars[j])]) break;
            a[j] = 0;
        }
    }
    return out;
}

inline Factor sum_out(const Factor& f, int var, const std::vector<int>& arity) {
    Factor out;
    out.vars = f.vars;
    const auto it = std::find(out.vars.begin(), out.vars.end(), var);
    if (it == out.vars.end()) throw std::logic_error("sum_out: var not in scope");
    const std::size_t pos = static_cast<std::size_t>(it - out.vars.begin());
    out.vars.erase(it);
    out.vals.assign(factor_cells(out.vars, arity), 0.0);
    const std::vector<std::size_t> in_stride = strides_for(f.vars, arity);
    const std::vector<std::size_t> out_stride = strides_for(out.vars, arity);
    std::vector<int> a(f.vars.size(), 0);
    for (std::size_t i = 0; i < f.vals.size(); ++i) {
        std::size_t idx = 0;
        for (std::size_t j = 0, o = 0; j < f.vars.size(); ++j) {
            if (j == pos) continue;
            idx += out_stride[o++] * static_cast<std::size_t>(a[j]);
        }
        out.vals[idx] += f.vals[i];
        for (std::size_t j = f.vars.size(); j-- > 0;) {
            if (++a[j] < arity[static_cast<std::size_t>(f.vars[j])]) break;
            a[j] = 0;
        }
    }
    return out;
}

}  // namespace detail

// Exact marginal of a single vertex by variable elimination with a greedy
// min-weight ordering.
inline Distribution marginal(const DiscreteNetwork& net, int target) {
    const int n = net.vertex_count();
    if (target < 0 || target >= n) throw std::invalid_argument("marginal: vertex index out of range");
    const std::vector<int>& arity = net.arities();
    std::vector<detail::Factor> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        detail::Factor f;
        f.vars = net.dag().parents(v);
        f.vars.insert(std::lower_bound(f.vars.begin(), f.vars.end(), v), v);
        f.vals.resize(detail::factor_cells(f.vars, arity));
        std::vector<int> a(f.vars.size(), 0);
        std::vector<int> full(static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < f.vals.size(); ++i) {
            for (std::size_t j = 0; j < f.vars.size(); ++j)
                full[static_cast<std::size_t>(f.vars[j])] = a[j];
            f.vals[i] = net.prob(v, net.row_of(v, full), full[static_cast<std::size_t>(v)]);
            for (std::size_t j = f.vars.size(); j-- > 0;) {
                if (++a[j] < arity[static_cast<std::size_t>(f.vars[j])]) break;
                a[j] = 0;
            }
        }
        pool.push_back(std::move(f));
    }
    std::vector<char> todo(static_cast<std::size_t>(n), 1);
    todo[static_cast<std::size_t>(target)] = 0;
    for (;;) {
        // Pick the pending variable whose elimination makes the smallest
        // intermediate factor.
        int best = -1;
        std::size_t best_cells = 0;
        for (int v = 0; v < n; ++v) {
            if (!todo[static_cast<std::size_t>(v)]) continue;
            std::vector<int> scope;
            bool present = false;
            for (const detail::Factor& f : pool) {
                if (!std::binary_search(f.vars.begin(), f.vars.end(), v)) continue;
                present = true;
                for (int u : f.vars)
                    if (!std::binary_search(scope.begin(), scope.end(), u))
                        scope.insert(std::lower_bound(scope.begin(), scope.end(), u), u);
            }
            if (!present) {
                todo[static_cast<std::size_t>(v)] = 0;
                continue;
            }
            std::size_t cells = 1;
            bool over = false;
            for (int u : scope) {
                if (cells > kMaxTableCells / static_cast<std::size_t>(arity[static_cast<std::size_t>(u)])) {
                    over = true;
                    break;
                }
                cells *= static_cast<std::size_t>(arity[static_cast<std::size_t>(u)]);
            }
            if (over) cells = kMaxTableCells + 1;
            if (best < 0 || cells < best_cells) {
                best = v;
                best_cells = cells;
            }
        }
        if (best < 0) break;
        if (best_cells > kMaxTableCells)
            throw std::runtime_error("exact inference: elimination width too large");
        std::vector<const detail::Factor*> gather;
        std::vector<detail::Factor> keep;
        for (detail::Factor& f : pool) {
            if (std::binary_search(f.vars.begin(), f.vars.end(), best))
                gather.push_back(&f);
            else
                keep.push_back(std::move(f));
        }
        detail::Factor merged = detail::multiply_all(gather, arity);
        keep.push_back(detail::sum_out(merged, best, arity));
        pool = std::move(keep);
        todo[static_cast<std::size_t>(best)] = 0;
    }
    std::vector<const detail::Factor*> rest;
    for (const detail::Factor& f : pool) rest.push_back(&f);
    const detail::Factor final_f = detail::multiply_all(rest, arity);
    if (final_f.vars != std::vector<int>{target})
        throw std::logic_error("marginal: elimination left unexpected scope");
    Categorical out;
    out.probs = final_f.vals;
    double total = 0.0;
    for (double p : out.probs) total += p;
    if (total <= 0.0) throw std::runtime_error("marginal: zero total probability");
    for (double& p : out.probs) p /= total;
    return out;
}

// Exact marginal of a single vertex by linear mean/covariance propagation in
// topological order; returned as a one-component mixture.
inline Distribution marginal(const GaussianNetwork& net, int target) {
    const int n = net.vertex_count();
    if (target < 0 || target >= n) throw std::invalid_argument("marginal: vertex index out of range");
    std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
    std::vector<std::vector<double>> cov(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int v : net.dag().topological_order()) {
        const std::vector<int>& pa = net.dag().parents(v);
        const std::vector<double>& w = net.weights(v);
        double m = net.intercept(v);
        for (std::size_t i = 0; i < pa.size(); ++i)
            m += w[i] * mean[static_cast<std::size_t>(pa[i])];
        mean[static_cast<std::size_t>(v)] = m;
        double var = net.noise_variance(v);
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = 0; j < pa.size(); ++j)
                var += w[i] * w[j] *
                       cov[static_cast<std::size_t>(pa[i])][static_cast<std::size_t>(pa[j])];
        cov[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = var;
        for (int x = 0; x < n; ++x) {
            if (x == v) continue;
            double c = 0.0;
            for (std::size_t i = 0; i < pa.size(); ++i)
                c += w[i] * cov[static_cast<std::size_t>(pa[i])][static_cast<std::size_t>(x)];
            cov[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)] = c;
            cov[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)] = c;
        }
    }
    GaussianMixture out;
    out.components.push_back({mean[static_cast<std::size_t>(target)],
                              cov[static_cast<std::size_t>(target)][static_cast<std::size_t>(target)],
                              1.0});
    return out;
}

inline Distribution marginal(const DiscreteNetwork& net, const std::string& v) {
    return marginal(net, net.dag().index_of(v));
}
inline Distribution marginal(const GaussianNetwork& net, const std::string& v) {
    return marginal(net, net.dag().index_of(v));
}

// ---------------------------------------------------------------------------
// Intervention policy

// Maps vertices to the value an intervention assigns. Vertices without an
// explicit entry use the default rule: the top state for discrete vertices
// and the 0.9 quantile of the reference model's observational marginal for
// continuous ones.
struct InterventionPolicy {
    std::map<std::string, double> values;

    double value_for(const DiscreteNetwork& ref, int v) const {
        const auto it = values.find(ref.dag().name_of(v));
        if (it != values.end()) {
            const int s = static_cast<int>(it->second);
            if (static_cast<double>(s) != it->second || s < 0 || s >= ref.arity(v))
                throw std::invalid_argument("intervention value for '" + ref.dag().name_of(v) +
                                            "' outside arity");
            return it->second;
        }
        return static_cast<double>(ref.arity(v) - 1);
    }

    double value_for(const GaussianNetwork& ref, int v) const {
        const auto it = values.find(ref.dag().name_of(v));
        if (it != values.end()) return it->second;
        const GaussianMixture mix = std::get<GaussianMixture>(marginal(ref, v));
        const GaussianComponent& c = mix.components.front();
        return c.mean + kZQuantile90 * std::sqrt(c.variance);
    }
};

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

struct NetworkDoc {
    std::string kind;
    std::string graph_text;
    std::vector<std::string> arity_entries;
    std::vector<std::string> body_lines;  // cpt or params block
};

inline NetworkDoc parse_network_doc(const std::string& text, const std::string& body_tag) {
    NetworkDoc doc;
    std::istringstream in(text);
    std::string raw;
    enum { TOP, GRAPH, BODY } where = TOP;
    while (std::getline(in, raw)) {
        const std::string line = trim(trim_cr(raw));
        if (line.empty() || line[0] == '#') continue;
        if (where == GRAPH) {
            if (line == "end") {
                where = TOP;
            } else {
                doc.graph_text += line;
                doc.graph_text += '\n';
            }
            continue;
        }
        if (where == BODY) {
            if (line == "end")
                where = TOP;
            else
                doc.body_lines.push_back(line);
            continue;
        }
        if (line.rfind("network:", 0) == 0) {
            doc.kind = trim(line.substr(8));
        } else if (line == "graph:") {
            where = GRAPH;
        } else if (line.rfind("arities:", 0) == 0) {
            for (const std::string& part : split(line.substr(8), ','))
                doc.arity_entries.push_back(trim(part));
        } else if (line == body_tag) {
            where = BODY;
        } else {
            throw std::runtime_error("network text: unexpected line '" + line + "'");
        }
    }
    if (doc.kind.empty()) throw std::runtime_error("network text: missing 'network:' header");
    if (doc.graph_text.empty()) throw std::runtime_error("network text: missing graph block");
    return doc;
}

inline std::vector<std::string> split_pipes(const std::string& line) {
    std::vector<std::string> parts = split(line, '|');
    for (std::string& p : parts) p = trim(p);
    return parts;
}

}  // namespace detail

inline std::string DiscreteNetwork::to_string() const {
    std::string out = "network: discrete\ngraph:\n";
    out += dag_.to_string();
    out += "end\narities: ";
    for (int v = 0; v < vertex_count(); ++v) {
        if (v) out += ',';
        out += dag_.name_of(v) + "=" + std::to_string(arity(v));
    }
    out += "\ncpt:\n";
    for (int v = 0; v < vertex_count(); ++v) {
        const std::vector<int>& pa = dag_.parents(v);
        const std::size_t rows = row_count(v);
        std::vector<int> a(pa.size(), 0);
        for (std::size_t r = 0; r < rows; ++r) {
            out += dag_.name_of(v);
            out += " | ";
            if (pa.empty()) {
                out += '-';
            } else {
                for (std::size_t j = 0; j < pa.size(); ++j) {
                    if (j) out += ',';
                    out += std::to_string(a[j]);
                }
            }
            out += " |";
            for (int s = 0; s < arity(v); ++s) {
                out += ' ';
                out += format_double(prob(v, r, s));
            }
            out += '\n';
            for (std::size_t j = pa.size(); j-- > 0;) {
                if (++a[j] < arity(pa[j])) break;
                a[j] = 0;
            }
        }
    }
    out += "end\n";
    return out;
}

inline DiscreteNetwork DiscreteNetwork::parse(const std::string& text) {
    const detail::NetworkDoc doc = detail::parse_network_doc(text, "cpt:");
    if (doc.kind != "discrete")
        throw std::runtime_error("network text: expected 'network: discrete', got '" + doc.kind + "'");
    const Dag dag = Dag::parse(doc.graph_text);
    const int n = dag.vertex_count();
    std::vector<int> arities(static_cast<std::size_t>(n), 0);
    for (const std::string& entry : doc.arity_entries) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("network text: bad arity entry '" + entry + "'");
        const int v = dag.index_of(detail::trim(entry.substr(0, eq)));
        arities[static_cast<std::size_t>(v)] = std::stoi(entry.substr(eq + 1));
    }
    for (int v = 0; v < n; ++v)
        if (arities[static_cast<std::size_t>(v)] < 2)
            throw std::runtime_error("network text: missing arity for '" + dag.name_of(v) + "'");
    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        std::size_t rows = 1;
        for (int p : dag.parents(v)) rows *= static_cast<std::size_t>(arities[static_cast<std::size_t>(p)]);
        cpts[static_cast<std::size_t>(v)].assign(rows * static_cast<std::size_t>(arities[static_cast<std::size_t>(v)]),
                                                 -1.0);
    }
    for (const std::string& line : doc.body_lines) {
        const std::vector<std::string> parts = detail::split_pipes(line);
        if (parts.size() != 3)
            throw std::runtime_error("network text: bad cpt row '" + line + "'");
        const int v = dag.index_of(parts[0]);
        const std::vector<int>& pa = dag.parents(v);
        std::size_t row = 0;
        if (parts[1] != "-") {
            const std::vector<std::string> states = detail::split(parts[1], ',');
            if (states.size() != pa.size())
                throw std::runtime_error("network text: cpt row '" + line + "' has " +
                                         std::to_string(states.size()) + " parent states, expected " +
                                         std::to_string(pa.size()));
            for (std::size_t j = 0; j < pa.size(); ++j) {
                const int s = std::stoi(detail::trim(states[j]));
                const int pk = arities[static_cast<std::size_t>(pa[j])];
                if (s < 0 || s >= pk)
                    throw std::runtime_error("network text: parent state out of range in '" + line + "'");
                row = row * static_cast<std::size_t>(pk) + static_cast<std::size_t>(s);
            }
        } else if (!pa.empty()) {
            throw std::runtime_error("network text: cpt row '" + line + "' omits parent states");
        }
        std::istringstream ps(parts[2]);
        const int k = arities[static_cast<std::size_t>(v)];
        for (int s = 0; s < k; ++s) {
            std::string tok;
            if (!(ps >> tok))
                throw std::runtime_error("network text: cpt row '" + line + "' has too few probabilities");
            cpts[static_cast<std::size_t>(v)][row * static_cast<std::size_t>(k) + static_cast<std::size_t>(s)] =
                parse_double(tok);
        }
        std::string extra;
        if (ps >> extra)
            throw std::runtime_error("network text: cpt row '" + line + "' has too many probabilities");
    }
    for (int v = 0; v < n; ++v)
        for (double p : cpts[static_cast<std::size_t>(v)])
            if (p < 0.0)
                throw std::runtime_error("network text: missing cpt row for '" + dag.name_of(v) + "'");
    return DiscreteNetwork(dag, std::move(arities), std::move(cpts));
}

inline std::string GaussianNetwork::to_string() const {
    std::string out = "network: gaussian\ngraph:\n";
    out += dag_.to_string();
    out += "end\nparams:\n";
    for (int v = 0; v < vertex_count(); ++v) {
        out += dag_.name_of(v);
        out += " | intercept ";
        out += format_double(intercept(v));
        out += " | variance ";
        out += format_double(noise_variance(v));
        out += " | weights";
        for (double w : weights(v)) {
            out += ' ';
            out += format_double(w);
        }
        out += '\n';
    }
    out += "end\n";
    return out;
}

inline GaussianNetwork GaussianNetwork::parse(const std::string& text) {
    const detail::NetworkDoc doc = detail::parse_network_doc(text, "params:");
    if (doc.kind != "gaussian")
        throw std::runtime_error("network text: expected 'network: gaussian', got '" + doc.kind + "'");
    const Dag dag = Dag::parse(doc.graph_text);
    const int n = dag.vertex_count();
    std::vector<std::vector<double>> weights(static_cast<std::size_t>(n));
    std::vector<double> intercepts(static_cast<std::size_t>(n), 0.0);
    std::vector<double> variances(static_cast<std::size_t>(n), -1.0);
    for (const std::string& line : doc.body_lines) {
        const std::vector<std::string> parts = detail::split_pipes(line);
        if (parts.size() != 4)
            throw std::runtime_error("network text: bad params row '" + line + "'");
        const int v = dag.index_of(parts[0]);
        if (parts[1].rfind("intercept ", 0) != 0 || parts[2].rfind("variance ", 0) != 0 ||
            parts[3].rfind("weights", 0) != 0)
            throw std::runtime_error("network text: bad params row '" + line + "'");
        intercepts[static_cast<std::size_t>(v)] = parse_double(parts[1].substr(10));
        variances[static_cast<std::size_t>(v)] = parse_double(parts[2].substr(9));
        std::istringstream ws(parts[3].substr(7));
        std::vector<double> w;
        std::string tok;
        while (ws >> tok) w.push_back(parse_double(tok));
        if (w.size() != dag.parents(v).size())
            throw std::runtime_error("network text: params row '" + line + "' lists " +
                                     std::to_string(w.size()) + " weights, expected " +
                                     std::to_string(dag.parents(v).size()));
        weights[static_cast<std::size_t>(v)] = std::move(w);
    }
    for (int v = 0; v < n; ++v)
        if (variances[static_cast<std::size_t>(v)] < 0.0)
            throw std::runtime_error("network text: missing params row for '" + dag.name_of(v) + "'");
    return GaussianNetwork(dag, std::move(weights), std::move(intercepts), std::move(variances));
}

}  // namespace causeval
