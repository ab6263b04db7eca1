#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace causeval {

using VertexSet = std::set<std::string>;

namespace detail {

inline void validate_vertex_name(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("vertex name must be non-empty");
    for (char ch : name) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '#')
            throw std::invalid_argument("vertex name '" + name + "' contains whitespace, ',' or '#'");
    }
}

inline std::string trim_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

struct ParsedGraph {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> directed;
    std::vector<std::pair<std::string, std::string>> undirected;
};

// Shared reader for the graph text format:
//   vertices: v1,v2,...
//   a -> b
//   a -- b
// with '#' comments and blank lines ignored.
inline ParsedGraph parse_graph_text(const std::string& text) {
    ParsedGraph pg;
    bool have_header = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (!have_header) {
            if (line.rfind("vertices:", 0) != 0)
                throw std::runtime_error("graph text line " + std::to_string(lineno) +
                                         ": expected 'vertices:' header");
            for (const std::string& part : split(line.substr(9), ',')) {
                const std::string name = trim(part);
                validate_vertex_name(name);
                pg.names.push_back(name);
            }
            have_header = true;
            continue;
        }
        std::istringstream ls(line);
        std::string a, op, b, extra;
        if (!(ls >> a >> op >> b) || (ls >> extra))
            throw std::runtime_error("graph text line " + std::to_string(lineno) +
                                     ": expected 'a -> b' or 'a -- b'");
        if (op == "->")
            pg.directed.emplace_back(a, b);
        else if (op == "--")
            pg.undirected.emplace_back(a, b);
        else
            throw std::runtime_error("graph text line " + std::to_string(lineno) +
                                     ": unknown edge operator '" + op + "'");
    }
    if (!have_header) throw std::runtime_error("graph text: missing 'vertices:' header");
    return pg;
}

inline void insert_sorted(std::vector<int>& v, int x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

inline bool contains_sorted(const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace detail

// Directed acyclic graph over named vertices. Vertex identity is the name;
// all tie-breaking (topological order, edge listing) follows declaration
// order. Instances are plain values: queries never mutate, so a constructed
// Dag is safe to share across threads.
class Dag {
public:
    Dag() = default;

    explicit Dag(const std::vector<std::string>& names) {
        for (const std::string& n : names) add_vertex(n);
    }

    int add_vertex(const std::string& name) {
        detail::validate_vertex_name(name);
        if (index_.count(name)) throw std::invalid_argument("duplicate vertex '" + name + "'");
        const int v = static_cast<int>(names_.size());
        names_.push_back(name);
        index_.emplace(name, v);
        parents_.emplace_back();
        children_.emplace_back();
        if (names_.size() <= 64) {
            pmask_.push_back(0);
            cmask_.push_back(0);
        } else {
            pmask_.clear();
            cmask_.clear();
        }
        return v;
    }

    void add_edge(int a, int b) {
        check_vertex(a);
        check_vertex(b);
        if (a == b)
            throw std::invalid_argument("edge " + names_[static_cast<std::size_t>(a)] + " -> " +
                                        names_[static_cast<std::size_t>(a)] + " is a self-loop");
        if (detail::contains_sorted(children_[static_cast<std::size_t>(a)], b))
            throw std::invalid_argument("duplicate edge " + names_[static_cast<std::size_t>(a)] +
                                        " -> " + names_[static_cast<std::size_t>(b)]);
        if (reaches(b, a))
            throw std::invalid_argument("edge " + names_[static_cast<std::size_t>(a)] + " -> " +
                                        names_[static_cast<std::size_t>(b)] +
                                        " would create a cycle");
        detail::insert_sorted(children_[static_cast<std::size_t>(a)], b);
        detail::insert_sorted(parents_[static_cast<std::size_t>(b)], a);
        if (masks_valid()) {
            cmask_[static_cast<std::size_t>(a)] |= 1ULL << b;
            pmask_[static_cast<std::size_t>(b)] |= 1ULL << a;
        }
        ++n_edges_;
    }

    void add_edge(const std::string& a, const std::string& b) { add_edge(index_of(a), index_of(b)); }

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return n_edges_; }

    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& name_of(int v) const {
        check_vertex(v);
        return names_[static_cast<std::size_t>(v)];
    }

    bool has_vertex(const std::string& name) const { return index_.count(name) != 0; }

    int index_of(const std::string& name) const {
        const auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown vertex '" + name + "'");
        return it->second;
    }

    bool has_edge(int a, int b) const {
        check_vertex(a);
        check_vertex(b);
        return detail::contains_sorted(children_[static_cast<std::size_t>(a)], b);
    }
    bool has_edge(const std::string& a, const std::string& b) const {
        return has_edge(index_of(a), index_of(b));
    }

    bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

    const std::vector<int>& parents(int v) const {
        check_vertex(v);
        return parents_[static_cast<std::size_t>(v)];
    }
    const std::vector<int>& children(int v) const {
        check_vertex(v);
        return children_[static_cast<std::size_t>(v)];
    }

    // Edges in (parent, child) index order.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(n_edges_));
        for (int a = 0; a < vertex_count(); ++a)
            for (int b : children_[static_cast<std::size_t>(a)]) out.emplace_back(a, b);
        return out;
    }

    // Parents precede children; ties broken by declaration order.
    std::vector<int> topological_order() const {
        const int n = vertex_count();
        std::vector<int> indeg(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            indeg[static_cast<std::size_t>(v)] =
                static_cast<int>(parents_[static_cast<std::size_t>(v)].size());
        std::vector<int> order;
        order.reserve(static_cast<std::size_t>(n));
        std::vector<char> placed(static_cast<std::size_t>(n), 0);
        for (int step = 0; step < n; ++step) {
            int pick = -1;
            for (int v = 0; v < n; ++v) {
                if (!placed[static_cast<std::size_t>(v)] && indeg[static_cast<std::size_t>(v)] == 0) {
                    pick = v;
                    break;
                }
            }
            if (pick < 0) throw std::logic_error("topological_order: cycle detected");
            placed[static_cast<std::size_t>(pick)] = 1;
            order.push_back(pick);
            for (int c : children_[static_cast<std::size_t>(pick)]) --indeg[static_cast<std::size_t>(c)];
        }
        return order;
    }

    // All vertices reachable from v by directed paths, excluding v; sorted.
    std::vector<int> descendants(int v) const {
        check_vertex(v);
        std::vector<char> seen(static_cast<std::size_t>(vertex_count()), 0);
        std::vector<int> stack{v};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int c : children_[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(c)]) {
                    seen[static_cast<std::size_t>(c)] = 1;
                    stack.push_back(c);
                }
            }
        }
        std::vector<int> out;
        for (int u = 0; u < vertex_count(); ++u)
            if (seen[static_cast<std::size_t>(u)] && u != v) out.push_back(u);
        return out;
    }

    // d-separation of x and y given z (Bayes-ball reachability). When
    // strip_out_of >= 0, the query runs on the graph with all edges out of
    // that vertex deleted (the back-door surgery graph).
    bool d_separated(int x, int y, const std::vector<int>& z, int strip_out_of = -1) const {
        check_vertex(x);
        check_vertex(y);
        if (x == y) throw std::invalid_argument("d_separated: x and y must be distinct");
        for (int v : z) {
            check_vertex(v);
            if (v == x || v == y)
                throw std::invalid_argument("d_separated: conditioning set contains '" +
                                            names_[static_cast<std::size_t>(v)] + "'");
        }
        if (masks_valid()) {
            std::uint64_t zmask = 0;
            for (int v : z) zmask |= 1ULL << v;
            return bayes_ball_bits(x, y, zmask, strip_out_of);
        }
        return bayes_ball_general(x, y, z, strip_out_of);
    }

    bool d_separated_bits(int x, int y, std::uint64_t zmask, int strip_out_of = -1) const {
        return bayes_ball_bits(x, y, zmask, strip_out_of);
    }

    std::string to_string() const {
        std::string out = "vertices: ";
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (i) out += ',';
            out += names_[i];
        }
        out += '\n';
        for (const auto& [a, b] : edges()) {
            out += names_[static_cast<std::size_t>(a)];
            out += " -> ";
            out += names_[static_cast<std::size_t>(b)];
            out += '\n';
        }
        return out;
    }

    static Dag parse(const std::string& text) {
        const detail::ParsedGraph pg = detail::parse_graph_text(text);
        if (!pg.undirected.empty())
            throw std::runtime_error("undirected edge '" + pg.undirected.front().first + " -- " +
                                     pg.undirected.front().second + "' not allowed in a DAG file");
        Dag g(pg.names);
        for (const auto& [a, b] : pg.directed) g.add_edge(a, b);
        return g;
    }

    friend bool operator==(const Dag& g, const Dag& h) {
        return g.names_ == h.names_ && g.children_ == h.children_;
    }
    friend bool operator!=(const Dag& g, const Dag& h) { return !(g == h); }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= vertex_count())
            throw std::invalid_argument("vertex index " + std::to_string(v) + " out of range");
    }

    bool masks_valid() const { return names_.size() <= 64; }

    bool reaches(int from, int to) const {
        if (from == to) return true;
        std::vector<char> seen(static_cast<std::size_t>(vertex_count()), 0);
        std::vector<int> stack{from};
        seen[static_cast<std::size_t>(from)] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int c : children_[static_cast<std::size_t>(u)]) {
                if (c == to) return true;
                if (!seen[static_cast<std::size_t>(c)]) {
                    seen[static_cast<std::size_t>(c)] = 1;
                    stack.push_back(c);
                }
            }
        }
        return false;
    }

    bool bayes_ball_bits(int x, int y, std::uint64_t zmask, int strip) const {
        const std::uint64_t stripbit = strip >= 0 ? (1ULL << strip) : 0;
        // anc = z plus all its ancestors in the (possibly stripped) graph.
        std::uint64_t anc = zmask;
        std::uint64_t frontier = zmask;
        while (frontier) {
            std::uint64_t grow = 0;
            while (frontier) {
                const int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                grow |= pmask_[static_cast<std::size_t>(v)] & ~stripbit;
            }
            frontier = grow & ~anc;
            anc |= grow;
        }
        std::uint64_t vis_up = 0, vis_down = 0;
        std::uint64_t new_up = 1ULL << x, new_down = 0;
        const std::uint64_t ybit = 1ULL << y;
        while (new_up | new_down) {
            std::uint64_t pu = 0, pd = 0;
            while (new_up) {
                const int v = std::countr_zero(new_up);
                new_up &= new_up - 1;
                vis_up |= 1ULL << v;
                if (zmask & (1ULL << v)) continue;
                pu |= pmask_[static_cast<std::size_t>(v)] & ~stripbit;
                if (v != strip) pd |= cmask_[static_cast<std::size_t>(v)];
            }
            while (new_down) {
                const int v = std::countr_zero(new_down);
                new_down &= new_down - 1;
                vis_down |= 1ULL << v;
                if (!(zmask & (1ULL << v)) && v != strip)
                    pd |= cmask_[static_cast<std::size_t>(v)];
                if (anc & (1ULL << v)) pu |= pmask_[static_cast<std::size_t>(v)] & ~stripbit;
            }
            new_up = pu & ~vis_up;
            new_down = pd & ~vis_down;
        }
        return !((vis_up | vis_down) & ybit);
    }

    bool bayes_ball_general(int x, int y, const std::vector<int>& z, int strip) const {
        const int n = vertex_count();
        std::vector<char> in_z(static_cast<std::size_t>(n), 0);
        for (int v : z) in_z[static_cast<std::size_t>(v)] = 1;
        std::vector<char> anc(static_cast<std::size_t>(n), 0);
        std::vector<int> stack;
        for (int v : z) {
            if (!anc[static_cast<std::size_t>(v)]) {
                anc[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
        }
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int p : parents_[static_cast<std::size_t>(v)]) {
                if (p == strip) continue;
                if (!anc[static_cast<std::size_t>(p)]) {
                    anc[static_cast<std::size_t>(p)] = 1;
                    stack.push_back(p);
                }
            }
        }
        std::vector<char> vis_up(static_cast<std::size_t>(n), 0), vis_down(static_cast<std::size_t>(n), 0);
        std::vector<std::pair<int, bool>> work;  // (vertex, arriving-from-child?)
        work.emplace_back(x, true);
        while (!work.empty()) {
            const auto [v, up] = work.back();
            work.pop_back();
            auto& vis = up ? vis_up : vis_down;
            if (vis[static_cast<std::size_t>(v)]) continue;
            vis[static_cast<std::size_t>(v)] = 1;
            if (v == y) return false;
            if (up) {
                if (!in_z[static_cast<std::size_t>(v)]) {
                    for (int p : parents_[static_cast<std::size_t>(v)])
                        if (p != strip) work.emplace_back(p, true);
                    if (v != strip)
                        for (int c : children_[static_cast<std::size_t>(v)]) work.emplace_back(c, false);
                }
            } else {
                if (!in_z[static_cast<std::size_t>(v)] && v != strip)
                    for (int c : children_[static_cast<std::size_t>(v)]) work.emplace_back(c, false);
                if (anc[static_cast<std::size_t>(v)])
                    for (int p : parents_[static_cast<std::size_t>(v)])
                        if (p != strip) work.emplace_back(p, true);
            }
        }
        return true;
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> parents_, children_;
    std::vector<std::uint64_t> pmask_, cmask_;
    int n_edges_ = 0;
};

namespace detail {

// Mixed-graph working matrix for pattern algorithms. m[a*n+b] == DIR means
// a->b; an undirected edge stores UND in both cells.
struct Pattern {
    static constexpr std::uint8_t NONE = 0, UND = 1, DIR = 2;

    int n = 0;
    std::vector<std::uint8_t> m;

    explicit Pattern(int n_) : n(n_), m(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), NONE) {}

    std::uint8_t& at(int a, int b) { return m[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)]; }
    std::uint8_t at(int a, int b) const { return m[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)]; }

    bool adjacent(int a, int b) const { return at(a, b) != NONE || at(b, a) != NONE; }
    bool directed(int a, int b) const { return at(a, b) == DIR; }
    bool undirected(int a, int b) const { return at(a, b) == UND; }

    void set_directed(int a, int b) {
        at(a, b) = DIR;
        at(b, a) = NONE;
    }
    void set_undirected(int a, int b) {
        at(a, b) = UND;
        at(b, a) = UND;
    }

    bool directed_part_acyclic() const {
        std::vector<int> indeg(static_cast<std::size_t>(n), 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (directed(a, b)) ++indeg[static_cast<std::size_t>(b)];
        std::vector<int> q;
        for (int v = 0; v < n; ++v)
            if (indeg[static_cast<std::size_t>(v)] == 0) q.push_back(v);
        int removed = 0;
        while (!q.empty()) {
            const int v = q.back();
            q.pop_back();
            ++removed;
            for (int b = 0; b < n; ++b)
                if (directed(v, b) && --indeg[static_cast<std::size_t>(b)] == 0) q.push_back(b);
        }
        return removed == n;
    }

    bool directed_reaches(int from, int to) const {
        if (from == to) return true;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{from};
        seen[static_cast<std::size_t>(from)] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int b = 0; b < n; ++b) {
                if (directed(u, b)) {
                    if (b == to) return true;
                    if (!seen[static_cast<std::size_t>(b)]) {
                        seen[static_cast<std::size_t>(b)] = 1;
                        stack.push_back(b);
                    }
                }
            }
        }
        return false;
    }
};

// Orientation-propagation rules R1-R3; R4 only fires under background
// knowledge, which this toolkit does not take, so R1-R3 are complete here.
inline void meek_closure(Pattern& p) {
    const int n = p.n;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                if (!p.undirected(b, c)) continue;
                bool orient = false;
                // R1: a -> b, b -- c, a and c non-adjacent  =>  b -> c.
                for (int a = 0; a < n && !orient; ++a)
                    if (p.directed(a, b) && a != c && !p.adjacent(a, c)) orient = true;
                // R2: b -> a -> c with b -- c  =>  b -> c.
                for (int a = 0; a < n && !orient; ++a)
                    if (p.directed(b, a) && p.directed(a, c)) orient = true;
                // R3: b -- a1, b -- a2, a1 -> c, a2 -> c, a1 and a2
                // non-adjacent  =>  b -> c.
                for (int a1 = 0; a1 < n && !orient; ++a1) {
                    if (!p.undirected(b, a1) || !p.directed(a1, c)) continue;
                    for (int a2 = a1 + 1; a2 < n && !orient; ++a2)
                        if (p.undirected(b, a2) && p.directed(a2, c) && !p.adjacent(a1, a2))
                            orient = true;
                }
                if (orient) {
                    p.set_directed(b, c);
                    changed = true;
                }
            }
        }
    }
}

// Depth-first enumeration of consistent extensions: orient every undirected
// edge so the result is acyclic, keeps all base directed edges, and forms no
// v-structure absent from the base. visit() receives the per-edge choices
// (true = und[i].first -> und[i].second); returning false stops the walk.
// Returns false if the node budget was exhausted before the walk finished.
template <class Visitor>
inline bool for_each_extension(Pattern& p, const std::vector<std::pair<int, int>>& und,
                               std::vector<char>& choice, std::size_t depth, Visitor&& visit,
                               std::uint64_t& budget, bool& stopped, Rng* order_rng) {
    if (stopped) return true;
    if (budget == 0) return false;
    --budget;
    if (depth == und.size()) {
        if (!visit(choice)) stopped = true;
        return true;
    }
    const auto [a, b] = und[depth];
    bool first_ab = true;
    if (order_rng != nullptr) first_ab = order_rng->bernoulli(0.5);
    for (int attempt = 0; attempt < 2; ++attempt) {
        const bool ab = (attempt == 0) == first_ab;
        const int u = ab ? a : b;
        const int v = ab ? b : a;
        // Legal iff no directed cycle and no new collider at v with a
        // non-adjacent co-parent.
        p.at(a, b) = Pattern::NONE;
        p.at(b, a) = Pattern::NONE;
        bool ok = !p.directed_reaches(v, u);
        for (int c = 0; ok && c < p.n; ++c)
            if (c != u && p.directed(c, v) && !p.adjacent(c, u)) ok = false;
        if (ok) {
            p.set_directed(u, v);
            choice[depth] = static_cast<char>(ab);
            if (!for_each_extension(p, und, choice, depth + 1, visit, budget, stopped, order_rng)) {
                p.set_undirected(a, b);
                return false;
            }
            if (stopped) {
                p.set_undirected(a, b);
                return true;
            }
        }
        p.set_undirected(a, b);
    }
    return true;
}

}  // namespace detail

// Partially directed pattern standing for a class of DAGs: the graphs with
// the same skeleton that keep every directed edge and introduce no new
// v-structure. Construction rejects patterns with no such extension.
class Cpdag {
public:
    Cpdag(const std::vector<std::string>& names,
          const std::vector<std::pair<std::string, std::string>>& directed,
          const std::vector<std::pair<std::string, std::string>>& undirected) {
        for (const std::string& n : names) add_vertex(n);
        for (const auto& [a, b] : directed) add_directed_edge(index_of(a), index_of(b));
        for (const auto& [a, b] : undirected) add_undirected_edge(index_of(a), index_of(b));
        validate_extensible();
    }

    explicit Cpdag(const Dag& g) {
        for (const std::string& n : g.vertex_names()) add_vertex(n);
        for (const auto& [a, b] : g.edges()) add_directed_edge(a, b);
        // Any DAG is its own extension; no search needed.
    }

    static Cpdag from_indexed(const std::vector<std::string>& names,
                              const std::vector<std::pair<int, int>>& directed,
                              const std::vector<std::pair<int, int>>& undirected) {
        Cpdag c;
        for (const std::string& n : names) c.add_vertex(n);
        for (const auto& [a, b] : directed) c.add_directed_edge(a, b);
        for (const auto& [a, b] : undirected) c.add_undirected_edge(a, b);
        c.validate_extensible();
        return c;
    }

    int vertex_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& name_of(int v) const { return names_.at(static_cast<std::size_t>(v)); }

    int index_of(const std::string& name) const {
        const auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown vertex '" + name + "'");
        return it->second;
    }

    bool has_directed(int a, int b) const {
        return std::binary_search(directed_.begin(), directed_.end(), std::make_pair(a, b));
    }
    bool has_undirected(int a, int b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(undirected_.begin(), undirected_.end(), std::make_pair(a, b));
    }
    bool adjacent(int a, int b) const {
        return has_directed(a, b) || has_directed(b, a) || has_undirected(a, b);
    }
    bool has_directed(const std::string& a, const std::string& b) const {
        return has_directed(index_of(a), index_of(b));
    }
    bool has_undirected(const std::string& a, const std::string& b) const {
        return has_undirected(index_of(a), index_of(b));
    }
    bool adjacent(const std::string& a, const std::string& b) const {
        return adjacent(index_of(a), index_of(b));
    }

    const std::vector<std::pair<int, int>>& directed_edges() const { return directed_; }
    const std::vector<std::pair<int, int>>& undirected_edges() const { return undirected_; }
    int directed_edge_count() const { return static_cast<int>(directed_.size()); }
    int undirected_edge_count() const { return static_cast<int>(undirected_.size()); }

    // All consistent extensions when there are at most `cap`; otherwise `cap`
    // of them sampled without replacement under `seed`. Beyond 10,000
    // extensions the sample comes from repeated randomized orientation walks
    // and is only approximately uniform.
    std::vector<Dag> enumerate_extensions(int cap, std::uint64_t seed) const {
        if (cap < 1) throw std::invalid_argument("enumerate_extensions: cap must be >= 1");
        constexpr int kEnumerateLimit = 10000;
        detail::Pattern p = to_pattern();
        const std::vector<std::pair<int, int>>& und = undirected_;
        std::vector<char> choice(und.size(), 0);
        std::vector<std::vector<char>> found;
        std::uint64_t budget = 50'000'000;
        bool stopped = false;
        const bool finished = detail::for_each_extension(
            p, und, choice, 0,
            [&](const std::vector<char>& ch) {
                found.push_back(ch);
                return found.size() <= static_cast<std::size_t>(kEnumerateLimit);
            },
            budget, stopped, nullptr);
        if (!finished) throw std::runtime_error("enumerate_extensions: search budget exceeded");
        if (found.empty()) throw std::runtime_error("inextensible pattern");
        if (!stopped) {
            // Complete enumeration.
            if (static_cast<int>(found.size()) <= cap) {
                std::vector<Dag> out;
                out.reserve(found.size());
                for (const auto& ch : found) out.push_back(realize(ch));
                return out;
            }
            Rng rng(seed);
            std::vector<int> idx = rng.sample_without_replacement(static_cast<int>(found.size()), cap);
            std::sort(idx.begin(), idx.end());
            std::vector<Dag> out;
            out.reserve(static_cast<std::size_t>(cap));
            for (int i : idx) out.push_back(realize(found[static_cast<std::size_t>(i)]));
            return out;
        }
        // More than kEnumerateLimit extensions: draw random orientation walks
        // and deduplicate.
        std::set<std::vector<char>> distinct;
        const int max_attempts = 200 * cap;
        for (int attempt = 0; attempt < max_attempts && static_cast<int>(distinct.size()) < cap;
             ++attempt) {
            Rng walk_rng(derive_seed(seed, {0x657874ULL, static_cast<std::uint64_t>(attempt)}));
            detail::Pattern q = to_pattern();
            std::vector<char> ch(und.size(), 0);
            std::uint64_t walk_budget = 1'000'000;
            bool walk_stopped = false;
            detail::for_each_extension(
                q, und, ch, 0,
                [&](const std::vector<char>& leaf) {
                    distinct.insert(leaf);
                    return false;
                },
                walk_budget, walk_stopped, &walk_rng);
        }
        if (static_cast<int>(distinct.size()) < cap)
            throw std::runtime_error("enumerate_extensions: sampling failed to reach cap");
        std::vector<Dag> out;
        out.reserve(static_cast<std::size_t>(cap));
        for (const auto& ch : distinct) out.push_back(realize(ch));
        return out;
    }

    std::string to_string() const {
        std::string out = "vertices: ";
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (i) out += ',';
            out += names_[i];
        }
        out += '\n';
        for (const auto& [a, b] : directed_) {
            out += names_[static_cast<std::size_t>(a)];
            out += " -> ";
            out += names_[static_cast<std::size_t>(b)];
            out += '\n';
        }
        for (const auto& [a, b] : undirected_) {
            out += names_[static_cast<std::size_t>(a)];
            out += " -- ";
            out += names_[static_cast<std::size_t>(b)];
            out += '\n';
        }
        return out;
    }

    static Cpdag parse(const std::string& text) {
        const detail::ParsedGraph pg = detail::parse_graph_text(text);
        Cpdag c;
        for (const std::string& n : pg.names) c.add_vertex(n);
        for (const auto& [a, b] : pg.directed) c.add_directed_edge(c.index_of(a), c.index_of(b));
        for (const auto& [a, b] : pg.undirected) c.add_undirected_edge(c.index_of(a), c.index_of(b));
        c.validate_extensible();
        return c;
    }

    friend bool operator==(const Cpdag& a, const Cpdag& b) {
        return a.names_ == b.names_ && a.directed_ == b.directed_ && a.undirected_ == b.undirected_;
    }
    friend bool operator!=(const Cpdag& a, const Cpdag& b) { return !(a == b); }

private:
    friend Cpdag cpdag_of(const Dag& g);

    Cpdag() = default;

    void add_vertex(const std::string& name) {
        detail::validate_vertex_name(name);
        if (index_.count(name)) throw std::invalid_argument("duplicate vertex '" + name + "'");
        index_.emplace(name, static_cast<int>(names_.size()));
        names_.push_back(name);
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= vertex_count())
            throw std::invalid_argument("vertex index " + std::to_string(v) + " out of range");
    }

    void check_new_pair(int a, int b) const {
        if (a == b)
            throw std::invalid_argument("edge " + names_[static_cast<std::size_t>(a)] + " -> " +
                                        names_[static_cast<std::size_t>(a)] + " is a self-loop");
        if (has_directed(a, b) || has_directed(b, a) || has_undirected(a, b))
            throw std::invalid_argument("pair " + names_[static_cast<std::size_t>(a)] + ", " +
                                        names_[static_cast<std::size_t>(b)] +
                                        " already carries an edge");
    }

    void add_directed_edge(int a, int b) {
        check_vertex(a);
        check_vertex(b);
        check_new_pair(a, b);
        directed_.insert(std::lower_bound(directed_.begin(), directed_.end(), std::make_pair(a, b)),
                         {a, b});
    }

    void add_undirected_edge(int a, int b) {
        check_vertex(a);
        check_vertex(b);
        if (a > b) std::swap(a, b);
        check_new_pair(a, b);
        undirected_.insert(
            std::lower_bound(undirected_.begin(), undirected_.end(), std::make_pair(a, b)), {a, b});
    }

    detail::Pattern to_pattern() const {
        detail::Pattern p(vertex_count());
        for (const auto& [a, b] : directed_) p.set_directed(a, b);
        for (const auto& [a, b] : undirected_) p.set_undirected(a, b);
        return p;
    }

    void validate_extensible() const {
        detail::Pattern p = to_pattern();
        if (!p.directed_part_acyclic()) throw std::runtime_error("inextensible pattern");
        std::vector<char> choice(undirected_.size(), 0);
        bool found = false;
        std::uint64_t budget = 50'000'000;
        bool stopped = false;
        const bool finished = detail::for_each_extension(
            p, undirected_, choice, 0,
            [&](const std::vector<char>&) {
                found = true;
                return false;
            },
            budget, stopped, nullptr);
        if (!finished) throw std::runtime_error("extension search budget exceeded");
        if (!found) throw std::runtime_error("inextensible pattern");
    }

    Dag realize(const std::vector<char>& choice) const {
        Dag g(names_);
        for (const auto& [a, b] : directed_) g.add_edge(a, b);
        for (std::size_t i = 0; i < undirected_.size(); ++i) {
            const auto& [a, b] = undirected_[i];
            if (choice[i])
                g.add_edge(a, b);
            else
                g.add_edge(b, a);
        }
        return g;
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::pair<int, int>> directed_;    // sorted (a, b) meaning a -> b
    std::vector<std::pair<int, int>> undirected_;  // sorted (min, max)
};

inline std::vector<std::string> topological_order(const Dag& g) {
    std::vector<std::string> out;
    for (int v : g.topological_order()) out.push_back(g.name_of(v));
    return out;
}

inline VertexSet descendants(const Dag& g, const std::string& v) {
    VertexSet out;
    for (int d : g.descendants(g.index_of(v))) out.insert(g.name_of(d));
    return out;
}

inline bool d_separated(const Dag& g, const std::string& x, const std::string& y,
                        const VertexSet& z) {
    std::vector<int> zi;
    zi.reserve(z.size());
    for (const std::string& name : z) zi.push_back(g.index_of(name));
    return g.d_separated(g.index_of(x), g.index_of(y), zi);
}

// Completed pattern of g's Markov equivalence class: skeleton, v-structures,
// and every further orientation the Meek rules force.
inline Cpdag cpdag_of(const Dag& g) {
    const int n = g.vertex_count();
    detail::Pattern p(n);
    for (const auto& [a, b] : g.edges()) p.set_undirected(a, b);
    for (int c = 0; c < n; ++c) {
        const std::vector<int>& pa = g.parents(c);
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = i + 1; j < pa.size(); ++j)
                if (!g.adjacent(pa[i], pa[j])) {
                    p.set_directed(pa[i], c);
                    p.set_directed(pa[j], c);
                }
    }
    detail::meek_closure(p);
    Cpdag out;
    for (const std::string& name : g.vertex_names()) out.add_vertex(name);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (p.directed(a, b)) out.add_directed_edge(a, b);
            if (a < b && p.undirected(a, b)) out.add_undirected_edge(a, b);
        }
    // g itself extends its own pattern; skip the search.
    return out;
}

inline std::vector<Dag> enumerate_extensions(const Cpdag& c, int cap, std::uint64_t seed) {
    return c.enumerate_extensions(cap, seed);
}

}  // namespace causeval
