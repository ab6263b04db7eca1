#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "causeval/datagen.hpp"
#include "causeval/discovery.hpp"

using namespace causeval;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

Dataset two_binary(const std::vector<std::pair<int, int>>& rows) {
    Dataset d;
    d.add_discrete_column("x", 2, Role::covariate);
    d.add_discrete_column("y", 2, Role::covariate);
    for (auto [a, b] : rows)
        d.append_row({static_cast<double>(a), static_cast<double>(b)});
    return d;
}

std::vector<std::string> make_names(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("V" + std::to_string(i + 1));
    return out;
}

// Every labelled DAG on n vertices: each unordered pair gets one of
// {none, forward, backward}, kept when acyclic.
std::vector<Dag> all_dags(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    const auto names = make_names(n);
    std::vector<Dag> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
        std::size_t c = code;
        for (const auto& [a, b] : pairs) {
            const int choice = static_cast<int>(c % 3);
            c /= 3;
            if (choice == 1) children[static_cast<std::size_t>(a)].push_back(b);
            if (choice == 2) children[static_cast<std::size_t>(b)].push_back(a);
        }
        std::vector<int> indeg(static_cast<std::size_t>(n), 0);
        for (int v = 0; v < n; ++v)
            for (int ch : children[static_cast<std::size_t>(v)]) ++indeg[static_cast<std::size_t>(ch)];
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
        int removed = 0;
        while (!queue.empty()) {
            const int v = queue.back();
            queue.pop_back();
            ++removed;
            for (int ch : children[static_cast<std::size_t>(v)])
                if (--indeg[static_cast<std::size_t>(ch)] == 0) queue.push_back(ch);
        }
        if (removed != n) continue;
        Dag g;
        for (const auto& nm : names) g.add_vertex(nm);
        for (int v = 0; v < n; ++v)
            for (int ch : children[static_cast<std::size_t>(v)]) g.add_edge(v, ch);
        out.push_back(std::move(g));
    }
    return out;
}

Cpdag oracle_pc(const Dag& g) {
    return pc_core(
        g.vertex_names(),
        [&](int x, int y, const std::vector<int>& z) { return g.d_separated(x, y, z); },
        g.vertex_count());
}

}  // namespace

TEST_CASE("g_test matches hand-computed tables") {
    std::vector<std::pair<int, int>> diag;
    for (int i = 0; i < 10; ++i) diag.emplace_back(0, 0);
    for (int i = 0; i < 10; ++i) diag.emplace_back(1, 1);
    const CiTestResult perfect = g_test(two_binary(diag), "x", "y", {});
    REQUIRE(perfect.statistic == Approx(40.0 * std::log(2.0)).margin(1e-9));
    REQUIRE(perfect.dof == 1);
    REQUIRE(perfect.p_value < 1e-6);
    REQUIRE_FALSE(perfect.independent);

    // Counts 30, 10 / 15, 45: G from the definition, written out cell by cell.
    std::vector<std::pair<int, int>> skewed;
    skewed.insert(skewed.end(), 30, {0, 0});
    skewed.insert(skewed.end(), 10, {0, 1});
    skewed.insert(skewed.end(), 15, {1, 0});
    skewed.insert(skewed.end(), 45, {1, 1});
    const double expect = 2.0 * (30 * std::log(30 / 18.0) + 10 * std::log(10 / 22.0) +
                                 15 * std::log(15 / 27.0) + 45 * std::log(45 / 33.0));
    const CiTestResult r = g_test(two_binary(skewed), "x", "y", {});
    REQUIRE(r.statistic == Approx(expect).margin(1e-9));
    REQUIRE(r.p_value == Approx(chi2_sf(expect, 1)).margin(1e-12));
    REQUIRE(r.independent == (r.p_value > 0.05));
}

TEST_CASE("g_test separates strata and drops degenerate ones") {
    // x and y each copy z with noise: dependent marginally, independent given z.
    Dag g;
    g.add_vertex("z");
    g.add_vertex("x");
    g.add_vertex("y");
    g.add_edge("z", "x");
    g.add_edge("z", "y");
    const DiscreteNetwork net(g, {2, 2, 2},
                              {{0.5, 0.5}, {0.85, 0.15, 0.15, 0.85}, {0.8, 0.2, 0.2, 0.8}});
    const Dataset data = sample(net, 20000, 5);
    REQUIRE_FALSE(g_test(data, "x", "y", {}).independent);
    const CiTestResult cond = g_test(data, "x", "y", {"z"});
    REQUIRE(cond.independent);
    REQUIRE(cond.dof == 2);  // one (2-1)(2-1) table per stratum

    // Conditioning on an exact copy of x: within each stratum x is constant,
    // so every stratum is degenerate and the test is vacuous.
    Dataset copies;
    copies.add_discrete_column("x", 2, Role::covariate);
    copies.add_discrete_column("y", 2, Role::covariate);
    copies.add_discrete_column("w", 2, Role::covariate);
    for (int xv = 0; xv < 2; ++xv)
        for (int yv = 0; yv < 2; ++yv)
            copies.append_row({static_cast<double>(xv), static_cast<double>(yv),
                               static_cast<double>(xv)});
    const CiTestResult vacuous = g_test(copies, "x", "y", {"w"});
    REQUIRE(vacuous.dof == 0);
    REQUIRE(vacuous.statistic == 0.0);
    REQUIRE(vacuous.p_value == 1.0);
    REQUIRE(vacuous.independent);

    // A declared-but-unseen z level drops its stratum from the dof.
    Dataset gap;
    gap.add_discrete_column("x", 2, Role::covariate);
    gap.add_discrete_column("y", 3, Role::covariate);
    gap.add_discrete_column("z", 3, Role::covariate);
    for (int zl : {0, 1})  // level 2 never appears
        for (int xv = 0; xv < 2; ++xv)
            for (int yv = 0; yv < 3; ++yv)
                for (int rep = 0; rep <= xv + yv; ++rep)
                    gap.append_row({static_cast<double>(xv), static_cast<double>(yv),
                                    static_cast<double>(zl)});
    REQUIRE(g_test(gap, "x", "y", {"z"}).dof == 4);  // 2 live strata x (1)(2)

    // A stratum where y collapses to one value contributes nothing.
    Dataset collapse;
    collapse.add_discrete_column("x", 2, Role::covariate);
    collapse.add_discrete_column("y", 2, Role::covariate);
    collapse.add_discrete_column("z", 2, Role::covariate);
    for (int xv = 0; xv < 2; ++xv)
        for (int yv = 0; yv < 2; ++yv) collapse.append_row({static_cast<double>(xv), static_cast<double>(yv), 0.0});
    collapse.append_row({0.0, 0.0, 1.0});
    collapse.append_row({1.0, 0.0, 1.0});
    REQUIRE(g_test(collapse, "x", "y", {"z"}).dof == 1);

    REQUIRE_THROWS_WITH(g_test(data, "x", "x", {}), ContainsSubstring("must differ"));
    REQUIRE_THROWS_WITH(g_test(data, "x", "y", {"x"}), ContainsSubstring("conditioning set contains"));
    REQUIRE_THROWS_AS(g_test(data, "x", "y", {}, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(g_test(data, "x", "y", {}, 1.0), std::invalid_argument);
    Dataset cont;
    cont.add_continuous_column("a", Role::covariate);
    cont.add_discrete_column("b", 2, Role::covariate);
    cont.append_row({0.5, 1.0});
    REQUIRE_THROWS_WITH(g_test(cont, "a", "b", {}), ContainsSubstring("must be discrete"));
}

TEST_CASE("g_test is calibrated on independent fair coins") {
    Dag g;
    g.add_vertex("a");
    g.add_vertex("b");
    const DiscreteNetwork net(g, {2, 2}, {{0.5, 0.5}, {0.5, 0.5}});
    int independent_count = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Dataset data = sample(net, 10000, derive_seed(99, {seed}));
        independent_count += g_test(data, "a", "b", {}).independent;
    }
    REQUIRE(independent_count >= 34);  // nominal rate 0.95
}

TEST_CASE("fisher_z matches the transform on exact correlations") {
    Dataset zero;
    zero.add_continuous_column("x", Role::covariate);
    zero.add_continuous_column("y", Role::covariate);
    zero.append_row({1, 1});
    zero.append_row({1, -1});
    zero.append_row({-1, 1});
    zero.append_row({-1, -1});
    const CiTestResult r0 = fisher_z(zero, "x", "y", {});
    REQUIRE(r0.statistic == 0.0);
    REQUIRE(r0.p_value == 1.0);
    REQUIRE(r0.independent);

    // Twelve copies of an 8-point pattern with exact correlation 0.5 plus
    // seven rows at the mean, which leave the correlation unchanged: n = 103,
    // statistic = sqrt(100) * atanh(0.5).
    Dataset half;
    half.add_continuous_column("x", Role::covariate);
    half.add_continuous_column("y", Role::covariate);
    for (int rep = 0; rep < 12; ++rep) {
        for (int i = 0; i < 3; ++i) half.append_row({1, 1});
        half.append_row({1, -1});
        half.append_row({-1, 1});
        for (int i = 0; i < 3; ++i) half.append_row({-1, -1});
    }
    for (int i = 0; i < 7; ++i) half.append_row({0, 0});
    REQUIRE(half.row_count() == 103);
    const CiTestResult rh = fisher_z(half, "x", "y", {});
    REQUIRE(rh.statistic == Approx(5.493061443340548).margin(1e-12));
    REQUIRE(rh.dof == 100);
    REQUIRE_FALSE(rh.independent);

    // Statistic agrees with a correlation computed by direct sums.
    const GaussianNetwork pairnet = [] {
        Dag g;
        g.add_vertex("a");
        g.add_vertex("b");
        g.add_edge("a", "b");
        return GaussianNetwork(g, {{}, {0.8}}, {0.0, 0.0}, {1.0, 1.0});
    }();
    const Dataset sampled = sample(pairnet, 500, 21);
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (std::size_t i = 0; i < 500; ++i) {
        const double a = sampled.real_at(0, i), b = sampled.real_at(1, i);
        sa += a;
        sb += b;
        saa += a * a;
        sbb += b * b;
        sab += a * b;
    }
    const double n = 500;
    const double corr = (sab / n - sa / n * sb / n) /
                        std::sqrt((saa / n - sa / n * sa / n) * (sbb / n - sb / n * sb / n));
    const CiTestResult rs = fisher_z(sampled, "a", "b", {});
    REQUIRE(rs.statistic == Approx(std::sqrt(497.0) * std::atanh(corr)).margin(1e-9));
}

TEST_CASE("fisher_z detects conditional independence along a chain") {
    Dag g;
    g.add_vertex("A");
    g.add_vertex("B");
    g.add_vertex("C");
    g.add_edge("A", "B");
    g.add_edge("B", "C");
    const GaussianNetwork chain(g, {{}, {1.0}, {1.0}}, {0, 0, 0}, {1, 1, 1});
    int conditional_independent = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dataset data = sample(chain, 50000, derive_seed(7, {seed}));
        conditional_independent += fisher_z(data, "A", "C", {"B"}).independent;
        REQUIRE_FALSE(fisher_z(data, "A", "C", {}).independent);
    }
    REQUIRE(conditional_independent >= 18);  // nominal rate 0.95
}

TEST_CASE("fisher_z rejects unusable inputs") {
    Dataset d;
    d.add_continuous_column("x", Role::covariate);
    d.add_continuous_column("y", Role::covariate);
    d.add_continuous_column("copy", Role::covariate);
    d.add_continuous_column("flat", Role::covariate);
    const double xs[] = {1.0, 2.0, -1.5, 0.25, 3.0, -2.0};
    const double ys[] = {0.5, -1.0, 2.0, 1.5, -0.5, 1.0};
    for (int i = 0; i < 6; ++i) d.append_row({xs[i], ys[i], xs[i], 7.0});
    REQUIRE_THROWS_WITH(fisher_z(d, "x", "y", {"copy"}), ContainsSubstring("singular"));
    REQUIRE_THROWS_WITH(fisher_z(d, "x", "flat", {}), ContainsSubstring("zero variance"));
    REQUIRE_THROWS_WITH(fisher_z(d, "x", "x", {}), ContainsSubstring("must differ"));

    Dataset tiny;
    tiny.add_continuous_column("x", Role::covariate);
    tiny.add_continuous_column("y", Role::covariate);
    tiny.add_continuous_column("z", Role::covariate);
    for (int i = 0; i < 4; ++i)
        tiny.append_row({static_cast<double>(i), static_cast<double>(i * i), static_cast<double>(-i)});
    REQUIRE_THROWS_WITH(fisher_z(tiny, "x", "y", {"z"}), ContainsSubstring("more than |z| + 3"));

    // Discrete columns are numeric enough for the z test.
    Dataset coded;
    coded.add_discrete_column("a", 2, Role::covariate);
    coded.add_discrete_column("b", 3, Role::covariate);
    for (int i = 0; i < 12; ++i) coded.append_row({static_cast<double>(i % 2), static_cast<double>(i % 3)});
    REQUIRE_NOTHROW(fisher_z(coded, "a", "b", {}));
}

TEST_CASE("pc with an exact d-separation oracle recovers every small equivalence class") {
    int mismatches = 0;
    for (int n = 2; n <= 4; ++n)
        for (const Dag& g : all_dags(n))
            if (!(oracle_pc(g) == cpdag_of(g))) ++mismatches;
    REQUIRE(mismatches == 0);

    for (int rep = 0; rep < 200; ++rep) {
        const int n = 5 + rep % 2;
        const Dag g = random_dag(n, std::min(3.0, n - 1.0), derive_seed(31, {static_cast<std::uint64_t>(rep)}));
        if (!(oracle_pc(g) == cpdag_of(g))) ++mismatches;
    }
    REQUIRE(mismatches == 0);
}

TEST_CASE("pc finds nothing among independent columns") {
    Dag g;
    for (int i = 0; i < 5; ++i) g.add_vertex("X" + std::to_string(i));
    const DiscreteNetwork net = gen_logistic(g, 0.375, 3);
    const Dataset data = sample(net, 20000, 44);
    const Cpdag learned = pc(data, CiKind::g_test, 0.001);
    REQUIRE(learned.directed_edge_count() == 0);
    REQUIRE(learned.undirected_edge_count() == 0);
}

TEST_CASE("pc recovers a strong collider with high probability") {
    Dag g;
    g.add_vertex("A");
    g.add_vertex("B");
    g.add_vertex("C");
    g.add_edge("A", "C");
    g.add_edge("B", "C");
    const Cpdag truth = cpdag_of(g);
    REQUIRE(truth.has_directed("A", "C"));  // v-structure orients the class
    int recovered = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const DiscreteNetwork net = gen_logistic(g, 3.0, 1);
        const Dataset data = sample(net, 50000, derive_seed(17, {seed}));
        recovered += pc(data, CiKind::g_test) == truth;
    }
    REQUIRE(recovered >= 95);
}

TEST_CASE("pc leaves a chain undirected as its equivalence class") {
    Dag g;
    g.add_vertex("X");
    g.add_vertex("Y");
    g.add_vertex("Z");
    g.add_edge("X", "Y");
    g.add_edge("Y", "Z");
    const Cpdag truth = cpdag_of(g);
    REQUIRE(truth.undirected_edge_count() == 2);

    const DiscreteNetwork dnet = gen_logistic(g, 3.0, 5);
    REQUIRE(pc(sample(dnet, 50000, 6), CiKind::g_test) == truth);

    const GaussianNetwork gnet(g, {{}, {1.0}, {1.0}}, {0, 0, 0}, {1, 1, 1});
    REQUIRE(pc(sample(gnet, 50000, 7), CiKind::fisher_z) == truth);
}

TEST_CASE("pc output always admits a consistent extension") {
    for (int rep = 0; rep < 30; ++rep) {
        const std::uint64_t seed = derive_seed(55, {static_cast<std::uint64_t>(rep)});
        const Dag g = random_dag(6, 2.0, seed);
        const DiscreteNetwork net = gen_dirichlet(g, 2, 10.0, seed + 1);
        const Dataset data = sample(net, 150, seed + 2);  // noisy on purpose
        const Cpdag learned = pc(data, CiKind::g_test);
        REQUIRE(learned.vertex_count() == 6);
        REQUIRE_NOTHROW(learned.enumerate_extensions(3, 1));
    }
}

TEST_CASE("pc skips id columns and validates arguments") {
    Dataset d;
    d.add_discrete_column("id", 4, Role::id);
    d.add_discrete_column("a", 2, Role::covariate);
    d.add_discrete_column("b", 2, Role::covariate);
    for (int i = 0; i < 4; ++i)
        d.append_row({static_cast<double>(i), static_cast<double>(i % 2), static_cast<double>(i / 2)});
    const Cpdag learned = pc(d, CiKind::g_test);
    REQUIRE(learned.vertex_count() == 2);
    REQUIRE(learned.vertex_names() == std::vector<std::string>{"a", "b"});

    Dataset mixed;
    mixed.add_continuous_column("u", Role::covariate);
    mixed.add_discrete_column("v", 2, Role::covariate);
    mixed.append_row({0.5, 1.0});
    REQUIRE_THROWS_WITH(pc(mixed, CiKind::g_test), ContainsSubstring("must be discrete"));
    REQUIRE_THROWS_AS(pc(d, CiKind::g_test, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(pc(d, CiKind::g_test, 0.05, -1), std::invalid_argument);
}

TEST_CASE("bic_score matches hand-computed tables") {
    Dataset solo;
    solo.add_discrete_column("A", 2, Role::covariate);
    for (int i = 0; i < 3; ++i) solo.append_row({1});
    for (int i = 0; i < 7; ++i) solo.append_row({0});
    Dag lone;
    lone.add_vertex("A");
    const Score s = bic_score(lone, solo);
    const double expect = 3 * std::log(0.3) + 7 * std::log(0.7) - 0.5 * std::log(10.0);
    REQUIRE(s.total == Approx(expect).margin(1e-12));
    REQUIRE(s.per_vertex.at("A") == Approx(expect).margin(1e-12));

    // A: 6 zeros, 4 ones; B|A=0 split 5/1, B|A=1 split 1/3.
    Dataset paird;
    paird.add_discrete_column("A", 2, Role::covariate);
    paird.add_discrete_column("B", 2, Role::covariate);
    for (int i = 0; i < 5; ++i) paird.append_row({0, 0});
    paird.append_row({0, 1});
    paird.append_row({1, 0});
    for (int i = 0; i < 3; ++i) paird.append_row({1, 1});
    Dag ab;
    ab.add_vertex("A");
    ab.add_vertex("B");
    ab.add_edge("A", "B");
    const Score sp = bic_score(ab, paird);
    const double la = 6 * std::log(0.6) + 4 * std::log(0.4) - 0.5 * std::log(10.0);
    const double lb = 5 * std::log(5.0 / 6) + std::log(1.0 / 6) + std::log(1.0 / 4) +
                      3 * std::log(3.0 / 4) - 0.5 * 2 * std::log(10.0);
    REQUIRE(sp.per_vertex.at("A") == Approx(la).margin(1e-12));
    REQUIRE(sp.per_vertex.at("B") == Approx(lb).margin(1e-12));
    REQUIRE(sp.total == Approx(la + lb).margin(1e-12));

    // Unseen parent level still counts in the penalty: A declared ternary but
    // observed binary, B = A exactly, so the likelihood term is zero.
    Dataset gap;
    gap.add_discrete_column("A", 3, Role::covariate);
    gap.add_discrete_column("B", 2, Role::covariate);
    for (int i = 0; i < 8; ++i) gap.append_row({static_cast<double>(i % 2), static_cast<double>(i % 2)});
    const Score sg = bic_score(ab, gap);
    REQUIRE(sg.per_vertex.at("B") == Approx(-0.5 * 3 * std::log(8.0)).margin(1e-12));

    REQUIRE_THROWS_WITH(bic_score(ab, Dataset{}), ContainsSubstring("empty"));
}

TEST_CASE("bic_score is decomposable and penalizes spurious parents") {
    Dag g;
    for (const char* n : {"A", "B", "C"}) g.add_vertex(n);
    g.add_edge("A", "B");
    const DiscreteNetwork net = gen_dirichlet(random_dag(3, 1.0, 3), 2, 10.0, 4);
    Dataset data = sample(net, 10000, 5);
    // Rename columns positionally by rebuilding against g's names.
    Dataset renamed;
    renamed.add_discrete_column("A", 2, Role::covariate);
    renamed.add_discrete_column("B", 2, Role::covariate);
    renamed.add_discrete_column("C", 2, Role::covariate);
    for (std::size_t r = 0; r < data.row_count(); ++r)
        renamed.append_row({static_cast<double>(data.int_at(0, r)),
                            static_cast<double>(data.int_at(1, r)),
                            static_cast<double>(data.int_at(2, r))});

    Dag h;
    for (const char* n : {"A", "B", "C"}) h.add_vertex(n);
    h.add_edge("C", "B");
    const Score sg = bic_score(g, renamed);
    const Score sh = bic_score(h, renamed);
    REQUIRE(sg.per_vertex.at("A") == sh.per_vertex.at("A"));
    REQUIRE(sg.per_vertex.at("C") == sh.per_vertex.at("C"));
    double total = 0.0;
    for (const auto& [name, val] : sg.per_vertex) total += val;
    REQUIRE(sg.total == Approx(total).margin(1e-9));

    // Independent fair coins: an extra parent only costs penalty.
    Dag two;
    two.add_vertex("A");
    two.add_vertex("B");
    Dag linked = two;
    linked.add_edge("A", "B");
    Dataset coins;
    coins.add_discrete_column("A", 2, Role::covariate);
    coins.add_discrete_column("B", 2, Role::covariate);
    Rng rng(9);
    for (int i = 0; i < 10000; ++i)
        coins.append_row({static_cast<double>(rng.bernoulli(0.5)), static_cast<double>(rng.bernoulli(0.5))});
    REQUIRE(bic_score(linked, coins).total < bic_score(two, coins).total);

    // Deterministic copy: the gain is exactly n ln 2 - (ln n)/2.
    Dataset copy;
    copy.add_discrete_column("A", 2, Role::covariate);
    copy.add_discrete_column("B", 2, Role::covariate);
    for (int i = 0; i < 1000; ++i) copy.append_row({static_cast<double>(i % 2), static_cast<double>(i % 2)});
    const double gain = bic_score(linked, copy).total - bic_score(two, copy).total;
    REQUIRE(gain == Approx(1000 * std::log(2.0) - 0.5 * std::log(1000.0)).margin(1e-9));
}

TEST_CASE("hill_climb finds deterministic local optima") {
    Dag empty4;
    for (int i = 0; i < 4; ++i) empty4.add_vertex("X" + std::to_string(i));
    const DiscreteNetwork indep = gen_logistic(empty4, 0.375, 8);
    const Dataset coins = sample(indep, 10000, 9);
    const Dag learned_empty = hill_climb(coins);
    REQUIRE(learned_empty.edges().empty());

    Dataset copy;
    copy.add_discrete_column("A", 2, Role::covariate);
    copy.add_discrete_column("B", 2, Role::covariate);
    for (int i = 0; i < 1000; ++i) copy.append_row({static_cast<double>(i % 2), static_cast<double>(i % 2)});
    const Dag learned_copy = hill_climb(copy);
    REQUIRE(learned_copy.edges().size() == 1);
    REQUIRE(learned_copy.adjacent(0, 1));
    REQUIRE(hill_climb(copy, 0).edges().empty());

    Dag chain;
    chain.add_vertex("X");
    chain.add_vertex("Y");
    chain.add_vertex("Z");
    chain.add_edge("X", "Y");
    chain.add_edge("Y", "Z");
    const Dataset chain_data = sample(gen_logistic(chain, 3.0, 10), 20000, 11);
    const Dag learned_chain = hill_climb(chain_data);
    REQUIRE(learned_chain.edges().size() == 2);
    REQUIRE(learned_chain.adjacent(learned_chain.index_of("X"), learned_chain.index_of("Y")));
    REQUIRE(learned_chain.adjacent(learned_chain.index_of("Y"), learned_chain.index_of("Z")));
    REQUIRE_FALSE(learned_chain.adjacent(learned_chain.index_of("X"), learned_chain.index_of("Z")));
    REQUIRE(hill_climb(chain_data).to_string() == learned_chain.to_string());
    Dag bare;
    for (const auto& nm : chain.vertex_names()) bare.add_vertex(nm);
    REQUIRE(bic_score(learned_chain, chain_data).total > bic_score(bare, chain_data).total);
}

TEST_CASE("hill_climb results are single-move local optima") {
    Dag chain;
    chain.add_vertex("X");
    chain.add_vertex("Y");
    chain.add_vertex("Z");
    chain.add_edge("X", "Y");
    chain.add_edge("Y", "Z");
    const Dataset data = sample(gen_logistic(chain, 3.0, 12), 5000, 13);
    const Dag g = hill_climb(data);
    const double base = bic_score(g, data).total;
    const int n = g.vertex_count();
    int improving_moves = 0;
    const auto score_edges = [&](std::vector<std::pair<int, int>> edges) {
        Dag h;
        for (const auto& nm : g.vertex_names()) h.add_vertex(nm);
        std::sort(edges.begin(), edges.end());
        try {
            for (const auto& [a, b] : edges) h.add_edge(a, b);
        } catch (const std::invalid_argument&) {
            return base;  // cyclic candidate: not a legal move
        }
        return bic_score(h, data).total;
    };
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            auto edges = g.edges();
            if (g.has_edge(x, y)) {
                auto removed = edges;
                removed.erase(std::find(removed.begin(), removed.end(), std::make_pair(x, y)));
                if (score_edges(removed) > base + 1e-9) ++improving_moves;
                auto reversed = removed;
                reversed.emplace_back(y, x);
                if (score_edges(reversed) > base + 1e-9) ++improving_moves;
            } else if (!g.has_edge(y, x)) {
                edges.emplace_back(x, y);
                if (score_edges(edges) > base + 1e-9) ++improving_moves;
            }
        }
    REQUIRE(improving_moves == 0);
}

TEST_CASE("hill_climb skips id columns and validates input") {
    Dataset d;
    d.add_discrete_column("id", 8, Role::id);
    d.add_discrete_column("a", 2, Role::covariate);
    d.add_discrete_column("b", 2, Role::covariate);
    for (int i = 0; i < 8; ++i)
        d.append_row({static_cast<double>(i), static_cast<double>(i % 2), static_cast<double>((i / 2) % 2)});
    const Dag g = hill_climb(d);
    REQUIRE(g.vertex_count() == 2);
    REQUIRE_THROWS_AS(hill_climb(Dataset{}), std::invalid_argument);
    Dataset cont;
    cont.add_continuous_column("u", Role::covariate);
    cont.append_row({0.5});
    REQUIRE_THROWS_WITH(hill_climb(cont), ContainsSubstring("must be discrete"));
}

TEST_CASE("learner manifest lines carry provenance") {
    const std::string line = learner_manifest("pc", 0.05, 7);
    REQUIRE(line == "# algorithm=pc alpha=0.05 seed=7\n");
    REQUIRE(ci_kind_from_name("g-test") == CiKind::g_test);
    REQUIRE(ci_kind_name(CiKind::fisher_z) == "fisher-z");
    REQUIRE_THROWS_WITH(ci_kind_from_name("chi"), ContainsSubstring("unknown CI test"));
}
