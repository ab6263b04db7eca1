#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "causeval/network.hpp"
#include "causeval/rng.hpp"

using namespace causeval;

namespace {

Dag parse_dag(const std::string& text) { return Dag::parse(text); }

// C -> T, C -> O, T -> O with hand-picked CPTs (vertices declared C,T,O).
DiscreteNetwork confounded_net() {
    const Dag g = parse_dag("vertices: C,T,O\nC -> T\nC -> O\nT -> O\n");
    std::vector<std::vector<double>> cpts = {
        {0.6, 0.4},                                         // P(C)
        {0.7, 0.3, 0.2, 0.8},                               // P(T|C): rows C=0, C=1
        {0.9, 0.1, 0.4, 0.6, 0.5, 0.5, 0.1, 0.9},           // P(O|C,T): rows (0,0),(0,1),(1,0),(1,1)
    };
    return DiscreteNetwork(g, {2, 2, 2}, std::move(cpts));
}

// V1 -> V3 <- V2 with V3 = V1 + 0.1 V2 + N(0,1); V1,V2 ~ N(0,1).
GaussianNetwork fig_net() {
    const Dag g = parse_dag("vertices: V1,V2,V3\nV1 -> V3\nV2 -> V3\n");
    return GaussianNetwork(g, {{}, {}, {1.0, 0.1}}, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
}

DiscreteNetwork random_discrete_net(const Dag& g, const std::vector<int>& arities, Rng& rng) {
    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::size_t rows = 1;
        for (int p : g.parents(v)) rows *= static_cast<std::size_t>(arities[static_cast<std::size_t>(p)]);
        const int k = arities[static_cast<std::size_t>(v)];
        std::vector<double> t;
        t.reserve(rows * static_cast<std::size_t>(k));
        for (std::size_t r = 0; r < rows; ++r) {
            const std::vector<double> row = rng.dirichlet(std::vector<double>(static_cast<std::size_t>(k), 1.0));
            t.insert(t.end(), row.begin(), row.end());
        }
        cpts[static_cast<std::size_t>(v)] = std::move(t);
    }
    return DiscreteNetwork(g, arities, std::move(cpts));
}

Dag random_test_dag(int n, double p, Rng& rng) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
    Dag g(names);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.uniform01() < p) g.add_edge(a, b);
    return g;
}

std::vector<double> marginal_from_joint(const std::vector<double>& joint,
                                        const std::vector<int>& arities, int v) {
    std::vector<double> out(static_cast<std::size_t>(arities[static_cast<std::size_t>(v)]), 0.0);
    std::size_t stride = 1;
    for (std::size_t u = arities.size(); u-- > static_cast<std::size_t>(v) + 1;)
        stride *= static_cast<std::size_t>(arities[u]);
    for (std::size_t i = 0; i < joint.size(); ++i)
        out[(i / stride) % static_cast<std::size_t>(arities[static_cast<std::size_t>(v)])] += joint[i];
    return out;
}

}  // namespace

TEST_CASE("discrete network validation") {
    const Dag g = parse_dag("vertices: A,B\nA -> B\n");
    CHECK_THROWS_WITH(DiscreteNetwork(g, {2, 2}, {{0.5, 0.6}, {1, 0, 0, 1}}),
                      Catch::Matchers::ContainsSubstring("probabilities sum to"));
    CHECK_THROWS_WITH(DiscreteNetwork(g, {2, 2}, {{1.5, -0.5}, {1, 0, 0, 1}}),
                      Catch::Matchers::ContainsSubstring("negative probability"));
    CHECK_THROWS_WITH(DiscreteNetwork(g, {2, 2}, {{0.5, 0.5}, {1, 0}}),
                      Catch::Matchers::ContainsSubstring("expected 4"));
    CHECK_THROWS_WITH(DiscreteNetwork(g, {1, 2}, {{1}, {1, 0, 0, 1}}),
                      Catch::Matchers::ContainsSubstring("arity must be >= 2"));
}

TEST_CASE("gaussian network validation") {
    const Dag g = parse_dag("vertices: A,B\nA -> B\n");
    CHECK_THROWS_WITH(GaussianNetwork(g, {{}, {}}, {0, 0}, {1, 1}),
                      Catch::Matchers::ContainsSubstring("weight count"));
    CHECK_THROWS_WITH(GaussianNetwork(g, {{}, {1.0}}, {0, 0}, {1, -1}),
                      Catch::Matchers::ContainsSubstring("negative variance"));
    const GaussianNetwork net(g, {{}, {2.0}}, {0.5, -1.0}, {1.0, 0.25});
    CHECK(net.weight("A", "B") == 2.0);
    CHECK_THROWS_WITH(net.weight("B", "A"), Catch::Matchers::ContainsSubstring("no edge"));
}

TEST_CASE("discrete mle matches hand counts") {
    SECTION("single binary vertex, no pseudocount") {
        const Dag g = parse_dag("vertices: A\n");
        Dataset d;
        d.add_discrete_column("A", 2, Role::covariate);
        for (double v : {1, 1, 1, 0}) d.append_row({v});
        const DiscreteNetwork net = fit_mle_discrete(g, d, 0.0);
        CHECK(net.prob(0, 0, 1) == 0.75);
        CHECK(net.prob(0, 0, 0) == 0.25);
    }
    SECTION("laplace smoothing on a child row") {
        const Dag g = parse_dag("vertices: A,B\nA -> B\n");
        Dataset d;
        d.add_discrete_column("A", 2, Role::covariate);
        d.add_discrete_column("B", 2, Role::covariate);
        for (int i = 0; i < 8; ++i) d.append_row({1, 1});
        for (int i = 0; i < 2; ++i) d.append_row({1, 0});
        d.append_row({0, 0});
        const DiscreteNetwork net = fit_mle_discrete(g, d, 1.0);
        CHECK(net.prob(1, 1, 1) == 0.75);  // (8+1)/(10+2)
        CHECK(net.prob(1, 1, 0) == 0.25);
    }
    SECTION("unseen parent row becomes uniform at zero pseudocount") {
        const Dag g = parse_dag("vertices: A,B\nA -> B\n");
        Dataset d;
        d.add_discrete_column("A", 2, Role::covariate);
        d.add_discrete_column("B", 3, Role::covariate);
        d.append_row({0, 2});
        d.append_row({0, 2});
        const DiscreteNetwork net = fit_mle_discrete(g, d, 0.0);
        CHECK(net.prob(1, 1, 0) == Catch::Approx(1.0 / 3));
        CHECK(net.prob(1, 1, 1) == Catch::Approx(1.0 / 3));
        CHECK(net.prob(1, 0, 2) == 1.0);
    }
    SECTION("errors") {
        const Dag g = parse_dag("vertices: A\n");
        Dataset d;
        d.add_continuous_column("A", Role::covariate);
        d.append_row({1.0});
        CHECK_THROWS_WITH(fit_mle_discrete(g, d, 0.0),
                          Catch::Matchers::ContainsSubstring("not discrete"));
        Dataset empty;
        empty.add_discrete_column("A", 2, Role::covariate);
        CHECK_THROWS_WITH(fit_mle_discrete(g, empty, 0.0),
                          Catch::Matchers::ContainsSubstring("empty dataset"));
        Dataset ok;
        ok.add_discrete_column("A", 2, Role::covariate);
        ok.append_row({0});
        CHECK_THROWS_WITH(fit_mle_discrete(g, ok, -0.5),
                          Catch::Matchers::ContainsSubstring("non-negative"));
    }
}

TEST_CASE("gaussian mle matches hand-computed least squares") {
    SECTION("root vertex: sample mean and unbiased variance") {
        const Dag g = parse_dag("vertices: Y\n");
        Dataset d;
        d.add_continuous_column("Y", Role::covariate);
        for (double v : {1.0, 2.0, 3.0, 6.0}) d.append_row({v});
        const GaussianNetwork net = fit_mle_gaussian(g, d);
        CHECK(net.intercept(0) == Catch::Approx(3.0).margin(1e-12));
        CHECK(net.noise_variance(0) == Catch::Approx(14.0 / 3).margin(1e-12));
    }
    SECTION("simple regression") {
        const Dag g = parse_dag("vertices: X,Y\nX -> Y\n");
        Dataset d;
        d.add_continuous_column("X", Role::covariate);
        d.add_continuous_column("Y", Role::covariate);
        const double xs[] = {0, 1, 2, 3}, ys[] = {1, 3, 4, 7};
        for (int i = 0; i < 4; ++i) d.append_row({xs[i], ys[i]});
        const GaussianNetwork net = fit_mle_gaussian(g, d);
        CHECK(net.weights(1)[0] == Catch::Approx(1.9).margin(1e-12));
        CHECK(net.intercept(1) == Catch::Approx(0.9).margin(1e-12));
        CHECK(net.noise_variance(1) == Catch::Approx(0.35).margin(1e-12));
    }
    SECTION("noiseless data floors the variance") {
        const Dag g = parse_dag("vertices: X,Y\nX -> Y\n");
        Dataset d;
        d.add_continuous_column("X", Role::covariate);
        d.add_continuous_column("Y", Role::covariate);
        for (double x : {0.0, 1.0, 2.0, 5.0}) d.append_row({x, 2 * x + 1});
        const GaussianNetwork net = fit_mle_gaussian(g, d);
        CHECK(net.weights(1)[0] == Catch::Approx(2.0).margin(1e-9));
        CHECK(net.noise_variance(1) == 1e-12);
    }
    SECTION("errors") {
        const Dag g2 = parse_dag("vertices: X,Y\nX -> Y\n");
        Dataset tiny;
        tiny.add_continuous_column("X", Role::covariate);
        tiny.add_continuous_column("Y", Role::covariate);
        tiny.append_row({1, 2});
        tiny.append_row({2, 3});
        CHECK_THROWS_WITH(fit_mle_gaussian(g2, tiny),
                          Catch::Matchers::ContainsSubstring("needs more than 2 rows"));
        const Dag g3 = parse_dag("vertices: A,B,Y\nA -> Y\nB -> Y\n");
        Dataset collinear;
        collinear.add_continuous_column("A", Role::covariate);
        collinear.add_continuous_column("B", Role::covariate);
        collinear.add_continuous_column("Y", Role::covariate);
        for (double x : {1.0, 2.0, 3.0, 4.0, 5.0}) collinear.append_row({x, x, x + 1});
        CHECK_THROWS_WITH(fit_mle_gaussian(g3, collinear),
                          Catch::Matchers::ContainsSubstring("vertex 'Y'"));
    }
}

TEST_CASE("intervention performs graph surgery") {
    const DiscreteNetwork net = confounded_net();
    SECTION("intervened vertex becomes a parentless point mass") {
        const DiscreteNetwork cut = intervene(net, "T", 1);
        CHECK(cut.dag().parents(cut.dag().index_of("T")).empty());
        CHECK(cut.dag().has_edge("C", "O"));
        CHECK(cut.dag().has_edge("T", "O"));
        const auto m = std::get<Categorical>(marginal(cut, "T"));
        CHECK(m.probs == std::vector<double>{0.0, 1.0});
    }
    SECTION("intervening a collider leaves its parents untouched") {
        const DiscreteNetwork cut = intervene(net, "O", 0);
        const auto mc = std::get<Categorical>(marginal(cut, "C"));
        CHECK(mc.probs[1] == Catch::Approx(0.4).margin(1e-12));
        const auto mt = std::get<Categorical>(marginal(cut, "T"));
        // P(T=1) = 0.6*0.3 + 0.4*0.8 = 0.5
        CHECK(mt.probs[1] == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("back-door adjustment formula, by hand") {
        // P(O=1 | do(T=1)) = sum_c P(c) P(O=1 | c, T=1) = 0.6*0.6 + 0.4*0.9 = 0.72
        const auto m1 = std::get<Categorical>(marginal(intervene(net, "T", 1), "O"));
        CHECK(m1.probs[1] == Catch::Approx(0.72).margin(1e-12));
        // P(O=1 | do(T=0)) = 0.6*0.1 + 0.4*0.5 = 0.26
        const auto m0 = std::get<Categorical>(marginal(intervene(net, "T", 0), "O"));
        CHECK(m0.probs[1] == Catch::Approx(0.26).margin(1e-12));
    }
    SECTION("invalid values are rejected") {
        CHECK_THROWS_WITH(intervene(net, "T", 2), Catch::Matchers::ContainsSubstring("outside arity"));
        CHECK_THROWS_WITH(intervene(fig_net(), "V1",
                                    std::numeric_limits<double>::quiet_NaN()),
                          Catch::Matchers::ContainsSubstring("non-finite"));
    }
}

TEST_CASE("deterministic child of an intervened root") {
    const Dag g = parse_dag("vertices: A,B\nA -> B\n");
    const DiscreteNetwork net(g, {2, 2}, {{0.5, 0.5}, {1, 0, 0, 1}});  // B = A
    const auto m = std::get<Categorical>(marginal(intervene(net, "A", 1), "B"));
    CHECK(m.probs[1] == 1.0);
}

TEST_CASE("variable elimination agrees with joint enumeration") {
    Rng rng(20260814);
    int checked = 0;
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform_below(9));  // up to 10 vertices
        const Dag g = random_test_dag(n, 0.4, rng);
        std::vector<int> arities(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) arities[static_cast<std::size_t>(v)] = 2 + static_cast<int>(rng.uniform_below(2));
        const DiscreteNetwork net = random_discrete_net(g, arities, rng);
        const std::vector<double> joint = joint_table(net);
        for (int v = 0; v < n; ++v) {
            const std::vector<double> brute = marginal_from_joint(joint, arities, v);
            const auto ve = std::get<Categorical>(marginal(net, v));
            REQUIRE(ve.probs.size() == brute.size());
            for (std::size_t s = 0; s < brute.size(); ++s) {
                REQUIRE(std::fabs(ve.probs[s] - brute[s]) < 1e-10);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("joint table rejects oversized networks") {
    std::vector<std::string> names;
    for (int i = 0; i < 25; ++i) names.push_back("b" + std::to_string(i));
    const Dag g(names);
    std::vector<std::vector<double>> cpts(25, std::vector<double>{0.5, 0.5});
    const DiscreteNetwork net(g, std::vector<int>(25, 2), std::move(cpts));
    CHECK_THROWS_WITH(joint_table(net), Catch::Matchers::ContainsSubstring("more than"));
}

TEST_CASE("gaussian marginal propagates means and covariances") {
    const GaussianNetwork net = fig_net();
    SECTION("observational") {
        const auto m = std::get<GaussianMixture>(marginal(net, "V3"));
        REQUIRE(m.components.size() == 1);
        CHECK(m.components[0].mean == Catch::Approx(0.0).margin(1e-12));
        CHECK(m.components[0].variance == Catch::Approx(2.01).margin(1e-12));
    }
    SECTION("under intervention") {
        const auto m = std::get<GaussianMixture>(marginal(intervene(net, "V1", 2.0), "V3"));
        CHECK(m.components[0].mean == Catch::Approx(2.0).margin(1e-12));
        CHECK(m.components[0].variance == Catch::Approx(1.01).margin(1e-12));
    }
    SECTION("shared-parent covariance shows up in a chain") {
        // X -> Y -> Z with unit weights: var(Z) = 1 + 1 + 1 = 3.
        const Dag g = parse_dag("vertices: X,Y,Z\nX -> Y\nY -> Z\n");
        const GaussianNetwork chain(g, {{}, {1.0}, {1.0}}, {0, 0, 0}, {1, 1, 1});
        const auto m = std::get<GaussianMixture>(marginal(chain, "Z"));
        CHECK(m.components[0].variance == Catch::Approx(3.0).margin(1e-12));
    }
}

TEST_CASE("gaussian marginal matches monte carlo") {
    Rng rng(7701);
    const Dag g = random_test_dag(6, 0.5, rng);
    std::vector<std::vector<double>> weights(6);
    std::vector<double> intercepts(6), variances(6);
    for (int v = 0; v < 6; ++v) {
        for (std::size_t i = 0; i < g.parents(v).size(); ++i)
            weights[static_cast<std::size_t>(v)].push_back(rng.uniform_real(-1.5, 1.5));
        intercepts[static_cast<std::size_t>(v)] = rng.uniform_real(-1, 1);
        variances[static_cast<std::size_t>(v)] = rng.uniform_real(0.3, 2.0);
    }
    const GaussianNetwork net(g, weights, intercepts, variances);
    const int kSamples = 200000;
    const std::vector<int> order = net.dag().topological_order();
    std::vector<double> x(6), sum(6, 0.0), sumsq(6, 0.0);
    for (int s = 0; s < kSamples; ++s) {
        for (int v : order) {
            double m = net.intercept(v);
            const auto& pa = net.dag().parents(v);
            for (std::size_t i = 0; i < pa.size(); ++i)
                m += net.weights(v)[i] * x[static_cast<std::size_t>(pa[i])];
            x[static_cast<std::size_t>(v)] = m + rng.normal() * std::sqrt(net.noise_variance(v));
        }
        for (int v = 0; v < 6; ++v) {
            sum[static_cast<std::size_t>(v)] += x[static_cast<std::size_t>(v)];
            sumsq[static_cast<std::size_t>(v)] += x[static_cast<std::size_t>(v)] * x[static_cast<std::size_t>(v)];
        }
    }
    for (int v = 0; v < 6; ++v) {
        const auto m = std::get<GaussianMixture>(marginal(net, v));
        const double mc_mean = sum[static_cast<std::size_t>(v)] / kSamples;
        const double mc_var =
            sumsq[static_cast<std::size_t>(v)] / kSamples - mc_mean * mc_mean;
        const double se_mean = std::sqrt(m.components[0].variance / kSamples);
        const double se_var = m.components[0].variance * std::sqrt(2.0 / (kSamples - 1));
        CHECK(std::fabs(mc_mean - m.components[0].mean) < 4 * se_mean);
        CHECK(std::fabs(mc_var - m.components[0].variance) < 4 * se_var);
    }
}

TEST_CASE("discrete network text round-trips") {
    const DiscreteNetwork net = confounded_net();
    const std::string text = net.to_string();
    CHECK(text.find("network: discrete") == 0);
    CHECK(text.find("C | - | 0.6 0.4") != std::string::npos);
    CHECK(text.find("O | 0,1 | 0.4 0.6") != std::string::npos);
    const DiscreteNetwork back = DiscreteNetwork::parse(text);
    CHECK(back == net);

    // Awkward probabilities still round-trip bit-exactly.
    const Dag g = Dag::parse("vertices: A\n");
    const DiscreteNetwork odd(g, {3}, {{1.0 / 3, 1.0 / 3, 1.0 - 2.0 / 3}});
    CHECK(DiscreteNetwork::parse(odd.to_string()) == odd);
}

TEST_CASE("discrete network parse rejects malformed text") {
    const std::string good = confounded_net().to_string();
    CHECK_THROWS_WITH(DiscreteNetwork::parse("network: gaussian\ngraph:\nvertices: A\nend\ncpt:\nend\n"),
                      Catch::Matchers::ContainsSubstring("expected 'network: discrete'"));
    std::string missing_row = good;
    missing_row.erase(missing_row.find("C | - | 0.6 0.4"), 16);
    CHECK_THROWS_WITH(DiscreteNetwork::parse(missing_row),
                      Catch::Matchers::ContainsSubstring("missing cpt row for 'C'"));
    CHECK_THROWS_WITH(
        DiscreteNetwork::parse("network: discrete\ngraph:\nvertices: A\nend\narities: A=2\ncpt:\nA | - | 0.5 0.25 0.25\nend\n"),
        Catch::Matchers::ContainsSubstring("too many probabilities"));
    CHECK_THROWS_WITH(
        DiscreteNetwork::parse("network: discrete\ngraph:\nvertices: A\nend\ncpt:\nA | - | 0.5 0.5\nend\n"),
        Catch::Matchers::ContainsSubstring("missing arity"));
}

TEST_CASE("gaussian network text round-trips") {
    const GaussianNetwork net = fig_net();
    const std::string text = net.to_string();
    CHECK(text.find("network: gaussian") == 0);
    CHECK(text.find("V3 | intercept 0 | variance 1 | weights 1 0.1") != std::string::npos);
    CHECK(GaussianNetwork::parse(text) == net);

    const Dag g = Dag::parse("vertices: A,B\nA -> B\n");
    const GaussianNetwork odd(g, {{}, {-1.0 / 3}}, {2.5e-17, -1e300}, {1.0000000000000002, 0.1});
    CHECK(GaussianNetwork::parse(odd.to_string()) == odd);

    std::string wrong = text;
    wrong.replace(wrong.find("weights 1 0.1"), 13, "weights 1");
    CHECK_THROWS_WITH(GaussianNetwork::parse(wrong),
                      Catch::Matchers::ContainsSubstring("1 weights, expected 2"));
}

TEST_CASE("intervention policy defaults and overrides") {
    const DiscreteNetwork dnet = confounded_net();
    InterventionPolicy policy;
    CHECK(policy.value_for(dnet, dnet.dag().index_of("T")) == 1.0);
    policy.values["T"] = 0.0;
    CHECK(policy.value_for(dnet, dnet.dag().index_of("T")) == 0.0);
    policy.values["T"] = 5.0;
    CHECK_THROWS_WITH(policy.value_for(dnet, dnet.dag().index_of("T")),
                      Catch::Matchers::ContainsSubstring("outside arity"));

    const Dag g = Dag::parse("vertices: A\n");
    const DiscreteNetwork kary(g, {5}, {{0.2, 0.2, 0.2, 0.2, 0.2}});
    InterventionPolicy fresh;
    CHECK(fresh.value_for(kary, 0) == 4.0);

    const GaussianNetwork gnet = fig_net();
    // V3 has observational marginal N(0, 2.01); default pick is its 0.9 quantile.
    const double expect = kZQuantile90 * std::sqrt(2.01);
    CHECK(fresh.value_for(gnet, gnet.dag().index_of("V3")) == Catch::Approx(expect).margin(1e-12));
    fresh.values["V3"] = -7.25;
    CHECK(fresh.value_for(gnet, gnet.dag().index_of("V3")) == -7.25);
}

TEST_CASE("elimination handles intervened and disconnected vertices") {
    Rng rng(99);
    const Dag g = random_test_dag(8, 0.35, rng);
    const std::vector<int> arities(8, 2);
    const DiscreteNetwork net = random_discrete_net(g, arities, rng);
    const DiscreteNetwork cut = intervene(net, 3, 1);
    const std::vector<double> joint = joint_table(cut);
    for (int v = 0; v < 8; ++v) {
        const std::vector<double> brute = marginal_from_joint(joint, arities, v);
        const auto ve = std::get<Categorical>(marginal(cut, v));
        for (std::size_t s = 0; s < brute.size(); ++s)
            REQUIRE(std::fabs(ve.probs[s] - brute[s]) < 1e-10);
    }
}
