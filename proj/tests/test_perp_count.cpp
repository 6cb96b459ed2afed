#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "geodlab/perp_count.hpp"
#include "support.hpp"

using namespace geodlab;
using testsupport::corpus;
using testsupport::error_code;

namespace {

// Naive enumeration of transversal non-backtracking paths of length n.
struct Naive {
    std::vector<BigInt> count;
    std::vector<double> weighted;
};

Naive naive_perps(const Graph& g, const Subgraph& minus, const Subgraph& plus, int nmax) {
    std::set<int> vm(minus.vertices.begin(), minus.vertices.end()), em(minus.edges.begin(), minus.edges.end());
    std::set<int> vp(plus.vertices.begin(), plus.vertices.end()), ep(plus.edges.begin(), plus.edges.end());
    Naive out{std::vector<BigInt>(nmax + 1), std::vector<double>(nmax + 1, 0.0)};
    std::function<void(int, int, double)> walk = [&](int last, int len, double c) {
        if (vp.count(g.edge(last).to) && !ep.count(last)) {
            out.count[len] += 1;
            out.weighted[len] += std::exp(c);
        }
        if (len == nmax) return;
        for (int f = 0; f < g.num_edges(); ++f)
            if (g.edge(f).from == g.edge(last).to && f != g.edge(last).rev) walk(f, len + 1, c + g.edge(f).conductance);
    };
    for (int e = 0; e < g.num_edges(); ++e)
        if (vm.count(g.edge(e).from) && !em.count(e)) walk(e, 1, g.edge(e).conductance);
    return out;
}

// All single vertices and all loop/edge-pair subgraphs.
std::vector<Subgraph> small_subgraphs(const Graph& g) {
    std::vector<Subgraph> out;
    for (int v = 0; v < g.num_vertices(); ++v) out.push_back(point_subgraph(v));
    for (int e = 0; e < g.num_edges(); ++e) {
        if (g.edge(e).rev < e) continue;
        Subgraph s;
        s.vertices.push_back(g.edge(e).from);
        if (g.edge(e).to != g.edge(e).from) s.vertices.push_back(g.edge(e).to);
        s.edges = {e, g.edge(e).rev};
        out.push_back(s);
    }
    return out;
}

Subgraph sub(const Graph& g, const std::string& name) { return g.resolve(name); }

} // namespace

TEST_SUITE("perp_count") {

TEST_CASE("figure-8 cumulative count is 2(3^n - 1)") {
    Graph g = corpus("fig8");
    CountSeries c = count_perpendiculars(g, sub(g, "v"), sub(g, "v"), 15);
    for (int n = 1; n <= 15; ++n) CHECK(c.cumulative[n] == 2 * (big_pow(3, n) - 1));
    CHECK(c.count[0] == 0);
}

TEST_CASE("Petersen point-to-point counts match naive enumeration") {
    Graph g = corpus("petersen");
    CountSeries c = count_perpendiculars(g, sub(g, "p0"), sub(g, "p7"), 8);
    Naive nv = naive_perps(g, sub(g, "p0"), sub(g, "p7"), 8);
    for (int n = 1; n <= 8; ++n) CHECK(c.count[n] == nv.count[n]);
}

TEST_CASE("DP equals naive enumeration on small graphs") {
    std::mt19937_64 rng(13);
    std::vector<Graph> graphs{corpus("fig8"), corpus("theta"), corpus("dumbbell")};
    while (graphs.size() < 10) {
        Graph g = testsupport::random_graph(rng, 3, 3);
        if (g.num_edges() <= 12) graphs.push_back(g);
    }
    for (Graph& g : graphs) {
        testsupport::randomize_conductance(g, rng, false);
        auto subs = small_subgraphs(g);
        for (const Subgraph& a : subs)
            for (const Subgraph& b : subs) {
                if (!error_code([&] { check_subgraph(g, a, "a"); check_subgraph(g, b, "b"); }).empty()) continue;
                CountSeries c = count_perpendiculars(g, a, b, 8);
                Naive nv = naive_perps(g, a, b, 8);
                for (int n = 1; n <= 8; ++n) {
                    CHECK(c.count[n] == nv.count[n]);
                    CHECK(c.weighted[n] == doctest::Approx(nv.weighted[n]).epsilon(1e-12));
                }
            }
    }
}

TEST_CASE("bipartite parity classes") {
    Graph g = corpus("theta");
    CountSeries c = count_perpendiculars(g, sub(g, "u"), sub(g, "u"), 12);
    for (int n = 1; n <= 12; n += 2) CHECK(c.count[n] == 0);

    Graph b = corpus("biregular_2_3");
    CountSeries d = count_perpendiculars(b, sub(b, "cyc_minus"), sub(b, "cyc_plus"), 14);
    REQUIRE(d.bipartite);
    for (int n = 1; n <= 14; ++n) {
        BigInt total = 0;
        for (int k = 0; k < 4; ++k) {
            total += d.by_class[n][k];
            // Start class a, end class b: parity of n is a xor b.
            const int a = k / 2, bb = k % 2;
            if ((a ^ bb) != n % 2) CHECK(d.by_class[n][k] == 0);
        }
        CHECK(total == d.count[n]);
    }
}

TEST_CASE("reversal duality for reversible conductances") {
    std::mt19937_64 rng(2);
    for (const char* name : {"petersen", "dumbbell", "biregular_2_3"}) {
        Graph g = corpus(name);
        testsupport::randomize_conductance(g, rng, true);
        auto subs = small_subgraphs(g);
        for (int t = 0; t < 6; ++t) {
            const Subgraph& a = subs[rng() % subs.size()];
            const Subgraph& b = subs[rng() % subs.size()];
            CountSeries ab = count_perpendiculars(g, a, b, 10), ba = count_perpendiculars(g, b, a, 10);
            for (int n = 1; n <= 10; ++n) {
                CHECK(ab.count[n] == ba.count[n]);
                CHECK(ab.weighted[n] == doctest::Approx(ba.weighted[n]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("constant conductance scales by e^{kappa n}") {
    Graph g = corpus("petersen");
    const double kappa = 0.37;
    for (int e = 0; e < g.num_edges(); ++e) g.edge_mut(e).conductance = kappa;
    CountSeries c = count_perpendiculars(g, sub(g, "p0"), sub(g, "outer"), 16);
    for (int n = 1; n <= 16; ++n)
        CHECK(c.weighted[n] == doctest::Approx(std::exp(kappa * n) * c.count[n].convert_to<double>()).epsilon(1e-9));
}

TEST_CASE("exact rational weights") {
    Graph g = corpus("dumbbell");
    for (int e = 0; e < g.num_edges(); ++e) g.edge_mut(e).weight = Rational(2, 3);
    CountSeries c = count_perpendiculars(g, sub(g, "x"), sub(g, "y"), 10);
    REQUIRE(c.exact_weighted);
    for (int n = 1; n <= 10; ++n) CHECK((*c.exact_weighted)[n] == Rational(c.count[n]) * rational_pow(2, n) / Rational(big_pow(3, n)));
}

TEST_CASE("subgraph and budget errors") {
    Graph g = corpus("fig8");
    CHECK(error_code([&] { count_perpendiculars(g, Subgraph{}, sub(g, "v"), 3); }) == "bad-subgraph");
    Subgraph half{{0}, {0}};
    CHECK(error_code([&] { count_perpendiculars(g, half, sub(g, "v"), 3); }) == "bad-subgraph");
    CHECK(error_code([&] { count_perpendiculars(corpus("graph_of_groups"), point_subgraph(0), point_subgraph(1), 3); }) ==
          "unsupported-configuration");
}

TEST_CASE("Bowen-Margulis masses") {
    Graph f8 = corpus("fig8");
    // The figure-8 lifts to the 4-regular tree, so q = 3 there.
    CHECK(*bm_mass_regular(f8, 3).exact == Rational(3, 4));
    CHECK(error_code([&] { bm_mass_regular(f8, 2); }) == "degree-mismatch");
    CHECK(*bm_mass_regular(corpus("dumbbell"), 2).exact == Rational(4, 3));
    CHECK(error_code([&] { bm_mass_regular(corpus("petersen"), 3); }) == "degree-mismatch");

    Graph b = corpus("biregular_2_3");
    CHECK(*bm_mass_biregular(b, 2, 3).exact == 48);
    CHECK(error_code([&] { bm_mass_biregular(corpus("petersen"), 2, 3); }) == "degree-mismatch");

    // The general formula reduces to both closed forms.
    CHECK(bm_mass_spherical(f8, {3}, orbit_distances(f8, {3}), 1.0).value == doctest::Approx(3.0 / 4.0).epsilon(1e-14));
    Graph pet = corpus("petersen");
    CHECK(bm_mass_spherical(pet, {2}, orbit_distances(pet, {2}), 1.0).value == doctest::Approx(20.0 / 3.0).epsilon(1e-14));
    const double mu0 = 3 / std::sqrt(2.0);
    CHECK(bm_mass_spherical(b, {2, 3}, orbit_distances(b, {2, 3}), mu0).value == doctest::Approx(48.0).epsilon(1e-13));
    CHECK(error_code([&] { bm_mass_spherical(b, {3, 2}, std::vector<int>(b.num_vertices(), 0), 1.0); }) ==
          "degree-mismatch");
}

TEST_CASE("skinning masses") {
    CHECK(*skinning_mass({"cycle", 2, 2, 2, 3}).exact == 1);
    CHECK(*skinning_mass({"point"}).exact == 1);
    SkinSpec pt{"point"};
    pt.stabiliser = 4;
    CHECK(*skinning_mass(pt).exact == Rational(1, 4));
    SkinSpec hb{"horoball", 3};
    hb.ray_volume = Rational(5, 2);
    CHECK(*skinning_mass(hb).exact == Rational(15, 8));
    SkinSpec rs{"regular-subgraph", 3};
    rs.k = 2;
    rs.length = 5;
    CHECK(*skinning_mass(rs).exact == Rational(10, 4));
    SkinSpec bc{"biregular-cycle", 3, 2};
    bc.length = 4;
    CHECK(skinning_mass(bc).value == doctest::Approx(2 / std::sqrt(2.0) + 2 * 2 / std::sqrt(3.0)));
    CHECK(error_code([] { skinning_mass({"sphere"}); }) == "unsupported-kind");
}

TEST_CASE("regular counting constant") {
    Graph f8 = corpus("fig8");
    CountSeries c8 = count_perpendiculars(f8, sub(f8, "v"), sub(f8, "v"), 20);
    AsymptoticReport r8 = theoretical_constant(f8, sub(f8, "v"), sub(f8, "v"), c8);
    CHECK(r8.constant == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r8.pass);

    Graph pet = corpus("petersen");
    CountSeries cp = count_perpendiculars(pet, sub(pet, "p0"), sub(pet, "p3"), 30);
    AsymptoticReport rp = theoretical_constant(pet, sub(pet, "p0"), sub(pet, "p3"), cp, 0.03);
    CHECK(rp.constant == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(rp.delta == doctest::Approx(std::log(2.0)));
    CHECK(rp.pass);

    // Cycle-to-point in the Petersen graph: k = 2 skinning.
    CountSeries cc = count_perpendiculars(pet, sub(pet, "outer"), sub(pet, "p7"), 30);
    AsymptoticReport rc = theoretical_constant(pet, sub(pet, "outer"), sub(pet, "p7"), cc, 0.05);
    CHECK(rc.constant == doctest::Approx(2.0 * (5.0 / 3.0) * 1.0 / (20.0 / 3.0)).epsilon(1e-14));
    CHECK(rc.pass);
}

TEST_CASE("biregular point-to-cycle constants from the parity-class assembly") {
    Graph b = corpus("biregular_2_3");
    // A degree-3 vertex off the target cycle.
    int v = -1;
    Subgraph plus = sub(b, "cyc_plus");
    std::set<int> on(plus.vertices.begin(), plus.vertices.end());
    for (int x = 0; x < b.num_vertices() && v < 0; ++x)
        if (b.tree_degree(x) == 3 && !on.count(x)) v = x;
    REQUIRE(v >= 0);
    CountSeries c = count_perpendiculars(b, point_subgraph(v), plus, 30);
    AsymptoticReport r = theoretical_constant(b, point_subgraph(v), plus, c, 0.01);
    CHECK(r.pass);
    CHECK(r.diagnostic_ratio.empty());
}

TEST_CASE("biregular cycles: closed form against the class assembly") {
    Graph b = corpus("biregular_2_3");
    CountSeries c = count_perpendiculars(b, sub(b, "cyc_minus"), sub(b, "cyc_plus"), 30);
    AsymptoticReport r = theoretical_constant(b, sub(b, "cyc_minus"), sub(b, "cyc_plus"), c);
    const double p = 2, q = 3;
    CHECK(r.constant == doctest::Approx(std::pow(std::sqrt(q) + std::sqrt(p), 2) * 16 / (2 * 5 * 48.0)));
    // The assembly from per-class skinning masses tracks the counts; the
    // closed form overshoots by a factor of about four.
    CHECK(r.diagnostic_at_nmax == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.diagnostic_ratio[29] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.ratio_at_nmax == doctest::Approx(0.2526).epsilon(1e-2));
    CHECK_FALSE(r.pass);
}

TEST_CASE("theoretical constant rejects unsupported inputs") {
    Graph g = corpus("petersen");
    CountSeries c = count_perpendiculars(g, sub(g, "p0"), sub(g, "p1"), 5);
    g.edge_mut(0).conductance = 0.5;
    CHECK(error_code([&] { theoretical_constant(g, sub(g, "p0"), sub(g, "p1"), c); }) == "unsupported-configuration");
}

TEST_CASE("closed orbits on the figure-8") {
    OrbitSeries o = closed_orbit_count(corpus("fig8"), 12);
    CHECK(o.fix[1] == 4);
    CHECK(o.fix[2] == 12);
    for (int n = 1; n <= 12; ++n) CHECK(o.fix[n] == big_pow(3, n) + 2 + (n % 2 ? -1 : 1));
    CHECK(o.orbits[2] == 4);
    CHECK(error_code([] { closed_orbit_count(corpus("fig8"), 27); }) == "budget");
}

TEST_CASE("prime orbits equal necklace enumeration") {
    Graph g = corpus("dumbbell");
    OrbitSeries o = closed_orbit_count(g, 8);
    const auto succ = nb_successors(g);
    const int E = g.num_edges();
    for (int n = 1; n <= 8; ++n) {
        std::set<std::vector<int>> classes;
        std::vector<int> w(n);
        std::function<void(int)> rec = [&](int k) {
            if (k == n) {
                if (std::find(succ[w[n - 1]].begin(), succ[w[n - 1]].end(), w[0]) == succ[w[n - 1]].end()) return;
                std::vector<int> best = w;
                bool primitive = true;
                for (int s = 1; s < n; ++s) {
                    std::vector<int> r(w.begin() + s, w.end());
                    r.insert(r.end(), w.begin(), w.begin() + s);
                    if (r == w) primitive = false;
                    best = std::min(best, r);
                }
                if (primitive) classes.insert(best);
                return;
            }
            for (int e = 0; e < E; ++e)
                if (k == 0 || std::find(succ[w[k - 1]].begin(), succ[w[k - 1]].end(), e) != succ[w[k - 1]].end()) {
                    w[k] = e;
                    rec(k + 1);
                }
        };
        rec(0);
        CHECK(o.orbits[n] == classes.size());
    }
}

TEST_CASE("Fix_n equals the trace of B_0^n") {
    Graph g = corpus("petersen");
    OrbitSeries o = closed_orbit_count(g, 24);
    Matrix B = nb_transfer(g).B, P = Matrix::identity(B.rows());
    for (int n = 1; n <= 24; ++n) {
        P = P * B;
        double tr = 0;
        for (std::size_t i = 0; i < P.rows(); ++i) tr += P(i, i);
        CHECK(o.fix[n] == BigInt(static_cast<long long>(tr)));
    }
    CHECK(o.ratio[24] == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("weighted prime orbits under constant conductance") {
    Graph g = corpus("petersen");
    const double kappa = -0.2;
    for (int e = 0; e < g.num_edges(); ++e) g.edge_mut(e).conductance = kappa;
    OrbitSeries o = closed_orbit_count(g, 12);
    for (int n = 1; n <= 12; ++n)
        CHECK(o.weighted[n] == doctest::Approx(std::exp(kappa * n) * o.orbits[n].convert_to<double>()).epsilon(1e-9));
    CHECK(o.delta == doctest::Approx(std::log(2.0) + kappa).epsilon(1e-12));
}

TEST_CASE("conjugacy class counting on the dumbbell") {
    Graph g = corpus("dumbbell");
    const int x = g.vertex_index("x"), lx = g.edge_index("lx");
    ConjugacyReport r = conjugacy_count(g, x, {lx}, 34);
    CHECK(r.lambda0 == 1);
    CHECK(r.count[0] == 0);
    CHECK(r.ratio[34] == doctest::Approx(1.0).epsilon(0.10));
    // Basepoint off the cycle.
    ConjugacyReport ry = conjugacy_count(g, g.vertex_index("y"), {lx}, 20);
    CHECK(ry.count[1] == 0);
    CHECK(error_code([&] { conjugacy_count(g, x, {lx, lx}, 10); }) == "not-a-simple-cycle");
    CHECK(error_code([&] { conjugacy_count(g, x, {lx, g.edge_index("lx_")}, 10); }) == "not-a-simple-cycle");
    CHECK(error_code([&] { conjugacy_count(g, x, {g.edge_index("bridge")}, 10); }) == "not-a-simple-cycle");
}

} // TEST_SUITE
