#include <cmath>
#include <random>
#include <unordered_set>

#include <Eigen/Dense>

#include "geodlab/random_walks.hpp"
#include "geodlab/rng.hpp"
#include "support.hpp"

using namespace geodlab;
using testsupport::corpus;
using testsupport::error_code;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

// Matrix-power oracle: start law times P^n by repeated squaring.
std::vector<double> law_by_squaring(const Graph& g, const NBRWKernel& k, int n) {
    Matrix R = Matrix::identity(k.P.rows()), B = k.P;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) R = R * B;
        B = B * B;
    }
    std::vector<double> x = R.apply_left(k.start), out(g.num_vertices(), 0.0);
    for (int e = 0; e < g.num_edges(); ++e) out[g.edge(e).from] += x[e];
    return out;
}

} // namespace

TEST_SUITE("random_walks") {

TEST_CASE("seed derivation test vectors") {
    CHECK(splitmix64_mix(kGolden) == 0xE220A8397B1DCDAFULL);
    CHECK(derive_seed(0, 0) == 0xE220A8397B1DCDAFULL);
    SplitMix64 r(0);
    CHECK(r.next() == 0xE220A8397B1DCDAFULL);
    CHECK(r.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(derive_seed(42, 7) == derive_seed(42, 7));
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000000; ++i) seen.insert(derive_seed(12345, i));
    CHECK(seen.size() == 1000000);
}

TEST_CASE("NBRW kernels are stochastic") {
    for (const char* name : {"fig8", "petersen", "graph_of_groups", "dumbbell", "theta", "biregular_2_3"}) {
        Graph g = corpus(name);
        NBRWKernel k = nbrw_kernel(g, point_subgraph(0));
        double s0 = 0;
        for (double x : k.start) s0 += x;
        CHECK(std::fabs(s0 - 1) < 1e-14);
        for (std::size_t i = 0; i < k.P.rows(); ++i) {
            double s = 0;
            for (std::size_t j = 0; j < k.P.cols(); ++j) {
                CHECK(k.P(i, j) >= 0);
                s += k.P(i, j);
            }
            CHECK(std::fabs(s - 1) < 1e-14);
        }
    }
    CHECK(error_code([] { nbrw_kernel(corpus("two_vertex"), point_subgraph(0)); }) == "degenerate");
}

TEST_CASE("figure-8 walk stays at its vertex") {
    Graph g = corpus("fig8");
    for (int n : {0, 1, 7}) {
        VertexLaw l = nbrw_exact(g, point_subgraph(0), n);
        CHECK(l.prob[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(l.tv < 1e-15);
    }
}

TEST_CASE("Petersen walk converges to the uniform law") {
    Graph g = corpus("petersen");
    VertexLaw l = nbrw_exact(g, point_subgraph(0), 60);
    CHECK(l.tv < 1e-3);
    CHECK_FALSE(l.bipartite_warning);
    auto oracle = law_by_squaring(g, nbrw_kernel(g, point_subgraph(0)), 60);
    for (int v = 0; v < 10; ++v) CHECK(std::fabs(l.prob[v] - oracle[v]) < 1e-13);
}

TEST_CASE("graph of groups: limit is vol/Vol, not uniform") {
    Graph g = corpus("graph_of_groups");
    VertexLaw l = nbrw_exact(g, point_subgraph(g.vertex_index("B")), 200);
    const double expect[3] = {0.2, 0.4, 0.4};
    for (int v = 0; v < 3; ++v) {
        CHECK(l.target[v] == doctest::Approx(expect[v]).epsilon(1e-14));
        CHECK(std::fabs(l.prob[v] - expect[v]) < 1e-9);
    }
    auto oracle = law_by_squaring(g, nbrw_kernel(g, point_subgraph(g.vertex_index("B"))), 37);
    VertexLaw l37 = nbrw_exact(g, point_subgraph(g.vertex_index("B")), 37);
    for (int v = 0; v < 3; ++v) CHECK(std::fabs(l37.prob[v] - oracle[v]) < 1e-13);
}

TEST_CASE("bipartite inputs carry a warning") {
    VertexLaw l = nbrw_exact(corpus("theta"), point_subgraph(0), 5);
    CHECK(l.bipartite_warning);
    CHECK(l.prob[1] == doctest::Approx(1.0)); // odd step: other class
}

TEST_CASE("two-step differences vanish on nonbipartite inputs") {
    for (const char* name : {"petersen", "dumbbell", "graph_of_groups"}) {
        Graph g = corpus(name);
        auto tv2 = [&](int n) {
            auto a = nbrw_exact(g, point_subgraph(0), n).prob, b = nbrw_exact(g, point_subgraph(0), n + 2).prob;
            double t = 0;
            for (std::size_t i = 0; i < a.size(); ++i) t += 0.5 * std::fabs(a[i] - b[i]);
            return t;
        };
        CHECK(tv2(60) <= tv2(10) + 1e-15);
        CHECK(tv2(60) < 1e-3);
    }
}

TEST_CASE("Monte-Carlo NBRW within 3 sigma of the exact law") {
    Graph g = corpus("petersen");
    const std::uint64_t reps = 100000;
    VertexSample s = nbrw_sample(g, point_subgraph(0), 60, reps, 2024);
    VertexLaw l = nbrw_exact(g, point_subgraph(0), 60);
    std::uint64_t total = 0;
    for (int v = 0; v < 10; ++v) {
        total += s.tally[v];
        const double sigma = std::sqrt(l.prob[v] * (1 - l.prob[v]) / reps);
        CHECK(std::fabs(s.empirical[v] - l.prob[v]) < 3 * sigma);
    }
    CHECK(total == reps);
}

TEST_CASE("sampling determinism") {
    Graph g = corpus("graph_of_groups");
    VertexSample one = nbrw_sample(g, point_subgraph(0), 9, 1, 5);
    int ones = 0;
    for (auto t : one.tally) ones += t == 1;
    CHECK(ones == 1);
    VertexSample a = nbrw_sample(g, point_subgraph(0), 9, 5000, 77), b = nbrw_sample(g, point_subgraph(0), 9, 5000, 77);
    CHECK(a.tally == b.tally);
    VertexSample c = nbrw_sample(g, point_subgraph(0), 9, 5000, 78);
    CHECK(a.tally != c.tally);
}

TEST_CASE("tree kernel constants") {
    TreeWalkKernel k = tree_walk_kernel(2);
    CHECK(k.kappa == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k.transient);
    TreeWalkKernel crit = tree_walk_kernel(4, -0.5 * std::log(4.0));
    CHECK_FALSE(crit.transient);
    CHECK(error_code([] { tree_harmonic_measure(4, 1, 10, 1, -0.5 * std::log(4.0)); }) == "not-transient");
    CHECK(error_code([] { green_ratio_check(4, -0.5 * std::log(4.0), 1, 2, 10, 1); }) == "not-transient");
    CHECK(error_code([] { tree_harmonic_measure(2, 1, 10, 1, 0.3); }) == "unsupported-configuration");
}

TEST_CASE("harmonic measure of shadows") {
    for (int d : {1, 2}) {
        ShadowEstimate s = tree_harmonic_measure(2, d, 200000, 99, 0.0);
        CHECK(s.target == doctest::Approx(d == 1 ? 1.0 / 3 : 1.0 / 6));
        double sum = 0;
        for (std::size_t i = 0; i < s.mass.size(); ++i) {
            const double sigma = std::sqrt(s.target * (1 - s.target) / 200000);
            CHECK(std::fabs(s.mass[i] - s.target) < 3 * sigma);
            sum += s.mass[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    }
    ShadowEstimate q3 = tree_harmonic_measure(3, 2, 100000, 4, 0.0);
    CHECK(q3.mass.size() == 12);
}

TEST_CASE("Green kernel ratio") {
    GreenRatio r = green_ratio_check(2, 0.0, 1, 2, 200000, 11);
    CHECK(r.target == doctest::Approx(2.0));
    CHECK(std::fabs(r.ratio - 2.0) < 3 * r.stderr_);
    GreenRatio same = green_ratio_check(2, 0.0, 2, 2, 1000, 3);
    CHECK(same.ratio == 1.0);
    GreenRatio r2 = green_ratio_check(2, 0.0, 1, 2, 200000, 12);
    CHECK(std::fabs(r.ratio - r2.ratio) < 3 * std::hypot(r.stderr_, r2.stderr_));
    // Returning to the root from a neighbour has probability 1/q, so
    // G(x, x) = q / (q - 1); q = 2 gives 2.
    GreenRatio root = green_ratio_check(2, 0.0, 0, 1, 200000, 13);
    CHECK(root.visits_y == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("Laplacian on two vertices") {
    Graph g = corpus("two_vertex");
    auto out = laplacian_apply(g, {3.0, -1.0});
    CHECK(out[0] == doctest::Approx(4.0));
    CHECK(out[1] == doctest::Approx(-4.0));
    Matrix L = laplacian_matrix(g);
    Eigen::Matrix2d E;
    E << L(0, 0), L(0, 1), L(1, 0), L(1, 1);
    Eigen::EigenSolver<Eigen::Matrix2d> es(E);
    std::vector<double> ev{es.eigenvalues()[0].real(), es.eigenvalues()[1].real()};
    std::sort(ev.begin(), ev.end());
    CHECK(std::fabs(ev[0]) < 1e-15);
    CHECK(ev[1] == doctest::Approx(2.0));
}

TEST_CASE("constants are harmonic") {
    std::mt19937_64 rng(6);
    for (const char* name : {"petersen", "graph_of_groups", "nagao_prefix"}) {
        Graph g = corpus(name);
        testsupport::randomize_conductance(g, rng, false);
        for (double x : laplacian_apply(g, std::vector<double>(g.num_vertices(), 2.5))) CHECK(std::fabs(x) < 1e-14);
    }
}

TEST_CASE("d* is the adjoint of d") {
    std::mt19937_64 rng(8);
    std::vector<Graph> graphs{corpus("graph_of_groups"), corpus("nagao_prefix"), corpus("biregular_2_3")};
    for (int t = 0; t < 5; ++t) graphs.push_back(testsupport::random_graph(rng, 5, 5));
    for (Graph& g : graphs) {
        testsupport::randomize_conductance(g, rng, false);
        auto f = random_vec(rng, g.num_vertices());
        auto phi = random_vec(rng, g.num_edges());
        CHECK(inner_tvol(g, d_c(g, f), phi) == doctest::Approx(inner_vol(g, f, d_c_star(g, phi))).epsilon(1e-12));
    }
}

TEST_CASE("reversible conductance on the theta graph: Laplacian equals d* d") {
    std::mt19937_64 rng(10);
    Graph g = corpus("theta");
    for (int t = 0; t < 10; ++t) {
        testsupport::randomize_conductance(g, rng, true);
        Matrix L = laplacian_matrix(g), M = dstar_d_matrix(g);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::fabs(L(i, j) - M(i, j)) < 1e-12);
        auto f = random_vec(rng, 2), h = random_vec(rng, 2);
        CHECK(std::fabs(inner_vol(g, laplacian_apply(g, f), h) - inner_vol(g, f, laplacian_apply(g, h))) < 1e-12);
        CHECK(inner_vol(g, laplacian_apply(g, f), f) >= -1e-12);
    }
}

TEST_CASE("zero conductance on regular trees: self-adjoint and positive") {
    std::mt19937_64 rng(15);
    for (const char* name : {"petersen", "graph_of_groups", "dumbbell"}) {
        Graph g = corpus(name);
        Matrix L = laplacian_matrix(g), M = dstar_d_matrix(g);
        for (std::size_t i = 0; i < L.rows(); ++i)
            for (std::size_t j = 0; j < L.cols(); ++j) CHECK(std::fabs(L(i, j) - M(i, j)) < 1e-12);
        for (int t = 0; t < 5; ++t) {
            auto f = random_vec(rng, g.num_vertices()), h = random_vec(rng, g.num_vertices());
            CHECK(std::fabs(inner_vol(g, laplacian_apply(g, f), h) - inner_vol(g, f, laplacian_apply(g, h))) < 1e-12);
            CHECK(inner_vol(g, laplacian_apply(g, f), f) >= -1e-12);
        }
    }
}

TEST_CASE("d* d and the Laplacian differ when p is not symmetric") {
    // Reversible c alone is not enough: p(e) = e^{c(e)}/deg_c(o(e)) must
    // agree with p(rev e), which fails across vertices of unequal deg_c.
    Graph g = corpus("nagao_prefix");
    Matrix L = laplacian_matrix(g), M = dstar_d_matrix(g);
    double gap = 0;
    for (std::size_t i = 0; i < L.rows(); ++i)
        for (std::size_t j = 0; j < L.cols(); ++j) gap = std::max(gap, std::fabs(L(i, j) - M(i, j)));
    CHECK(gap > 1e-3);
}

} // TEST_SUITE
