#pragma once

// Non-backtracking random walk on edge-indexed graphs of groups, the simple
// random walk on the regular tree (harmonic measure and Green kernel by
// Monte-Carlo), and the conductance-weighted Laplacian.

#include <cstdint>
#include <vector>

#include "geodlab/graph_core.hpp"
#include "geodlab/linalg.hpp"

namespace geodlab {

struct NBRWKernel {
    Matrix P;                  // edge -> edge transition probabilities
    std::vector<double> start; // law of the first edge f_0
    // Integer weights behind P and start, used by the sampler.
    std::vector<std::vector<std::pair<int, long>>> succ_w;
    std::vector<int> start_vertices;
    std::vector<std::vector<std::pair<int, long>>> start_w; // per start vertex
};

// P(f -> f') proportional to i(f') - [f' = rev f]; y_0 uniform on the start
// vertices, f_0 proportional to i(f_0) - [f_0 in E(start)]. Throws
// "degenerate" when some tree degree is below 3.
NBRWKernel nbrw_kernel(const Graph& g, const Subgraph& start);

struct VertexLaw {
    std::vector<double> prob;   // law of o(f_n)
    std::vector<double> target; // vol / Vol
    double tv = 0;
    bool bipartite_warning = false;
};
VertexLaw nbrw_exact(const Graph& g, const Subgraph& start, int n);

struct VertexSample {
    std::vector<std::uint64_t> tally;
    std::vector<double> empirical;
    std::uint64_t reps = 0;
};
// Path i uses its own stream seeded with derive_seed(seed, i).
VertexSample nbrw_sample(const Graph& g, const Subgraph& start, int n, std::uint64_t reps, std::uint64_t seed);

struct TreeWalkKernel {
    int q = 2;
    double c = 0;     // constant conductance
    double delta = 0; // log q + c
    double kappa = 1; // (1 + q) / (e^delta + q e^-delta)
    bool transient = true;
};
TreeWalkKernel tree_walk_kernel(int q, double c = 0.0);

struct ShadowEstimate {
    int q = 2, depth = 1;
    std::vector<double> mass, stderr_;
    double target = 0;
    int radius = 0;
};
// Simple random walk from the root of the (q+1)-regular tree, stopped on
// reaching distance depth + 30.
ShadowEstimate tree_harmonic_measure(int q, int depth, std::uint64_t reps, std::uint64_t seed, double c = 0.0);

struct GreenRatio {
    double ratio = 0, stderr_ = 0, target = 0;
    double visits_y = 0, visits_z = 0; // means
};
// Expected visits to y (distance dy) over visits to z (distance dz); y and
// z lie on one ray from x, so dy == dz means y == z.
GreenRatio green_ratio_check(int q, double c, int dy, int dz, std::uint64_t reps, std::uint64_t seed);

// deg_c(x) = sum_{o(e)=x} i(e) e^{c(e)}, p(e) = e^{c(e)} / deg_c(o(e)).
std::vector<double> weighted_degree(const Graph& g);
std::vector<double> edge_probability(const Graph& g);
std::vector<double> laplacian_apply(const Graph& g, const std::vector<double>& f);
Matrix laplacian_matrix(const Graph& g);
std::vector<double> d_c(const Graph& g, const std::vector<double>& f);
std::vector<double> d_c_star(const Graph& g, const std::vector<double>& phi);
Matrix dstar_d_matrix(const Graph& g);
double inner_vol(const Graph& g, const std::vector<double>& f, const std::vector<double>& h);
double inner_tvol(const Graph& g, const std::vector<double>& a, const std::vector<double>& b);

} // namespace geodlab
