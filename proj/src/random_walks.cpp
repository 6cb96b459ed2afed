#include "geodlab/random_walks.hpp"

#include <cmath>
#include <set>

#include "geodlab/rng.hpp"

namespace geodlab {

namespace {
const char* kMod = "random_walks";

// Draws an index with probability proportional to integer weights.
int pick(SplitMix64& rng, const std::vector<std::pair<int, long>>& w) {
    long total = 0;
    for (const auto& [x, k] : w) total += k;
    long r = static_cast<long>(rng.below(static_cast<std::uint64_t>(total)));
    for (const auto& [x, k] : w) {
        if (r < k) return x;
        r -= k;
    }
    return w.back().first;
}

void check_tree_params(int q, int depth, const char* op) {
    if (q < 2) throw Error("bad-argument", kMod, op, "q must be at least 2");
    if (depth < 0 || depth > 12) throw Error("bad-argument", kMod, op, "depth must lie in 0..12");
}

void require_supported(const TreeWalkKernel& k, const char* op) {
    if (!k.transient) throw Error("not-transient", kMod, op, "delta_c equals log(q)/2");
    if (k.c != 0.0) throw Error("unsupported-configuration", kMod, op, "only c = 0 is simulated");
}
} // namespace

NBRWKernel nbrw_kernel(const Graph& g, const Subgraph& start) {
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.tree_degree(v) < 3)
            throw Error("degenerate", kMod, "nbrw", "vertex " + g.vertex(v).id + " has tree degree below 3");
    if (start.vertices.empty()) throw Error("bad-subgraph", kMod, "nbrw", "empty start subgraph");
    const int E = g.num_edges();
    NBRWKernel k;
    k.P = Matrix(E, E);
    k.succ_w.resize(E);
    for (int e = 0; e < E; ++e) {
        long total = 0;
        for (int f : g.out_edges(g.edge(e).to)) {
            const long w = g.index(f) - (f == g.edge(e).rev ? 1 : 0);
            if (w > 0) k.succ_w[e].push_back({f, w});
            total += w;
        }
        for (const auto& [f, w] : k.succ_w[e]) k.P(e, f) = static_cast<double>(w) / static_cast<double>(total);
    }
    std::set<int> in_sub(start.edges.begin(), start.edges.end());
    k.start.assign(E, 0.0);
    std::set<int> verts(start.vertices.begin(), start.vertices.end());
    for (int y : verts) {
        std::vector<std::pair<int, long>> w;
        long total = 0;
        for (int f : g.out_edges(y)) {
            const long x = g.index(f) - (in_sub.count(f) ? 1 : 0);
            if (x > 0) w.push_back({f, x});
            total += x;
        }
        if (total == 0) throw Error("degenerate", kMod, "nbrw", "no admissible first edge at " + g.vertex(y).id);
        for (const auto& [f, x] : w)
            k.start[f] += static_cast<double>(x) / static_cast<double>(total) / static_cast<double>(verts.size());
        k.start_vertices.push_back(y);
        k.start_w.push_back(std::move(w));
    }
    return k;
}

VertexLaw nbrw_exact(const Graph& g, const Subgraph& start, int n) {
    if (n < 0) throw Error("bad-argument", kMod, "nbrw_exact", "n must be nonnegative");
    const NBRWKernel k = nbrw_kernel(g, start);
    std::vector<double> x = k.start;
    for (int s = 0; s < n; ++s) x = k.P.apply_left(x);
    VertexLaw law;
    law.prob.assign(g.num_vertices(), 0.0);
    for (int e = 0; e < g.num_edges(); ++e) law.prob[g.edge(e).from] += x[e];
    const VolumeReport vr = volumes(g);
    for (int v = 0; v < g.num_vertices(); ++v)
        law.target.push_back((Rational(1, g.vertex(v).order) / vr.vol).convert_to<double>());
    for (int v = 0; v < g.num_vertices(); ++v) law.tv += 0.5 * std::fabs(law.prob[v] - law.target[v]);
    law.bipartite_warning = vr.bipartite;
    return law;
}

VertexSample nbrw_sample(const Graph& g, const Subgraph& start, int n, std::uint64_t reps, std::uint64_t seed) {
    if (reps < 1) throw Error("bad-argument", kMod, "nbrw_sample", "reps must be positive");
    if (n < 0) throw Error("bad-argument", kMod, "nbrw_sample", "n must be nonnegative");
    const NBRWKernel k = nbrw_kernel(g, start);
    VertexSample s;
    s.reps = reps;
    s.tally.assign(g.num_vertices(), 0);
    for (std::uint64_t i = 0; i < reps; ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        const std::size_t y = rng.below(k.start_vertices.size());
        int f = pick(rng, k.start_w[y]);
        for (int step = 0; step < n; ++step) f = pick(rng, k.succ_w[f]);
        ++s.tally[g.edge(f).from];
    }
    for (auto t : s.tally) s.empirical.push_back(static_cast<double>(t) / static_cast<double>(reps));
    return s;
}

TreeWalkKernel tree_walk_kernel(int q, double c) {
    if (q < 2) throw Error("bad-argument", kMod, "tree_walk_kernel", "q must be at least 2");
    TreeWalkKernel k;
    k.q = q;
    k.c = c;
    k.delta = std::log(static_cast<double>(q)) + c;
    k.kappa = (1.0 + q) / (std::exp(k.delta) + q * std::exp(-k.delta));
    k.transient = std::fabs(k.delta - 0.5 * std::log(static_cast<double>(q))) > 1e-12;
    return k;
}

ShadowEstimate tree_harmonic_measure(int q, int depth, std::uint64_t reps, std::uint64_t seed, double c) {
    check_tree_params(q, depth, "tree_harmonic_measure");
    if (depth < 1) throw Error("bad-argument", kMod, "tree_harmonic_measure", "depth must be at least 1");
    if (reps < 1) throw Error("bad-argument", kMod, "tree_harmonic_measure", "reps must be positive");
    require_supported(tree_walk_kernel(q, c), "tree_harmonic_measure");
    ShadowEstimate out;
    out.q = q;
    out.depth = depth;
    out.radius = depth + 30;
    std::size_t shadows = q + 1;
    for (int k = 1; k < depth; ++k) shadows *= q;
    std::vector<std::uint64_t> tally(shadows, 0);
    std::vector<int> labels(depth, 0); // the first depth labels of the current vertex
    for (std::uint64_t i = 0; i < reps; ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        int d = 0;
        while (d < out.radius) {
            const auto r = static_cast<int>(rng.below(q + 1));
            if (d == 0) {
                labels[0] = r;
                d = 1;
            } else if (r == 0) {
                --d;
            } else {
                if (d < depth) labels[d] = r - 1;
                ++d;
            }
        }
        // Shadow index: mixed radix, first digit base q+1, the rest base q.
        std::size_t idx = labels[0];
        for (int k = 1; k < depth; ++k) idx = idx * q + labels[k];
        ++tally[idx];
    }
    out.target = 1.0 / static_cast<double>(shadows);
    for (auto t : tally) {
        const double p = static_cast<double>(t) / static_cast<double>(reps);
        out.mass.push_back(p);
        out.stderr_.push_back(std::sqrt(p * (1 - p) / static_cast<double>(reps)));
    }
    return out;
}

GreenRatio green_ratio_check(int q, double c, int dy, int dz, std::uint64_t reps, std::uint64_t seed) {
    check_tree_params(q, std::max(dy, dz), "green_ratio_check");
    if (reps < 2) throw Error("bad-argument", kMod, "green_ratio_check", "reps must be at least 2");
    const TreeWalkKernel k = tree_walk_kernel(q, c);
    require_supported(k, "green_ratio_check");
    const int radius = std::max(dy, dz) + 30;
    // y and z are the all-zero label paths of lengths dy and dz.
    double sy = 0, sz = 0, syy = 0, szz = 0, syz = 0;
    for (std::uint64_t i = 0; i < reps; ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        int d = 0, zeros = 0;
        double vy = 0, vz = 0;
        for (;;) {
            if (zeros == d) {
                vy += d == dy;
                vz += d == dz;
            }
            if (d == radius) break;
            const auto r = static_cast<int>(rng.below(q + 1));
            if (d > 0 && r == 0) {
                if (zeros == d) --zeros;
                --d;
            } else {
                const int label = d == 0 ? r : r - 1;
                if (zeros == d && label == 0) ++zeros;
                ++d;
            }
        }
        sy += vy;
        sz += vz;
        syy += vy * vy;
        szz += vz * vz;
        syz += vy * vz;
    }
    const double n = static_cast<double>(reps);
    GreenRatio g;
    g.visits_y = sy / n;
    g.visits_z = sz / n;
    g.ratio = g.visits_y / g.visits_z;
    // Delta-method standard error of a ratio of means.
    const double vyy = (syy - n * g.visits_y * g.visits_y) / (n - 1);
    const double vzz = (szz - n * g.visits_z * g.visits_z) / (n - 1);
    const double vyz = (syz - n * g.visits_y * g.visits_z) / (n - 1);
    const double mz = g.visits_z, r = g.ratio;
    const double var = (vyy - 2 * r * vyz + r * r * vzz) / (mz * mz * n);
    g.stderr_ = std::sqrt(std::max(var, 0.0));
    g.target = std::exp(-k.delta * (dy - dz));
    return g;
}

std::vector<double> weighted_degree(const Graph& g) {
    std::vector<double> deg(g.num_vertices(), 0.0);
    for (int e = 0; e < g.num_edges(); ++e)
        deg[g.edge(e).from] += static_cast<double>(g.index(e)) * std::exp(g.edge(e).conductance);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!(deg[v] > 0)) throw Error("bad-argument", kMod, "laplacian", "vertex " + g.vertex(v).id + " has deg_c = 0");
    return deg;
}

std::vector<double> edge_probability(const Graph& g) {
    const auto deg = weighted_degree(g);
    std::vector<double> p(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) p[e] = std::exp(g.edge(e).conductance) / deg[g.edge(e).from];
    return p;
}

std::vector<double> laplacian_apply(const Graph& g, const std::vector<double>& f) {
    const auto deg = weighted_degree(g);
    std::vector<double> out(g.num_vertices(), 0.0);
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        out[ed.from] += static_cast<double>(g.index(e)) * std::exp(ed.conductance) * (f[ed.from] - f[ed.to]);
    }
    for (int v = 0; v < g.num_vertices(); ++v) out[v] /= deg[v];
    return out;
}

Matrix laplacian_matrix(const Graph& g) {
    const int n = g.num_vertices();
    Matrix L(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> ej(n, 0.0);
        ej[j] = 1.0;
        const auto col = laplacian_apply(g, ej);
        for (int i = 0; i < n; ++i) L(i, j) = col[i];
    }
    return L;
}

std::vector<double> d_c(const Graph& g, const std::vector<double>& f) {
    const auto p = edge_probability(g);
    std::vector<double> out(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) out[e] = std::sqrt(p[e]) * (f[g.edge(e).to] - f[g.edge(e).from]);
    return out;
}

std::vector<double> d_c_star(const Graph& g, const std::vector<double>& phi) {
    const auto p = edge_probability(g);
    std::vector<double> out(g.num_vertices(), 0.0);
    for (int e = 0; e < g.num_edges(); ++e) {
        const int r = g.edge(e).rev;
        out[g.edge(e).from] +=
            0.5 * static_cast<double>(g.index(e)) * (std::sqrt(p[r]) * phi[r] - std::sqrt(p[e]) * phi[e]);
    }
    return out;
}

Matrix dstar_d_matrix(const Graph& g) {
    const int n = g.num_vertices();
    Matrix M(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> ej(n, 0.0);
        ej[j] = 1.0;
        const auto col = d_c_star(g, d_c(g, ej));
        for (int i = 0; i < n; ++i) M(i, j) = col[i];
    }
    return M;
}

double inner_vol(const Graph& g, const std::vector<double>& f, const std::vector<double>& h) {
    double s = 0;
    for (int v = 0; v < g.num_vertices(); ++v) s += f[v] * h[v] / static_cast<double>(g.vertex(v).order);
    return s;
}

double inner_tvol(const Graph& g, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (int e = 0; e < g.num_edges(); ++e) s += a[e] * b[e] / static_cast<double>(g.edge(e).order);
    return 0.5 * s;
}

} // namespace geodlab
