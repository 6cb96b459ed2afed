#include "geodlab/perp_count.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "geodlab/geodesic_shift.hpp"

namespace geodlab {

namespace {
const char* kMod = "perp_count";

double to_double(const BigInt& x) { return x.convert_to<double>(); }

std::vector<char> vertex_mask(const Graph& g, const Subgraph& s) {
    std::vector<char> m(g.num_vertices(), 0);
    for (int v : s.vertices) m[v] = 1;
    return m;
}

std::vector<char> edge_mask(const Graph& g, const Subgraph& s) {
    std::vector<char> m(g.num_edges(), 0);
    for (int e : s.edges) m[e] = 1;
    return m;
}

// Every vertex of s meets the same number k of edges of s; -1 otherwise.
int internal_degree(const Graph& g, const Subgraph& s) {
    std::map<int, int> deg;
    for (int v : s.vertices) deg[v] = 0;
    for (int e : s.edges) ++deg[g.edge(e).from];
    int k = -1;
    for (const auto& [v, d] : deg) {
        if (k >= 0 && d != k) return -1;
        k = d;
    }
    return k;
}

bool is_simple_cycle(const Graph& g, const Subgraph& s) {
    return internal_degree(g, s) == 2 && s.edges.size() == 2 * s.vertices.size();
}

int mobius(int n) {
    int m = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
    }
    return n > 1 ? -m : m;
}

} // namespace

void check_subgraph(const Graph& g, const Subgraph& s, const std::string& what) {
    if (s.vertices.empty()) throw Error("bad-subgraph", kMod, "check_subgraph", what + " is empty");
    if (static_cast<int>(s.vertices.size()) == g.num_vertices() && static_cast<int>(s.edges.size()) == g.num_edges())
        throw Error("bad-subgraph", kMod, "check_subgraph", what + " is the whole graph");
    auto vm = vertex_mask(g, s);
    auto em = edge_mask(g, s);
    for (int e : s.edges) {
        if (!em[g.edge(e).rev]) throw Error("bad-subgraph", kMod, "check_subgraph", what + " is not reversal-closed");
        if (!vm[g.edge(e).from] || !vm[g.edge(e).to])
            throw Error("bad-subgraph", kMod, "check_subgraph", what + " has an edge leaving its vertex set");
    }
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<int> st{s.vertices.front()};
    seen[s.vertices.front()] = 1;
    std::size_t count = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int e : g.out_edges(v))
            if (em[e] && !seen[g.edge(e).to]) {
                seen[g.edge(e).to] = 1;
                ++count;
                st.push_back(g.edge(e).to);
            }
    }
    if (count != std::set<int>(s.vertices.begin(), s.vertices.end()).size())
        throw Error("bad-subgraph", kMod, "check_subgraph", what + " is not connected");
}

CountSeries count_perpendiculars(const Graph& g, const Subgraph& minus, const Subgraph& plus, int nmax) {
    if (!g.trivial_groups())
        throw Error("unsupported-configuration", kMod, "count_perpendiculars", "trivial vertex and edge groups required");
    if (nmax < 1) throw Error("bad-argument", kMod, "count_perpendiculars", "nmax must be positive");
    check_subgraph(g, minus, "Y-");
    check_subgraph(g, plus, "Y+");
    const int E = g.num_edges();
    if (static_cast<std::uint64_t>(E) * static_cast<std::uint64_t>(nmax) > enumeration_budget())
        throw Error("budget", kMod, "count_perpendiculars", "edges x nmax exceeds the budget");

    const auto vm = vertex_mask(g, minus), em = edge_mask(g, minus);
    const auto vp = vertex_mask(g, plus), ep = edge_mask(g, plus);
    const auto succ = nb_successors(g);
    bool exact = true;
    for (int e = 0; e < E; ++e) exact = exact && g.edge(e).weight.has_value();

    CountSeries out;
    const auto colour = two_coloring(g);
    out.bipartite = colour.has_value();
    // One layer per start class in the bipartite case.
    const int layers = out.bipartite ? 2 : 1;
    std::vector<std::vector<BigInt>> cnt(layers, std::vector<BigInt>(E));
    std::vector<double> w(E, 0.0);
    std::vector<Rational> wx(exact ? E : 0);
    for (int e = 0; e < E; ++e) {
        if (!vm[g.edge(e).from] || em[e]) continue;
        cnt[out.bipartite ? (*colour)[g.edge(e).from] : 0][e] = 1;
        w[e] = std::exp(g.edge(e).conductance);
        if (exact) wx[e] = *g.edge(e).weight;
    }

    out.count.assign(1, 0);
    out.cumulative.assign(1, 0);
    out.weighted.assign(1, 0.0);
    out.cum_weighted.assign(1, 0.0);
    out.by_class.assign(1, {0, 0, 0, 0});
    if (exact) out.exact_weighted = std::vector<Rational>{0};

    for (int n = 1; n <= nmax; ++n) {
        BigInt c = 0;
        double ws = 0;
        Rational xs = 0;
        std::array<BigInt, 4> cls{0, 0, 0, 0};
        for (int e = 0; e < E; ++e) {
            if (!vp[g.edge(e).to] || ep[e]) continue;
            for (int l = 0; l < layers; ++l) {
                if (cnt[l][e] == 0) continue;
                c += cnt[l][e];
                if (out.bipartite) cls[2 * l + (*colour)[g.edge(e).to]] += cnt[l][e];
            }
            ws += w[e];
            if (exact) xs += wx[e];
        }
        out.count.push_back(c);
        out.cumulative.push_back(out.cumulative.back() + c);
        out.weighted.push_back(ws);
        out.cum_weighted.push_back(out.cum_weighted.back() + ws);
        out.by_class.push_back(cls);
        if (exact) out.exact_weighted->push_back(xs);
        if (n == nmax) break;

        std::vector<std::vector<BigInt>> nc(layers, std::vector<BigInt>(E));
        std::vector<double> nw(E, 0.0);
        std::vector<Rational> nx(exact ? E : 0);
        for (int e = 0; e < E; ++e) {
            for (int f : succ[e]) {
                for (int l = 0; l < layers; ++l)
                    if (cnt[l][e] != 0) nc[l][f] += cnt[l][e];
                if (w[e] != 0.0) nw[f] += w[e] * std::exp(g.edge(f).conductance);
                if (exact && wx[e] != 0) nx[f] += wx[e] * *g.edge(f).weight;
            }
        }
        cnt = std::move(nc);
        w = std::move(nw);
        wx = std::move(nx);
    }
    return out;
}

MassValue bm_mass_regular(const Graph& g, int q) {
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.tree_degree(v) != q + 1)
            throw Error("degree-mismatch", kMod, "bm_mass", "vertex " + g.vertex(v).id + " is not of degree q+1");
    MassValue m;
    m.exact = Rational(q, q + 1) * volumes(g).vol;
    m.value = m.exact->convert_to<double>();
    m.normalisation = "probability";
    return m;
}

MassValue bm_mass_biregular(const Graph& g, int p, int q) {
    const VolumeReport r = volumes(g);
    for (int v = 0; v < g.num_vertices(); ++v) {
        const long d = g.tree_degree(v);
        if (d != p + 1 && d != q + 1)
            throw Error("degree-mismatch", kMod, "bm_mass", "vertex " + g.vertex(v).id + " has degree " + std::to_string(d));
    }
    if (p != q) {
        if (!r.bipartite) throw Error("degree-mismatch", kMod, "bm_mass", "biregular quotient must be bipartite");
        // Degrees must be constant on each colour class.
        long seen[2] = {0, 0};
        for (int v = 0; v < g.num_vertices(); ++v) {
            long& s = seen[r.color[v]];
            if (s == 0) s = g.tree_degree(v);
            else if (s != g.tree_degree(v))
                throw Error("degree-mismatch", kMod, "bm_mass", "degrees differ inside a colour class");
        }
    }
    MassValue m;
    m.exact = r.tvol;
    m.value = r.tvol.convert_to<double>();
    m.normalisation = "deg/sqrt(deg-1)";
    return m;
}

std::vector<int> orbit_distances(const Graph& g, const std::vector<int>& period) {
    if (period.empty() || period.size() > 2)
        throw Error("bad-argument", kMod, "orbit_distances", "only periods of length 1 or 2 are read off degrees");
    std::vector<int> r(g.num_vertices(), 0);
    if (period.size() == 1 || period[0] == period[1]) return r;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const long d = g.tree_degree(v);
        if (d == period[0] + 1) r[v] = 0;
        else if (d == period[1] + 1) r[v] = 1;
        else throw Error("degree-mismatch", kMod, "bm_mass", "vertex " + g.vertex(v).id);
    }
    return r;
}

MassValue bm_mass_spherical(const Graph& g, const std::vector<int>& period, const std::vector<int>& r, double mu0) {
    const int N = static_cast<int>(period.size());
    if (N == 0 || static_cast<int>(r.size()) != g.num_vertices())
        throw Error("bad-argument", kMod, "bm_mass", "period and distance table required");
    double logprod = 0;
    for (int p : period) logprod += std::log(static_cast<double>(p));
    const double h = logprod / N;
    auto P = [&](int k) { return static_cast<double>(period[k % N]); };
    double sum = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const int rx = r[v];
        if (g.tree_degree(v) != period[rx % N] + 1)
            throw Error("degree-mismatch", kMod, "bm_mass", "vertex " + g.vertex(v).id);
        double c;
        if (rx == 0) {
            c = P(0) / (P(0) + 1);
        } else {
            double den = (P(0) + 1) * (P(0) + 1) * P(rx);
            for (int k = 1; k < rx; ++k) den *= P(k) * P(k);
            c = (P(rx) - 1) * std::exp(2 * rx * h) / den + 2 * P(0) / ((P(0) + 1) * (P(0) + 1));
        }
        sum += c / static_cast<double>(g.vertex(v).order);
    }
    MassValue m;
    m.value = mu0 * mu0 * sum;
    m.normalisation = "||mu_x0|| = " + std::to_string(mu0);
    return m;
}

MassValue skinning_mass(const SkinSpec& s) {
    MassValue m;
    const double q = s.q, p = s.p;
    if (s.kind == "point") {
        m.value = s.mu / static_cast<double>(s.stabiliser);
        if (s.mu == 1.0) m.exact = Rational(1, s.stabiliser);
        m.normalisation = s.mu == 1.0 ? "probability" : "custom";
    } else if (s.kind == "horoball") {
        m.exact = Rational(s.q, s.q + 1) * s.ray_volume;
        m.value = m.exact->convert_to<double>();
        m.normalisation = "probability";
    } else if (s.kind == "cycle") {
        m.exact = Rational(s.q - 1, s.q + 1) * s.length;
        m.value = m.exact->convert_to<double>();
        m.normalisation = "probability";
    } else if (s.kind == "regular-subgraph") {
        m.value = (q + 1 - s.k) / (q + 1) * s.mu * static_cast<double>(s.length);
        if (s.mu == 1.0) m.exact = Rational(s.q + 1 - s.k, s.q + 1) * s.length;
        m.normalisation = s.mu == 1.0 ? "probability" : "custom";
    } else if (s.kind == "biregular-cycle") {
        const double half = static_cast<double>(s.length) / 2;
        m.value = (p - 1) / std::sqrt(p) * half + (q - 1) / std::sqrt(q) * half;
        m.normalisation = "deg/sqrt(deg-1)";
    } else {
        throw Error("unsupported-kind", kMod, "skinning_mass", s.kind);
    }
    return m;
}

AsymptoticReport theoretical_constant(const Graph& g, const Subgraph& minus, const Subgraph& plus,
                                      const CountSeries& counts, double tol) {
    if (!g.conductance_zero() || !g.trivial_groups())
        throw Error("unsupported-configuration", kMod, "theoretical_constant", "needs c = 0 and trivial groups");
    const int km = internal_degree(g, minus), kp = internal_degree(g, plus);
    if (km < 0 || kp < 0)
        throw Error("unsupported-configuration", kMod, "theoretical_constant", "subgraphs must be points or regular");
    const VolumeReport vr = volumes(g);
    std::set<long> degs(vr.degrees.begin(), vr.degrees.end());
    const int nmax = static_cast<int>(counts.cumulative.size()) - 1;
    AsymptoticReport rep;
    rep.expected.assign(nmax + 1, 0.0);
    rep.ratio.assign(nmax + 1, 0.0);

    auto finish = [&](std::vector<double>& expected, std::vector<double>& ratio, double& at) {
        for (int n = 1; n <= nmax; ++n) ratio[n] = to_double(counts.cumulative[n]) / expected[n];
        at = nmax >= 1 ? ratio[nmax] : 0.0;
    };

    if (degs.size() == 1 && !vr.bipartite) {
        const double q = static_cast<double>(*degs.begin() - 1);
        const double V = static_cast<double>(g.num_vertices());
        const double sm = (q + 1 - km) / (q + 1) * static_cast<double>(minus.vertices.size());
        const double sp = (q + 1 - kp) / (q + 1) * static_cast<double>(plus.vertices.size());
        const double mass = q / (q + 1) * V;
        rep.delta = std::log(q);
        rep.constant = q / (q - 1) * sm * sp / mass;
        rep.growth = "q^n";
        rep.normalisation = "probability";
        for (int n = 1; n <= nmax; ++n) rep.expected[n] = rep.constant * std::pow(q, n);
        finish(rep.expected, rep.ratio, rep.ratio_at_nmax);
        rep.pass = std::fabs(rep.ratio_at_nmax - 1) <= tol;
        return rep;
    }
    if (!vr.bipartite || degs.size() > 2)
        throw Error("unsupported-configuration", kMod, "theoretical_constant", "graph is neither regular nor biregular");

    // Bipartite (p+1, q+1)-biregular; the class of a vertex is its colour.
    double d[2] = {0, 0};
    for (int v = 0; v < g.num_vertices(); ++v) d[vr.color[v]] = static_cast<double>(vr.degrees[v]);
    const double pq = (d[0] - 1) * (d[1] - 1);
    const double mass = vr.tvol.convert_to<double>();
    rep.delta = 0.5 * std::log(pq);
    auto sigma = [&](const Subgraph& s, int k, int cls) {
        double t = 0;
        for (int v : s.vertices)
            if (vr.color[v] == cls) t += d[cls] / std::sqrt(d[cls] - 1) * (d[cls] - k) / d[cls];
        return t;
    };
    // Per class pair (i, j): 2 pq s-_i s+_j / ((pq - 1) |m|) e^{delta n_ij(N)}, n_ij of parity [i != j].
    std::vector<double> assembled(nmax + 1, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double cij = 2 * pq * sigma(minus, km, i) * sigma(plus, kp, j) / ((pq - 1) * mass);
            for (int n = 1; n <= nmax; ++n) {
                const int nij = ((n - (i != j)) % 2 == 0) ? n : n - 1;
                assembled[n] += cij * std::pow(std::sqrt(pq), nij);
            }
        }
    rep.normalisation = "deg/sqrt(deg-1)";
    if (is_simple_cycle(g, minus) && is_simple_cycle(g, plus) && d[0] != d[1]) {
        const double p = d[0] - 1, q = d[1] - 1;
        const double Lm = static_cast<double>(minus.vertices.size()), Lp = static_cast<double>(plus.vertices.size());
        rep.constant = std::pow(std::sqrt(q) + std::sqrt(p), 2) * Lm * Lp / (2 * (pq - 1) * mass);
        rep.growth = "(sqrt(pq))^(N+2)";
        for (int n = 1; n <= nmax; ++n) rep.expected[n] = rep.constant * std::pow(std::sqrt(pq), n + 2);
        rep.diagnostic_expected = assembled;
        rep.diagnostic_ratio.assign(nmax + 1, 0.0);
        finish(rep.diagnostic_expected, rep.diagnostic_ratio, rep.diagnostic_at_nmax);
    } else {
        rep.constant = nmax >= 1 ? assembled[nmax] / std::pow(std::sqrt(pq), nmax) : 0.0;
        rep.growth = "sum over class pairs of C_ij (sqrt(pq))^n_ij(N)";
        rep.expected = assembled;
    }
    finish(rep.expected, rep.ratio, rep.ratio_at_nmax);
    rep.pass = std::fabs(rep.ratio_at_nmax - 1) <= tol;
    return rep;
}

OrbitSeries closed_orbit_count(const Graph& g, int nmax) {
    if (nmax < 1 || nmax > 26) throw Error("budget", kMod, "closed_orbit_count", "nmax must lie in 1..26");
    const int E = g.num_edges();
    const auto succ = nb_successors(g);
    OrbitSeries o;
    o.fix.assign(nmax + 1, 0);
    // Exact closed-walk counts, one start edge at a time.
    for (int s = 0; s < E; ++s) {
        std::vector<BigInt> cur(E);
        cur[s] = 1;
        for (int n = 1; n <= nmax; ++n) {
            std::vector<BigInt> nx(E);
            for (int e = 0; e < E; ++e)
                if (cur[e] != 0)
                    for (int f : succ[e]) nx[f] += cur[e];
            cur = std::move(nx);
            o.fix[n] += cur[s];
        }
    }
    o.primitive.assign(nmax + 1, 0);
    o.orbits.assign(nmax + 1, 0);
    o.cumulative.assign(nmax + 1, 0);
    for (int n = 1; n <= nmax; ++n) {
        BigInt s = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) s += mobius(n / d) * o.fix[d];
        o.primitive[n] = s;
        o.orbits[n] = s / n;
        o.cumulative[n] = o.cumulative[n - 1] + o.orbits[n];
    }

    // Weighted: tr(B_{kc}^d) split into primitive parts by recursion on
    // the divisors, PW_n(c) = tr(B_c^n) - sum_{d | n, d < n} PW_d((n/d) c).
    std::map<int, std::vector<double>> traces; // multiplier -> tr(B_{kc}^d), d = 0..
    auto trace_of = [&](int k, int d) {
        auto& t = traces[k];
        if (static_cast<int>(t.size()) <= d) {
            Matrix Bk(E, E);
            for (int e = 0; e < E; ++e)
                for (int f : succ[e]) Bk(e, f) = std::exp(k * g.edge(f).conductance);
            Matrix P = Matrix::identity(E);
            t.assign(1, static_cast<double>(E));
            for (int j = 1; j <= d; ++j) {
                P = P * Bk;
                double tr = 0;
                for (int e = 0; e < E; ++e) tr += P(e, e);
                t.push_back(tr);
            }
        }
        return t[d];
    };
    std::map<std::pair<int, int>, double> memo;
    std::function<double(int, int)> pw = [&](int n, int k) {
        auto key = std::make_pair(n, k);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        double v = trace_of(k, n);
        for (int d = 1; d < n; ++d)
            if (n % d == 0) v -= pw(d, k * (n / d));
        memo[key] = v;
        return v;
    };
    o.weighted.assign(nmax + 1, 0.0);
    for (int n = 1; n <= nmax; ++n) o.weighted[n] = pw(n, 1) / n;

    o.delta = pressure(EdgeShift::from_graph(g));
    const double ed = std::exp(o.delta);
    o.theory.assign(nmax + 1, 0.0);
    o.ratio.assign(nmax + 1, 0.0);
    double cum = 0;
    for (int n = 1; n <= nmax; ++n) {
        cum += o.weighted[n];
        o.theory[n] = ed / (ed - 1) * std::pow(ed, n) / n;
        o.ratio[n] = cum / o.theory[n];
    }
    return o;
}

ConjugacyReport conjugacy_count(const Graph& g, int x0, const std::vector<int>& cycle, int nmax) {
    const int L = static_cast<int>(cycle.size());
    auto bad = [](const std::string& why) { return Error("not-a-simple-cycle", kMod, "conjugacy_count", why); };
    if (L == 0) throw bad("empty cycle");
    std::set<int> verts, edges;
    for (int i = 0; i < L; ++i) {
        const int e = cycle[i], f = cycle[(i + 1) % L];
        if (e < 0 || e >= g.num_edges()) throw bad("edge index out of range");
        if (g.edge(e).to != g.edge(f).from) throw bad("consecutive edges do not meet");
        if (f == g.edge(e).rev) throw bad("cycle backtracks");
        if (!verts.insert(g.edge(e).from).second) throw bad("vertex repeated");
        if (!edges.insert(e).second || edges.count(g.edge(e).rev)) throw bad("edge repeated");
    }
    Subgraph K;
    K.vertices.assign(verts.begin(), verts.end());
    for (int e : edges) {
        K.edges.push_back(e);
        K.edges.push_back(g.edge(e).rev);
    }
    ConjugacyReport rep;
    rep.lambda0 = L;
    rep.count.assign(nmax + 1, 0);
    rep.ratio.assign(nmax + 1, 0.0);
    const int R = (nmax - L) / 2;
    CountSeries cs;
    if (R >= 1) cs = count_perpendiculars(g, point_subgraph(x0), K, R);
    const bool inside = verts.count(x0) > 0;
    const long q = g.tree_degree(0) - 1;
    bool regular = true;
    for (int v = 0; v < g.num_vertices(); ++v) regular = regular && g.tree_degree(v) == q + 1;
    for (int n = L; n <= nmax; ++n) {
        const int r = (n - L) / 2;
        rep.count[n] = (inside ? 1 : 0) + (r >= 1 ? cs.cumulative[r] : BigInt(0));
        rep.ratio[n] = regular ? to_double(rep.count[n]) /
                                     (static_cast<double>(L) / g.num_vertices() * std::pow(static_cast<double>(q), r))
                               : std::nan("");
    }
    return rep;
}

} // namespace geodlab
