#include "geodlab/geodesic_shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geodlab/rng.hpp"

namespace geodlab {

namespace {
const char* kMod = "geodesic_shift";

// Stationary vector of a stochastic matrix: p (I - P) = 0, sum p = 1.
std::vector<double> stationary(const Matrix& P) {
    const std::size_t n = P.rows();
    Matrix A(n, n);
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = (i == j ? 1.0 : 0.0) - P(j, i);
    for (std::size_t j = 0; j < n; ++j) A(n - 1, j) = 1.0;
    b[n - 1] = 1.0;
    return solve(A, b);
}

void fill_thermo(const EdgeShift& s, MarkovMeasure& m) {
    m.entropy = 0;
    m.integral = 0;
    for (int i = 0; i < s.letters(); ++i) {
        m.integral += m.p[i] * s.phi[i];
        for (int j : s.succ[i]) {
            const double x = m.P(i, j);
            if (x > 0) m.entropy -= m.p[i] * x * std::log(x);
        }
    }
}
} // namespace

bool EdgeShift::allowed(int i, int j) const {
    return std::binary_search(succ[i].begin(), succ[i].end(), j);
}

Matrix EdgeShift::weighted() const {
    Matrix M(letters(), letters());
    for (int i = 0; i < letters(); ++i)
        for (int j : succ[i]) M(i, j) = std::exp(phi[j]);
    return M;
}

EdgeShift EdgeShift::from_graph(const Graph& g) {
    nb_transfer(g); // degeneracy check
    EdgeShift s;
    s.succ = nb_successors(g);
    for (auto& row : s.succ) std::sort(row.begin(), row.end());
    for (int e = 0; e < g.num_edges(); ++e) {
        s.phi.push_back(g.edge(e).conductance);
        s.labels.push_back(g.edge(e).id);
    }
    return s;
}

EdgeShift EdgeShift::from_matrix(const Matrix& A, std::vector<double> phi) {
    if (A.rows() != A.cols() || phi.size() != A.rows())
        throw Error("bad-argument", kMod, "from_matrix", "shape mismatch");
    EdgeShift s;
    s.succ.resize(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        s.labels.push_back(std::to_string(i));
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0.0) s.succ[i].push_back(static_cast<int>(j));
    }
    s.phi = std::move(phi);
    return s;
}

void require_irreducible(const EdgeShift& s) {
    const int n = s.letters();
    if (n == 0) throw Error("reducible", kMod, "pressure", "empty alphabet");
    std::vector<std::vector<int>> pred(n);
    for (int i = 0; i < n; ++i)
        for (int j : s.succ[i]) pred[j].push_back(i);
    const std::vector<std::vector<int>>* dirs[] = {&s.succ, &pred};
    for (const auto* adj : dirs) {
        std::vector<char> seen(n, 0);
        std::vector<int> st{0};
        seen[0] = 1;
        int count = 1;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int w : (*adj)[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    st.push_back(w);
                }
        }
        if (count != n) throw Error("reducible", kMod, "pressure", "transition graph is not strongly connected");
    }
}

Perron perron(const Matrix& M, double tol, long max_iter) {
    const std::size_t n = M.rows();
    // The shift makes the iteration aperiodic; any positive value works.
    double tau = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j) s += M(i, j);
        tau = std::min(tau, s);
    }
    if (!(tau > 0)) tau = 1.0;

    auto iterate = [&](bool left, long& iters, double& rho) {
        std::vector<double> x(n, 1.0 / static_cast<double>(n));
        for (iters = 1; iters <= max_iter; ++iters) {
            std::vector<double> y = left ? M.apply_left(x) : M.apply(x);
            double lo = std::numeric_limits<double>::infinity(), hi = 0, sum = 0;
            for (std::size_t i = 0; i < n; ++i) {
                y[i] += tau * x[i];
                const double ratio = y[i] / x[i];
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
                sum += y[i];
            }
            for (double& v : y) v /= sum;
            x = std::move(y);
            if (hi - lo <= tol * hi) {
                rho = 0.5 * (lo + hi) - tau;
                return x;
            }
        }
        throw Error("no-convergence", kMod, "pressure", "power iteration cap reached");
    };

    Perron out;
    double rho_l = 0;
    long it_l = 0;
    out.r = iterate(false, out.iterations, out.rho);
    out.l = iterate(true, it_l, rho_l);
    out.iterations = std::max(out.iterations, it_l);
    double dot = 0;
    for (std::size_t i = 0; i < n; ++i) dot += out.l[i] * out.r[i];
    for (double& v : out.l) v /= dot;
    return out;
}

double pressure(const EdgeShift& s) {
    require_irreducible(s);
    return std::log(perron(s.weighted()).rho);
}

MarkovMeasure equilibrium_measure(const EdgeShift& s) {
    require_irreducible(s);
    const Matrix M = s.weighted();
    const Perron pf = perron(M);
    const int n = s.letters();
    Matrix P(n, n);
    for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j : s.succ[i]) {
            P(i, j) = M(i, j) * pf.r[j] / (pf.rho * pf.r[i]);
            row += P(i, j);
        }
        for (int j : s.succ[i]) P(i, j) /= row;
    }
    MarkovMeasure m;
    m.P = P;
    m.p = stationary(P);
    m.pressure = std::log(pf.rho);
    fill_thermo(s, m);
    return m;
}

MarkovMeasure markov_from_stochastic(const EdgeShift& s, const Matrix& P) {
    for (int i = 0; i < s.letters(); ++i)
        for (int j = 0; j < s.letters(); ++j)
            if (P(i, j) != 0.0 && !s.allowed(i, j))
                throw Error("inadmissible-word", kMod, "markov_from_stochastic", "forbidden transition carries mass");
    MarkovMeasure m;
    m.P = P;
    m.p = stationary(P);
    fill_thermo(s, m);
    m.pressure = m.entropy + m.integral;
    return m;
}

double cylinder_measure(const MarkovMeasure& m, const EdgeShift& s, const std::vector<int>& word) {
    if (word.empty()) throw Error("inadmissible-word", kMod, "cylinder_measure", "empty word");
    for (int x : word)
        if (x < 0 || x >= s.letters()) throw Error("inadmissible-word", kMod, "cylinder_measure", "letter out of range");
    double mass = m.p[word[0]];
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
        if (!s.allowed(word[k], word[k + 1]))
            throw Error("inadmissible-word", kMod, "cylinder_measure", "forbidden transition at position " + std::to_string(k));
        mass *= m.P(word[k], word[k + 1]);
    }
    return mass;
}

GibbsAudit weak_gibbs_audit(const EdgeShift& s, const MarkovMeasure& m, int maxlen) {
    if (maxlen < 1 || maxlen > 16) throw Error("budget", kMod, "weak_gibbs_audit", "maxlen must lie in 1..16");
    const int n = s.letters();
    const std::uint64_t budget = enumeration_budget();
    GibbsAudit a;
    a.ratio_min.assign(n, std::numeric_limits<double>::infinity());
    a.ratio_max.assign(n, 0.0);
    std::uint64_t nodes = 0;

    struct Frame {
        int letter, depth;
        double mass, birkhoff;
    };
    for (int start = 0; start < n; ++start) {
        std::vector<Frame> st{{start, 1, m.p[start], s.phi[start]}};
        while (!st.empty()) {
            Frame f = st.back();
            st.pop_back();
            if (++nodes > budget) throw Error("budget", kMod, "weak_gibbs_audit", "enumeration budget exceeded");
            if (s.allowed(f.letter, start)) {
                const double ratio = f.mass / std::exp(f.birkhoff - f.depth * m.pressure);
                a.ratio_min[start] = std::min(a.ratio_min[start], ratio);
                a.ratio_max[start] = std::max(a.ratio_max[start], ratio);
                ++a.words;
            }
            if (f.depth == maxlen) continue;
            for (auto it = s.succ[f.letter].rbegin(); it != s.succ[f.letter].rend(); ++it)
                st.push_back({*it, f.depth + 1, f.mass * m.P(f.letter, *it), f.birkhoff + s.phi[*it]});
        }
    }
    double gmin = std::numeric_limits<double>::infinity(), gmax = 0;
    a.pass = a.words > 0;
    for (int v = 0; v < n; ++v) {
        if (a.ratio_max[v] == 0.0) {
            a.C.push_back(std::numeric_limits<double>::quiet_NaN()); // no periodic word through v
            continue;
        }
        a.C.push_back(std::max(a.ratio_max[v], 1.0 / a.ratio_min[v]));
        gmin = std::min(gmin, a.ratio_min[v]);
        gmax = std::max(gmax, a.ratio_max[v]);
        a.pass = a.pass && std::isfinite(a.C.back()) && a.ratio_min[v] > 0;
    }
    a.C_global = std::max(gmax, 1.0 / gmin);
    a.spread = gmax / gmin;
    a.pass = a.pass && std::fabs(m.entropy + m.integral - m.pressure) <= 1e-8;
    return a;
}

DecayReport correlation_decay(const MarkovMeasure& m, const std::vector<double>& f, const std::vector<double>& g,
                              int nmax) {
    const std::size_t n = m.p.size();
    if (f.size() != n || g.size() != n) throw Error("bad-argument", kMod, "correlation_decay", "observable length");
    double mean_g = 0;
    for (std::size_t i = 0; i < n; ++i) mean_g += m.p[i] * g[i];
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = g[i] - mean_g;
    DecayReport r;
    for (int k = 0; k <= nmax; ++k) {
        double c = 0;
        for (std::size_t i = 0; i < n; ++i) c += m.p[i] * f[i] * h[i];
        r.cov.push_back(c);
        h = m.P.apply(h);
    }
    // Windowed maxima flatten the oscillation of complex subdominant modes.
    const int w = 8;
    double peak = 0;
    for (int k = 1; k <= nmax; ++k) peak = std::max(peak, std::fabs(r.cov[k]));
    r.rate = -std::numeric_limits<double>::infinity();
    if (peak == 0) return r;
    std::vector<double> env;
    for (int k = 1; k + w - 1 <= nmax; ++k) {
        double e = 0;
        for (int j = k; j < k + w; ++j) e = std::max(e, std::fabs(r.cov[j]));
        env.push_back(e);
    }
    int last = 0;
    for (int k = 0; k < static_cast<int>(env.size()); ++k)
        if (env[k] >= 1e-11 * peak) last = k;
    const int first = last / 4;
    if (last - first < 2) {
        r.rate = last > first ? std::log(env[last] / env[first]) / (last - first) : r.rate;
        r.fit_from = first + 1;
        r.fit_to = last + 1;
        return r;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int cnt = last - first + 1;
    for (int k = first; k <= last; ++k) {
        const double x = k, y = std::log(env[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    r.rate = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    r.fit_from = first + 1;
    r.fit_to = last + 1;
    return r;
}

BruteForceResult brute_force_equilibrium(const EdgeShift& s, std::uint64_t seed, int starts) {
    const int n = s.letters();
    if (n > 4) throw Error("budget", kMod, "brute_force_equilibrium", "at most four letters");
    require_irreducible(s);
    // Softmax logits, one per allowed transition.
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j : s.succ[i]) slots.push_back({i, j});
    const std::size_t d = slots.size();

    auto chain = [&](const std::vector<double>& th) {
        Matrix P(n, n);
        std::vector<double> mx(n, -std::numeric_limits<double>::infinity());
        for (std::size_t k = 0; k < d; ++k) mx[slots[k].first] = std::max(mx[slots[k].first], th[k]);
        std::vector<double> z(n, 0.0);
        for (std::size_t k = 0; k < d; ++k) {
            const double e = std::exp(th[k] - mx[slots[k].first]);
            P(slots[k].first, slots[k].second) = e;
            z[slots[k].first] += e;
        }
        for (std::size_t k = 0; k < d; ++k) P(slots[k].first, slots[k].second) /= z[slots[k].first];
        return P;
    };
    auto value = [&](const std::vector<double>& th) {
        MarkovMeasure m = markov_from_stochastic(s, chain(th));
        return m.entropy + m.integral;
    };
    auto gradient = [&](std::vector<double> th) {
        const double h = 1e-5;
        std::vector<double> g(d);
        for (std::size_t k = 0; k < d; ++k) {
            const double t0 = th[k];
            th[k] = t0 + h;
            const double up = value(th);
            th[k] = t0 - h;
            const double dn = value(th);
            th[k] = t0;
            g[k] = (up - dn) / (2 * h);
        }
        return g;
    };

    BruteForceResult best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int st = 0; st < starts; ++st) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(st)));
        std::vector<double> th(d);
        for (double& t : th) t = 4.0 * rng.uniform() - 2.0;
        double F = value(th);
        std::vector<double> g = gradient(th);
        double step = 1.0;
        for (int it = 0; it < 5000; ++it) {
            double gn = 0;
            for (double x : g) gn = std::max(gn, std::fabs(x));
            if (gn < 1e-10) break;
            // Armijo backtracking along the gradient.
            double a = step, Fn = F;
            std::vector<double> tn(d);
            for (int bt = 0; bt < 60; ++bt) {
                for (std::size_t k = 0; k < d; ++k) tn[k] = th[k] + a * g[k];
                Fn = value(tn);
                double gg = 0;
                for (double x : g) gg += x * x;
                if (Fn >= F + 1e-4 * a * gg) break;
                a *= 0.5;
            }
            if (Fn < F) break;
            std::vector<double> gnew = gradient(tn);
            // Barzilai-Borwein length for the next trial step.
            double ss = 0, sy = 0;
            for (std::size_t k = 0; k < d; ++k) {
                const double sk = tn[k] - th[k], yk = g[k] - gnew[k];
                ss += sk * sk;
                sy += sk * yk;
            }
            step = sy > 0 ? std::min(ss / sy, 1e4) : 1.0;
            th = std::move(tn);
            F = Fn;
            g = std::move(gnew);
        }
        if (F > best.value) {
            best.value = F;
            best.best = markov_from_stochastic(s, chain(th));
        }
        ++best.starts;
    }
    return best;
}

double tv_two_cylinders(const MarkovMeasure& a, const MarkovMeasure& b) {
    double tv = 0;
    for (std::size_t i = 0; i < a.p.size(); ++i)
        for (std::size_t j = 0; j < a.p.size(); ++j) tv += std::fabs(a.p[i] * a.P(i, j) - b.p[i] * b.P(i, j));
    return 0.5 * tv;
}

} // namespace geodlab
