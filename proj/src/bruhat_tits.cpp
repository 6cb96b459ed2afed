#include "geodlab/bruhat_tits.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace geodlab {

namespace {
const char* kMod = "bruhat_tits";

int val(const RatFunc& x) { return x.valuation().value_or(INT_MAX); }

// Y^k as a rational function, k of either sign.
RatFunc ypow(int q, int k) {
    return k >= 0 ? RatFunc(Poly::monomial(q, k)) : RatFunc(Poly::constant(q, 1), Poly::monomial(q, -k));
}

// Polynomial part of a rational function.
Poly poly_part(const RatFunc& x) { return x.num() / x.den(); }

void require_unit_det(const BTMatrix& g, const char* op) {
    if (g.det_valuation() != 0) throw Error("det-not-unit", kMod, op, "v(det) = " + std::to_string(g.det_valuation()));
}

std::uint64_t checked_pow(int q, int k, const char* op) {
    long double x = std::pow(static_cast<long double>(q), k);
    if (x > static_cast<long double>(enumeration_budget()))
        throw Error("budget", kMod, op, std::to_string(q) + "^" + std::to_string(k) + " exceeds the budget");
    return static_cast<std::uint64_t>(std::llround(x));
}

// Polynomial of degree < D from its base-q code.
Poly decode(int q, std::uint64_t code, int D) {
    std::vector<int> c(D);
    for (int i = 0; i < D; ++i, code /= q) c[i] = static_cast<int>(code % q);
    return Poly(q, std::move(c));
}

std::uint64_t encode(const Poly& p) {
    std::uint64_t code = 0;
    for (int i = p.deg(); i >= 0; --i) code = code * p.q() + p[i];
    return code;
}

// Every polynomial of degree <= d, zero first.
std::vector<Poly> polys_upto(int q, int d) {
    std::vector<Poly> out;
    const std::uint64_t n = checked_pow(q, d + 1, "enumerate");
    for (std::uint64_t code = 0; code < n; ++code) out.push_back(decode(q, code, d + 1));
    return out;
}
} // namespace

// ---------------------------------------------------------------- matrices

BTMatrix::BTMatrix(RatFunc a, RatFunc b, RatFunc c, RatFunc d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), det_(a_ * d_ - b_ * c_) {
    if (det_.is_zero()) throw Error("singular", kMod, "matrix", "determinant is 0");
    v_det_ = *det_.valuation();
    v_min_ = std::min({val(a_), val(b_), val(c_), val(d_)});
}

BTMatrix BTMatrix::identity(int q) {
    return BTMatrix(RatFunc(Poly::constant(q, 1)), RatFunc(q), RatFunc(q), RatFunc(Poly::constant(q, 1)));
}

BTMatrix BTMatrix::from_polys(const Poly& a, const Poly& b, const Poly& c, const Poly& d) {
    return BTMatrix(RatFunc(a), RatFunc(b), RatFunc(c), RatFunc(d));
}

BTMatrix BTMatrix::operator*(const BTMatrix& o) const {
    return BTMatrix(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

BTMatrix BTMatrix::inverse() const {
    const RatFunc s = det_.inverse();
    return BTMatrix(d_ * s, -b_ * s, -c_ * s, a_ * s);
}

bool BTMatrix::projectively_equal(const BTMatrix& o) const {
    // Proportional iff every 2x2 minor of the stacked entries vanishes.
    const RatFunc x[4] = {a_, b_, c_, d_}, y[4] = {o.a_, o.b_, o.c_, o.d_};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!(x[i] * y[j] - x[j] * y[i]).is_zero()) return false;
    return true;
}

std::string BTMatrix::str() const {
    return "[[" + a_.str() + ", " + b_.str() + "], [" + c_.str() + ", " + d_.str() + "]]";
}

// ---------------------------------------------------------------- balls

Ball make_ball(const RatFunc& center, int n) {
    // Keep the digits of Y^-k for k < n: floor(x Y^(n-1)) Y^-(n-1).
    const int q = center.q();
    Ball b;
    b.n = n;
    b.center = RatFunc(poly_part(center * ypow(q, n - 1))) * ypow(q, 1 - n);
    return b;
}

int ball_distance(const Ball& x, const Ball& y) {
    const int m = std::min({x.n, y.n, val(x.center - y.center)});
    return x.n + y.n - 2 * m;
}

BTMatrix ball_matrix(const Ball& b) {
    const int q = b.center.q();
    return BTMatrix(ypow(q, -b.n), b.center, RatFunc(q), RatFunc(Poly::constant(q, 1)));
}

Ball vertex_ball(const BTMatrix& g) {
    // Right multiplication by GL_2(O_v) fixes g.*: swap columns if needed so
    // that |c| <= |d|, then clear c with the column operation c/d in O_v.
    // What is left is [[det/d, b], [0, d]] ~ [[det/d^2, b/d], [0, 1]].
    const bool swap = val(g.c()) < val(g.d());
    const RatFunc& top = swap ? g.a() : g.b();
    const RatFunc& bottom = swap ? g.c() : g.d();
    return make_ball(top / bottom, g.det_valuation() - 2 * val(bottom));
}

std::vector<Ball> balls_within(int q, int radius) {
    if (radius < 0 || radius > 16) throw Error("bad-argument", kMod, "balls_within", "radius must lie in 0..16");
    check_field(q);
    // Nodes carry their digits explicitly: exponent k (of Y^-k) -> coefficient.
    using Digits = std::map<int, int>;
    struct Node {
        int n;
        Digits digits;
        int dist;
    };
    auto to_ratfunc = [q](const Digits& dg) {
        RatFunc x(q);
        for (const auto& [k, c] : dg) x = x + RatFunc(Poly::constant(q, c)) * ypow(q, -k);
        return x;
    };
    std::set<std::pair<int, Digits>> seen{{0, {}}};
    std::deque<Node> queue{{0, {}, 0}};
    std::vector<Ball> out;
    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        out.push_back(Ball{cur.n, to_ratfunc(cur.digits)});
        if (cur.dist == radius) continue;
        std::vector<std::pair<int, Digits>> next;
        Digits up = cur.digits;
        up.erase(cur.n - 1);
        next.emplace_back(cur.n - 1, up);
        for (int t = 0; t < q; ++t) {
            Digits down = cur.digits;
            if (t) down[cur.n] = t;
            next.emplace_back(cur.n + 1, down);
        }
        for (auto& key : next)
            if (seen.insert(key).second) queue.push_back({key.first, key.second, cur.dist + 1});
    }
    return out;
}

int vertex_distance(const BTMatrix& g) { return std::abs(g.det_valuation() - 2 * g.min_entry_valuation()); }

int vertex_distance(const BTMatrix& g1, const BTMatrix& g2) { return vertex_distance(g1.inverse() * g2); }

int vertex_distance_oracle(const BTMatrix& g) {
    return ball_distance(vertex_ball(g), Ball{0, RatFunc(g.q())});
}

// ---------------------------------------------------------------- horoballs, translation

HoroballImage horoball_height(const BTMatrix& g) {
    if (g.c().is_zero()) throw Error("fixes-infinity", kMod, "horoball_height", "lower-left entry is 0");
    require_unit_det(g, "horoball_height");
    return {-2 * *g.c().valuation(), g.a() / g.c()};
}

int translation_length(const BTMatrix& g) {
    require_unit_det(g, "translation_length");
    const auto v = (g.a() + g.d()).valuation();
    return v && *v < 0 ? -2 * *v : 0;
}

int translation_length_oracle(const BTMatrix& g, int radius) {
    require_unit_det(g, "translation_length_oracle");
    int best = INT_MAX;
    for (const Ball& x : balls_within(g.q(), radius)) best = std::min(best, ball_distance(x, vertex_ball(g * ball_matrix(x))));
    return best;
}

// ---------------------------------------------------------------- points and crossratios

KPoint KPoint::infinity(int q) {
    KPoint p;
    p.q_ = q;
    p.inf_ = true;
    p.series_ = LaurentSeries::zero(q);
    return p;
}

KPoint::KPoint(const RatFunc& x) : q_(x.q()), exact_(x), series_(lazy_series(x)) {}

KPoint::KPoint(const QuadIrr& x) : q_(x.q()), series_(lazy_series(x)) {}

int valuation_of_difference(const KPoint& x, const KPoint& y) {
    if (x.is_infinite() || y.is_infinite())
        throw Error("bad-argument", kMod, "valuation_of_difference", "point at infinity");
    std::optional<int> v;
    if (x.exact() && y.exact()) v = (*x.exact() - *y.exact()).valuation();
    else v = (x.series() - y.series()).valuation();
    if (!v) throw Error("degenerate", kMod, "valuation_of_difference", "points coincide");
    return *v;
}

namespace {
// Sum of signs * v(x - y) over the finite pairs; pairs with infinity drop.
int signed_valuation_sum(std::initializer_list<std::tuple<int, const KPoint*, const KPoint*>> terms) {
    int s = 0;
    for (const auto& [sign, x, y] : terms)
        if (!x->is_infinite() && !y->is_infinite()) s += sign * valuation_of_difference(*x, *y);
    return s;
}
} // namespace

QPower crossratio_abs(const KPoint& a, const KPoint& b, const KPoint& c, const KPoint& d) {
    const KPoint* pts[4] = {&a, &b, &c, &d};
    int infinite = 0;
    for (const KPoint* p : pts) infinite += p->is_infinite();
    if (infinite > 1) throw Error("degenerate", kMod, "crossratio_abs", "points must be pairwise distinct");
    // |x| = q^-v(x), so the exponent is minus the valuation balance.
    const int v = signed_valuation_sum({{1, &c, &a}, {1, &d, &b}, {-1, &c, &b}, {-1, &d, &a}});
    return {a.q(), -v};
}

// ---------------------------------------------------------------- Patterson and skinning measures

Rational patterson_point_ball(int q, const RatFunc& center, int n) {
    check_field(q);
    const int w = val(center);
    if (w >= n) {
        // The ball contains 0.
        if (n >= 0) return rational_pow(q, -n);
        // O_v plus the shells |z| = q^k, k = 1..-n, each of mass (1 - 1/q) q^-k.
        return 1 + Rational(1, q) * (1 - rational_pow(q, n));
    }
    // Every point has |z| = q^-w.
    return rational_pow(q, -n) * (w >= 0 ? Rational(1) : rational_pow(q, 2 * w));
}

Rational patterson_point_total(int q) {
    check_field(q);
    return Rational(q + 1, q);
}

Rational horoball_ball_mass(int q, int n) {
    check_field(q);
    return rational_pow(q, -n);
}

QPower line_density(const KPoint& lminus, const KPoint& lplus, const KPoint& rho) {
    if (rho.is_infinite()) throw Error("singular-point", kMod, "line_density", "rho is infinity");
    if (lminus.is_infinite() && lplus.is_infinite())
        throw Error("degenerate", kMod, "line_density", "both endpoints at infinity");
    auto touches = [&](const KPoint& l) {
        if (l.is_infinite()) return false;
        try {
            valuation_of_difference(rho, l);
            return false;
        } catch (const Error& e) {
            if (e.code() == "degenerate") return true;
            throw;
        }
    };
    if (touches(lminus) || touches(lplus)) throw Error("singular-point", kMod, "line_density", "rho is an endpoint");
    const int v = signed_valuation_sum({{1, &lplus, &lminus}, {-1, &rho, &lminus}, {-1, &rho, &lplus}});
    return {rho.q(), -v};
}

// ---------------------------------------------------------------- relative heights

QPower relative_height(const QuadIrr& alpha, const QuadIrr& beta) {
    const QuadIrr as = alpha.conj(), bs = beta.conj();
    if (beta == alpha || beta == as) throw Error("degenerate", kMod, "relative_height", "beta is alpha or its conjugate");
    const KPoint a(alpha), a2(as), b(beta), b2(bs);
    const QPower x = crossratio_abs(a, b, b2, a2), y = crossratio_abs(a, b2, b, a2);
    QPower h = x.exp >= y.exp ? x : y;
    if (h.exp < 0) throw Error("internal", kMod, "relative_height", "height below 1");
    return h;
}

int axis_distance(const QuadIrr& alpha, const QuadIrr& beta) {
    // The axis ]a, a'[ is the set of balls around a or a' of radius at most
    // |a - a'|. Minimise the ball distance over both axes.
    const KPoint A[2] = {KPoint(alpha), KPoint(alpha.conj())};
    const KPoint B[2] = {KPoint(beta), KPoint(beta.conj())};
    const int a0 = valuation_of_difference(A[0], A[1]), b0 = valuation_of_difference(B[0], B[1]);
    int best = INT_MAX;
    for (const KPoint& x : A)
        for (const KPoint& y : B) {
            int w;
            try {
                w = valuation_of_difference(x, y);
            } catch (const Error& e) {
                if (e.code() != "degenerate") throw;
                return 0; // shared endpoint
            }
            const int hi = std::max({a0, b0, w}) + 1;
            for (int n1 = a0; n1 <= hi; ++n1)
                for (int n2 = b0; n2 <= hi; ++n2) best = std::min(best, n1 + n2 - 2 * std::min({n1, n2, w}));
        }
    return best;
}

// ---------------------------------------------------------------- norm forms

QPower norm_form(const QuadIrr& alpha, const Poly& x, const Poly& y) {
    if (x.is_zero() && y.is_zero()) throw Error("bad-argument", kMod, "norm_form", "(x, y) = (0, 0)");
    const RatFunc tr(-alpha.B(), alpha.A()), n(alpha.C(), alpha.A());
    const RatFunc X(x), Yv(y);
    const auto v = (X * X - X * Yv * tr + Yv * Yv * n).valuation();
    if (!v) throw Error("internal", kMod, "norm_form", "norm form vanished");
    return {alpha.q(), -*v};
}

TransformCheck transform_check(const QuadIrr& alpha, const Poly& a, const Poly& b, const Poly& c, const Poly& d,
                               const std::vector<Poly>& grid) {
    const int q = alpha.q();
    const Poly det = a * d - b * c;
    if (det.deg() != 0) throw Error("not-in-GL2", kMod, "transform_check", "det must be a nonzero constant");
    const Poly s = Poly::constant(q, fq_inv(q, det.lc()));
    const QuadIrr beta = alpha.transform(a, b, c, d);
    const int ha = quad_invariants(alpha).h_exp, hb = quad_invariants(beta).h_exp;
    TransformCheck out;
    for (const Poly& x : grid)
        for (const Poly& y : grid) {
            if (x.is_zero() && y.is_zero()) continue;
            // g^-1 (x, y) = det^-1 (d x - b y, -c x + a y)
            const Poly x2 = (d * x - b * y) * s, y2 = (a * y - c * x) * s;
            ++out.points;
            if (norm_form(beta, x, y).exp != ha - hb + norm_form(alpha, x2, y2).exp) ++out.failures;
        }
    return out;
}

std::vector<Poly> default_grid(int q) {
    const Poly one = Poly::constant(q, 1), Y = Poly::Y(q);
    return {Poly(q), one, Y, Y + one, Y * Y + one};
}

// ---------------------------------------------------------------- covolumes

Rational zeta_value(int q, int s) {
    check_field(q);
    const Rational u = rational_pow(q, -s);
    const Rational den = (1 - u) * (1 - q * u);
    if (den == 0) throw Error("pole", kMod, "zeta_value", "s = 0 or s = 1");
    return 1 / den;
}

Rational ideal_covolume(const Poly& ideal, int genus) {
    if (ideal.is_zero()) throw Error("bad-argument", kMod, "ideal_covolume", "zero ideal");
    return rational_pow(ideal.q(), genus - 1) * rational_pow(ideal.q(), ideal.deg());
}

namespace {
// Projective orders of the vertex groups along the modular ray.
Rational gamma_minus_one(int q) { return Rational(q) * (Rational(q) * q - 1); }
Rational gamma_n(int q, int n) { return Rational(q - 1) * rational_pow(q, n + 2); }
} // namespace

std::vector<Rational> nagao_partial_sums(int q, int terms) {
    check_field(q);
    std::vector<Rational> out;
    Rational s = 1 / gamma_minus_one(q);
    out.push_back(s);
    for (int n = 0; n + 1 < terms; ++n) out.push_back(s += 1 / gamma_n(q, n));
    return out;
}

CovolumeReport covolume_suite(int q) {
    check_field(q);
    CovolumeReport r;
    r.q = q;
    // Geometric tail: first term 1/|Gamma_0|, ratio |Gamma_n| / |Gamma_n+1| = 1/q.
    const Rational first = 1 / gamma_n(q, 0), ratio = gamma_n(q, 0) / gamma_n(q, 1);
    r.nagao_series = 1 / gamma_minus_one(q) + first / (1 - ratio);
    r.via_zeta = 2 * zeta_value(q, -1);
    r.closed_form = Rational(2) / (Rational(q - 1) * (Rational(q) * q - 1));
    return r;
}

// ---------------------------------------------------------------- Hecke indices

HeckeReport hecke_index(const Poly& ideal, bool enumerate) {
    if (ideal.is_zero()) throw Error("bad-argument", kMod, "hecke_index", "zero ideal");
    const int q = ideal.q();
    HeckeReport r;
    r.formula = 1;
    for (const auto& [p, e] : factor(ideal)) {
        const BigInt N = big_pow(q, p.deg());
        r.formula *= N + 1;
        for (int i = 1; i < e; ++i) r.formula *= N;
    }
    if (!enumerate) return r;
    const int D = ideal.deg();
    if (D > 4) throw Error("budget", kMod, "hecke_index", "enumeration needs deg I <= 4");
    const std::uint64_t N = D == 0 ? 1 : checked_pow(q, D, "hecke_index");
    checked_pow(q, 4 * D, "hecke_index");
    const Poly I = ideal.monic();
    std::vector<std::uint64_t> mul(N * N), sub(N * N);
    std::vector<char> unit(N);
    std::vector<Poly> elems;
    for (std::uint64_t x = 0; x < N; ++x) elems.push_back(decode(q, x, D));
    for (std::uint64_t x = 0; x < N; ++x) {
        unit[x] = D == 0 || gcd(elems[x], I).deg() == 0;
        for (std::uint64_t y = 0; y < N; ++y) {
            mul[x * N + y] = D == 0 ? 0 : encode((elems[x] * elems[y]) % I);
            sub[x * N + y] = D == 0 ? 0 : encode((elems[x] - elems[y]) % I);
        }
    }
    std::uint64_t gl = 0, borel = 0;
    for (std::uint64_t a = 0; a < N; ++a)
        for (std::uint64_t d = 0; d < N; ++d) {
            const std::uint64_t ad = mul[a * N + d];
            for (std::uint64_t b = 0; b < N; ++b)
                for (std::uint64_t c = 0; c < N; ++c)
                    if (unit[sub[ad * N + mul[b * N + c]]]) {
                        ++gl;
                        borel += c == 0;
                    }
        }
    r.gl_order = gl;
    r.borel_order = borel;
    if (gl % borel) throw Error("internal", kMod, "hecke_index", "Borel order does not divide");
    r.enumerated = BigInt(gl / borel);
    return r;
}

// ---------------------------------------------------------------- Farey fractions

FareyReport farey_count(int q, int t, int depth) {
    check_field(q);
    if (t < 0) throw Error("bad-argument", kMod, "farey_count", "t must be nonnegative");
    if (depth < 0 || depth > 8) throw Error("bad-argument", kMod, "farey_count", "depth must lie in 0..8");
    checked_pow(q, t + 1, "farey_count");
    FareyReport r;
    r.q = q;
    r.t = t;
    r.depth = depth;
    // Constant Q: one class per unit (P reduces to 0).
    r.psi.assign(t + 1, BigInt(q - 1));
    const auto all = polys_upto(q, t);
    for (const Poly& Q : all)
        if (Q.deg() >= 1) {
            const BigInt phi = euler_phi(Q);
            for (int s = Q.deg(); s <= t; ++s) r.psi[s] += phi;
        }
    if (depth == 0) return r;
    checked_pow(q, 2 * t + 1, "farey_count");
    const std::uint64_t bins = checked_pow(q, depth, "farey_count");
    r.hist.assign(bins, 0);
    const Poly Y = Poly::Y(q);
    for (const Poly& Q : all) {
        if (Q.is_zero()) continue;
        if (Q.deg() == 0) {
            ++r.hist[0]; // P/Q = 0
            ++r.points;
            continue;
        }
        const int lq_inv = fq_inv(q, Q.lc());
        for (const Poly& P : all) {
            if (P.deg() >= Q.deg()) break; // `all` is ordered by degree
            if (gcd(P, Q).deg() != 0) continue;
            // Digits of Y P / Q, which lies in O_v, by long division.
            Poly rem = Y * P;
            std::uint64_t idx = 0;
            for (int k = 0; k < depth; ++k) {
                int digit = 0;
                if (rem.deg() == Q.deg()) {
                    digit = fq_norm(q, static_cast<long>(rem.lc()) * lq_inv);
                    rem -= Q.scaled(digit);
                }
                idx = idx * q + digit;
                rem = rem * Y;
            }
            ++r.hist[idx];
            ++r.points;
        }
    }
    if (BigInt(r.points) != r.psi[t]) throw Error("internal", kMod, "farey_count", "histogram misses classes");
    for (auto h : r.hist)
        r.max_rel_dev = std::max(r.max_rel_dev, std::fabs(static_cast<double>(h) * static_cast<double>(bins) /
                                                              static_cast<double>(r.points) - 1.0));
    return r;
}

// ---------------------------------------------------------------- orbit experiment

OrbitReport quad_orbit_experiment(const QuadIrr& alpha0, OrbitMode mode, int L, int bins) {
    if (L < 0 || L > 12) throw Error("bad-argument", kMod, "quad_orbit_experiment", "word length must lie in 0..12");
    if (bins < 1) throw Error("bad-argument", kMod, "quad_orbit_experiment", "bins must be positive");
    const int q = alpha0.q();
    const Poly zero(q), one = Poly::constant(q, 1), Y = Poly::Y(q);
    // Each generator as (a, b, c, d).
    const std::vector<std::array<Poly, 4>> gens = {
        {one, one, zero, one}, {one, -one, zero, one}, {one, Y, zero, one}, {one, -Y, zero, one}, {zero, one, one, zero}};
    // Orbit points are expensive (each one expands a square root), so the
    // shared budget is charged 10^3 per point.
    const std::uint64_t cap = std::max<std::uint64_t>(enumeration_budget() / 1000, 1);
    std::set<QuadIrr> seen{alpha0.canonical()};
    std::vector<QuadIrr> frontier{alpha0};
    for (int step = 0; step < L && !frontier.empty(); ++step) {
        std::vector<QuadIrr> next;
        for (const QuadIrr& z : frontier)
            for (const auto& g : gens) {
                QuadIrr w = z.transform(g[0], g[1], g[2], g[3]).canonical();
                if (seen.insert(w).second) {
                    if (seen.size() > cap) throw Error("budget", kMod, "quad_orbit_experiment", "orbit too large");
                    next.push_back(std::move(w));
                }
            }
        frontier = std::move(next);
    }
    OrbitReport r;
    r.size = seen.size();
    std::map<int, std::uint64_t> hist;
    const QuadIrr a0c = alpha0.conj();
    for (const QuadIrr& z : seen) {
        int e;
        if (mode == OrbitMode::Complexity) {
            // h = 1/|z - z^s| = |A| / |sqrt D| = q^(deg A - deg D / 2).
            e = z.A().deg() - z.disc().deg() / 2;
        } else {
            if (z == alpha0 || z == a0c) {
                ++r.skipped;
                continue;
            }
            e = relative_height(alpha0, z).exp;
            if (e < 0) r.powers_of_q = false;
        }
        ++hist[e];
    }
    if (hist.empty()) return r;
    std::uint64_t cum = 0;
    int e = hist.begin()->first;
    for (int i = 0; i < bins; ++i, ++e) {
        auto it = hist.find(e);
        const std::uint64_t c = it == hist.end() ? 0 : it->second;
        const std::uint64_t before = cum;
        cum += c;
        if (cum < before) r.monotone = false;
        r.rows.push_back({e, c, cum});
    }
    return r;
}

} // namespace geodlab
