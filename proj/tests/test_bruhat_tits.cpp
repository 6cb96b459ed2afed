#include <random>

#include "geodlab/bruhat_tits.hpp"
#include "geodlab/expr_parse.hpp"
#include "support.hpp"

using namespace geodlab;
using testsupport::error_code;

namespace {

Poly rand_poly(std::mt19937_64& rng, int q, int maxdeg) {
    std::uniform_int_distribution<int> deg(-1, maxdeg), co(0, q - 1);
    const int d = deg(rng);
    std::vector<int> c(d + 1);
    for (int& x : c) x = co(rng);
    return Poly(q, std::move(c));
}

RatFunc rand_ratfunc(std::mt19937_64& rng, int q) {
    Poly den = rand_poly(rng, q, 2);
    while (den.is_zero()) den = rand_poly(rng, q, 2);
    return RatFunc(rand_poly(rng, q, 3), den);
}

BTMatrix rand_matrix(std::mt19937_64& rng, int q) {
    for (;;) {
        try {
            return BTMatrix(rand_ratfunc(rng, q), rand_ratfunc(rng, q), rand_ratfunc(rng, q), rand_ratfunc(rng, q));
        } catch (const Error&) {
        }
    }
}

// A random element of GL_2(F_q[Y]) as a product of elementary matrices.
std::array<Poly, 4> rand_gl2(std::mt19937_64& rng, int q, int factors = 3) {
    const Poly one = Poly::constant(q, 1), zero(q);
    std::array<Poly, 4> g = {one, zero, zero, one};
    std::uniform_int_distribution<int> kind(0, 2), unit(1, q - 1);
    for (int i = 0; i < factors; ++i) {
        std::array<Poly, 4> e;
        const Poly P = rand_poly(rng, q, 2);
        switch (kind(rng)) {
        case 0: e = {one, P, zero, one}; break;
        case 1: e = {one, zero, P, one}; break;
        default: e = {Poly::constant(q, unit(rng)), zero, zero, one}; break;
        }
        g = {g[0] * e[0] + g[1] * e[2], g[0] * e[1] + g[1] * e[3], g[2] * e[0] + g[3] * e[2],
             g[2] * e[1] + g[3] * e[3]};
    }
    return g;
}

// Homography on K_v plus infinity (nullopt).
std::optional<RatFunc> act(const BTMatrix& g, const std::optional<RatFunc>& z) {
    if (!z) return g.c().is_zero() ? std::nullopt : std::optional<RatFunc>(g.a() / g.c());
    const RatFunc den = g.c() * *z + g.d();
    if (den.is_zero()) return std::nullopt;
    return (g.a() * *z + g.b()) / den;
}

KPoint kp(const std::optional<RatFunc>& z, int q) { return z ? KPoint(*z) : KPoint::infinity(q); }

RatFunc rf(const std::string& s, int q) { return parse_ratfunc(s, q); }

BTMatrix mat(const std::string& s, int q) {
    auto e = parse_matrix(s, q);
    return BTMatrix(e[0], e[1], e[2], e[3]);
}

// alpha^2 = Y^2 + Y over F_3.
QuadIrr alpha_f3() {
    const int q = 3;
    return QuadIrr::with_leading(Poly::constant(q, 1), Poly(q), -parse_poly("Y^2+Y", q), 1);
}

std::vector<QuadIrr> quad_corpus() {
    const int q = 3;
    return {alpha_f3(), QuadIrr(Poly::constant(q, 1), Poly::Y(q), parse_poly("2", q), 1),
            QuadIrr(parse_poly("Y", q), parse_poly("1", q), parse_poly("-Y^3-1", q), -1),
            QuadIrr(Poly::constant(5, 1), Poly(5), -parse_poly("Y^4+Y+2", 5), 1)};
}

// Naive Farey count: every (P, Q) with deg P < deg Q <= t and gcd 1, plus
// one class per constant Q.
BigInt farey_oracle(int q, int t) {
    BigInt n = q - 1;
    std::vector<Poly> all;
    std::uint64_t total = 1;
    for (int i = 0; i <= t; ++i) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<int> c;
        for (std::uint64_t x = code; x; x /= q) c.push_back(static_cast<int>(x % q));
        all.emplace_back(q, c);
    }
    for (const Poly& Q : all)
        if (Q.deg() >= 1)
            for (const Poly& P : all)
                if (P.deg() < Q.deg() && gcd(P, Q).deg() == 0) ++n;
    return n;
}

} // namespace

TEST_SUITE("bruhat_tits") {

TEST_CASE("vertex distance worked examples") {
    CHECK(vertex_distance(mat("1;0;0;Y", 3)) == 1);
    CHECK(vertex_distance(BTMatrix::identity(3)) == 0);
    CHECK(vertex_distance(mat("1;Y;0;1", 2)) == 2);
    for (int k = -4; k <= 4; ++k) {
        // |v(x)| on diagonal matrices diag(1, x)
        const RatFunc x = k >= 0 ? RatFunc(Poly::monomial(5, k)) : RatFunc(Poly::constant(5, 1), Poly::monomial(5, -k));
        CHECK(vertex_distance(BTMatrix(RatFunc(Poly::constant(5, 1)), RatFunc(5), RatFunc(5), x)) == std::abs(k));
    }
    CHECK(error_code([] { mat("1;Y;1;Y", 3); }) == "singular");
}

TEST_CASE("vertex distance agrees with the lattice oracle on random matrices") {
    std::mt19937_64 rng(1);
    for (int q : {2, 3, 5})
        for (int i = 0; i < 200; ++i) {
            BTMatrix g = rand_matrix(rng, q);
            CHECK(vertex_distance(g) == vertex_distance_oracle(g));
            CHECK(vertex_distance(g) == vertex_distance(g.inverse()));
        }
}

TEST_CASE("tree metric properties") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const int q = i % 2 ? 3 : 2;
        BTMatrix g1 = rand_matrix(rng, q), g2 = rand_matrix(rng, q), g3 = rand_matrix(rng, q), h = rand_matrix(rng, q);
        const int d12 = vertex_distance(g1, g2), d23 = vertex_distance(g2, g3), d13 = vertex_distance(g1, g3);
        CHECK(d13 <= d12 + d23);
        CHECK(vertex_distance(h * g1, h * g2) == d12);
        CHECK(d12 == ball_distance(vertex_ball(g1), vertex_ball(g2)));
        CHECK(vertex_distance(g1, g2) == vertex_distance(g2, g1));
    }
}

TEST_CASE("balls around the base point") {
    for (int q : {2, 3}) {
        const int R = 5;
        auto balls = balls_within(q, R);
        std::vector<int> shell(R + 1, 0);
        const Ball base{0, RatFunc(q)};
        for (const Ball& b : balls) {
            const int d = ball_distance(b, base);
            REQUIRE(d <= R);
            ++shell[d];
            CHECK(vertex_ball(ball_matrix(b)) == b);
            CHECK(make_ball(b.center, b.n) == b);
        }
        CHECK(shell[0] == 1);
        int expect = q + 1;
        for (int k = 1; k <= R; ++k, expect *= q) CHECK(shell[k] == expect);
        for (std::size_t i = 0; i < balls.size(); i += 7)
            for (std::size_t j = i + 1; j < balls.size(); j += 5) CHECK(ball_distance(balls[i], balls[j]) > 0);
    }
}

TEST_CASE("horoball heights") {
    auto h = horoball_height(mat("0;-1;1;0", 3));
    CHECK(h.height == 0);
    CHECK(h.center.is_zero());
    h = horoball_height(mat("1;0;Y;1", 3));
    CHECK(h.height == 2);
    CHECK(h.center == rf("1/Y", 3));
    CHECK(horoball_height(mat("1;0;Y^-1;1", 3)).height == -2);
    CHECK(error_code([] { horoball_height(mat("1;Y;0;1", 3)); }) == "fixes-infinity");
    CHECK(error_code([] { horoball_height(mat("Y;0;1;1", 3)); }) == "det-not-unit");
    // Translating the image moves only the centre.
    auto moved = horoball_height(mat("1;Y^2;0;1", 3) * mat("1;0;Y;1", 3));
    CHECK(moved.height == 2);
    CHECK(moved.center == rf("1/Y + Y^2", 3));
}

TEST_CASE("translation lengths") {
    CHECK(translation_length(mat("Y;1;1;0", 3)) == 2);
    CHECK(translation_length(mat("1;1;0;1", 3)) == 0);
    CHECK(translation_length(mat("Y^2;1;1;0", 3)) == 4);
    for (const char* s : {"Y;1;1;0", "1;1;0;1", "Y^2;1;1;0", "0;-1;1;0", "1;Y;0;1"})
        CHECK(translation_length_oracle(mat(s, 3)) == translation_length(mat(s, 3)));
    // Elliptic with |tr| < 1: the formula 2|v(tr)| would give 2.
    BTMatrix ell = mat("1/Y;1;-1;0", 3);
    CHECK(translation_length(ell) == 0);
    CHECK(translation_length_oracle(ell) == 0);
    CHECK(error_code([] { translation_length(mat("Y;0;0;1", 3)); }) == "det-not-unit");
}

TEST_CASE("translation length against displacement on random products") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const int q = 3;
        // [[a1, 1], [1, 0]] [[a2, 1], [1, 0]] with deg a_i >= 1
        Poly a1 = rand_poly(rng, q, 2), a2 = rand_poly(rng, q, 2);
        if (a1.deg() < 1 || a2.deg() < 1) continue;
        const Poly one = Poly::constant(q, 1), zero(q);
        BTMatrix g = BTMatrix::from_polys(a1, one, one, zero) * BTMatrix::from_polys(a2, one, one, zero);
        if (translation_length(g) > 6) continue;
        CHECK(translation_length_oracle(g, 4) == translation_length(g));
    }
}

TEST_CASE("Patterson point measure") {
    CHECK(patterson_point_ball(3, RatFunc(3), 1) == Rational(1, 3));
    CHECK(patterson_point_total(3) == Rational(4, 3));
    for (int q : {2, 3, 5}) {
        CHECK(patterson_point_total(q) == Rational(q + 1, q));
        // Shell sum 1 + sum_{k=1}^{K} (q-1) q^{-k-1} equals the mass of B(0, q^K).
        Rational shells = 1;
        for (int K = 1; K <= 12; ++K) {
            shells += Rational(q - 1) * rational_pow(q, -K - 1);
            CHECK(patterson_point_ball(q, RatFunc(q), -K) == shells);
        }
        CHECK(patterson_point_total(q) - shells == rational_pow(q, -13));
    }
}

TEST_CASE("Patterson measure is additive over ball partitions") {
    std::mt19937_64 rng(4);
    for (int q : {2, 3, 5})
        for (int i = 0; i < 60; ++i) {
            const int n = static_cast<int>(rng() % 9) - 4;
            const Ball b = make_ball(rand_ratfunc(rng, q), n);
            Rational parts = 0;
            for (int t = 0; t < q; ++t) {
                RatFunc shift = n >= 0 ? RatFunc(Poly::constant(q, t), Poly::monomial(q, n))
                                       : RatFunc(Poly::monomial(q, -n, t));
                parts += patterson_point_ball(q, b.center + shift, n + 1);
            }
            CHECK(parts == patterson_point_ball(q, b.center, n));
        }
    // The q^2 balls of radius q^-2 inside O_v carry its whole mass.
    for (int q : {2, 3}) {
        Rational fine = 0;
        for (const Ball& c : balls_within(q, 2))
            if (c.n == 2 && c.center.valuation().value_or(99) >= 0) fine += patterson_point_ball(q, c.center, 2);
        CHECK(fine == 1);
    }
}

TEST_CASE("horoball and line skinning densities") {
    CHECK(horoball_ball_mass(2, 3) == Rational(1, 8));
    CHECK(horoball_ball_mass(3, -1) == 3);
    QPower d = line_density(KPoint(RatFunc(3)), KPoint(rf("1", 3)), KPoint(rf("Y", 3)));
    CHECK(d.exp == -2);
    CHECK(d.value() == Rational(1, 9));
    CHECK(error_code([] { line_density(KPoint(RatFunc(3)), KPoint(rf("1", 3)), KPoint(rf("1", 3))); }) ==
          "singular-point");
    CHECK(error_code([] { line_density(KPoint(RatFunc(3)), KPoint(rf("1", 3)), KPoint::infinity(3)); }) ==
          "singular-point");
}

TEST_CASE("absolute crossratios") {
    const int q = 3;
    QPower c = crossratio_abs(KPoint(RatFunc(q)), KPoint(rf("1", q)), KPoint::infinity(q), KPoint(rf("Y", q)));
    CHECK(c.exp == 0);
    std::mt19937_64 rng(5);
    const RatFunc y3 = rf("Y^3", q);
    for (int i = 0; i < 20; ++i) {
        RatFunc a = rand_ratfunc(rng, q), b = rand_ratfunc(rng, q), x = rand_ratfunc(rng, q), w = rand_ratfunc(rng, q);
        if (a == b || a == x || a == w || b == x || b == w || x == w) continue;
        const QPower base = crossratio_abs(a, b, x, w);
        CHECK(crossratio_abs(b, a, w, x) == base);
        CHECK(crossratio_abs(a + y3, b + y3, x + y3, w + y3) == base);
        const std::optional<RatFunc> pts[4] = {a, b, x, w};
        for (int k = 0; k < 50; ++k) {
            BTMatrix g = rand_matrix(rng, q);
            std::optional<RatFunc> img[4];
            for (int j = 0; j < 4; ++j) img[j] = act(g, pts[j]);
            CHECK(crossratio_abs(kp(img[0], q), kp(img[1], q), kp(img[2], q), kp(img[3], q)) == base);
        }
    }
}

TEST_CASE("relative height worked example") {
    const QuadIrr a = alpha_f3();
    const QuadIrr b = a.transform(Poly::constant(3, 1), Poly::constant(3, 1), Poly(3), Poly::constant(3, 1));
    const KPoint A(a), As(a.conj()), B(b), Bs(b.conj());
    CHECK(crossratio_abs(A, B, Bs, As).exp == 0);
    CHECK(crossratio_abs(A, Bs, B, As).exp == -2);
    CHECK(relative_height(a, b).exp == 0);
    CHECK(axis_distance(a, b) == 0);
    CHECK(error_code([&] { relative_height(a, a.conj()); }) == "degenerate");
    CHECK(error_code([&] { relative_height(a, a); }) == "degenerate");
}

TEST_CASE("relative height invariances and the axis oracle") {
    std::mt19937_64 rng(6);
    for (const QuadIrr& a : quad_corpus()) {
        const int q = a.q();
        for (int i = 0; i < 8; ++i) {
            auto g = rand_gl2(rng, q);
            const QuadIrr b = a.transform(g[0], g[1], g[2], g[3]);
            if (b == a || b == a.conj()) continue;
            const QPower h = relative_height(a, b);
            CHECK(h.exp >= 0);
            CHECK(h.exp == axis_distance(a, b));
            CHECK(relative_height(a.conj(), b) == h);
            CHECK(relative_height(a, b.conj()) == h);
            auto k = rand_gl2(rng, q);
            CHECK(relative_height(a.transform(k[0], k[1], k[2], k[3]), b.transform(k[0], k[1], k[2], k[3])) == h);
            // Symmetry of the first crossratio term under swapping alpha and beta.
            const KPoint A(a), As(a.conj()), B(b), Bs(b.conj());
            CHECK(crossratio_abs(A, B, Bs, As) == crossratio_abs(B, A, As, Bs));
        }
    }
}

TEST_CASE("norm forms") {
    const QuadIrr a = alpha_f3();
    const int q = 3;
    CHECK(norm_form(a, Poly::constant(q, 1), Poly(q)).exp == 0);
    CHECK(norm_form(a, Poly(q), Poly::constant(q, 1)).exp == 2);
    const Poly one = Poly::constant(q, 1), zero(q);
    TransformCheck t = transform_check(a, one, one, zero, one, default_grid(q));
    CHECK(t.points == 24);
    CHECK(t.pass());
    CHECK(error_code([&] { transform_check(a, Poly::Y(q), zero, zero, one, default_grid(q)); }) == "not-in-GL2");
    CHECK(error_code([&] { norm_form(a, zero, zero); }) == "bad-argument");
}

TEST_CASE("norm form transformation law on random g") {
    std::mt19937_64 rng(7);
    for (const QuadIrr& a : quad_corpus())
        for (int i = 0; i < 20; ++i) {
            auto g = rand_gl2(rng, a.q());
            CHECK(transform_check(a, g[0], g[1], g[2], g[3], default_grid(a.q())).pass());
        }
}

TEST_CASE("covolume identities") {
    for (int q : {2, 3, 5}) CHECK(covolume_suite(q).pass());
    CHECK(covolume_suite(2).nagao_series == Rational(2, 3));
    CHECK(covolume_suite(3).via_zeta == Rational(1, 8));
    CHECK(ideal_covolume(parse_poly("Y^2", 2)) == 2);
    CHECK(zeta_value(3, -1) == Rational(1, 16));
    auto partial = nagao_partial_sums(2, 40);
    for (std::size_t i = 1; i < partial.size(); ++i) CHECK(partial[i] > partial[i - 1]);
    // The 40 partial terms stop at Gamma_38; the tail from n = 39 is
    // (1/((q-1) q^41)) / (1 - 1/q) = 2^-40 for q = 2.
    CHECK(covolume_suite(2).nagao_series - partial.back() == rational_pow(2, -40));
}

TEST_CASE("Hecke indices") {
    struct Row {
        int q;
        const char* ideal;
        int index;
    };
    for (const Row& r : {Row{2, "Y", 3}, Row{3, "Y^2", 12}, Row{2, "Y(Y+1)", 9}}) {
        HeckeReport h = hecke_index(parse_poly(r.ideal, r.q), true);
        CHECK(h.formula == r.index);
        REQUIRE(h.enumerated);
        CHECK(*h.enumerated == r.index);
    }
    std::mt19937_64 rng(8);
    for (int i = 0; i < 12; ++i) {
        const int q = i % 2 ? 3 : 2;
        Poly I = rand_poly(rng, q, 3);
        if (I.is_zero()) continue;
        HeckeReport h = hecke_index(I, true);
        CHECK(h.formula == *h.enumerated);
    }
    CHECK(error_code([] { hecke_index(parse_poly("Y^5", 2), true); }) == "budget");
}

TEST_CASE("Farey counts against the naive oracle") {
    for (int t = 0; t <= 5; ++t) CHECK(farey_count(2, t, 0).psi[t] == farey_oracle(2, t));
    for (int t = 0; t <= 3; ++t) CHECK(farey_count(3, t, 0).psi[t] == farey_oracle(3, t));
    // (q - 1) + q (q - 1)(q^2t - 1)/(q + 1)
    for (int q : {2, 3, 5}) {
        FareyReport r = farey_count(q, 4, 0);
        for (int t = 0; t <= 4; ++t) {
            BigInt expect = BigInt(q - 1) + BigInt(q) * (q - 1) * (big_pow(q, 2 * t) - 1) / (q + 1);
            CHECK(r.psi[t] == expect);
        }
    }
}

TEST_CASE("Farey growth and equidistribution") {
    FareyReport r = farey_count(2, 9, 0);
    CHECK(r.psi[8] == 43691);
    const double ratio = static_cast<double>(r.psi[9]) / static_cast<double>(r.psi[8]);
    CHECK(std::fabs(ratio / 4 - 1) < 0.05);
    FareyReport h = farey_count(2, 8, 1);
    CHECK(h.points == 43691);
    CHECK(h.max_rel_dev < 0.02);
    FareyReport h3 = farey_count(3, 5, 2);
    CHECK(h3.hist.size() == 9);
    CHECK(h3.max_rel_dev < 0.05);
}

TEST_CASE("orbit experiment") {
    const QuadIrr a = alpha_f3();
    OrbitReport c = quad_orbit_experiment(a, OrbitMode::Complexity, 4, 8);
    CHECK(c.size > 20);
    for (std::size_t i = 1; i < c.rows.size(); ++i) CHECK(c.rows[i].cumulative >= c.rows[i - 1].cumulative);
    CHECK(c.rows.back().cumulative <= c.size);
    OrbitReport r = quad_orbit_experiment(a, OrbitMode::RelativeHeight, 4, 8);
    CHECK(r.powers_of_q);
    CHECK(r.skipped >= 1);
    CHECK(r.rows.front().exp >= 0);
    for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].cumulative >= r.rows[i - 1].cumulative);
    CHECK(error_code([&] { quad_orbit_experiment(a, OrbitMode::Complexity, 13, 4); }) == "bad-argument");
}

} // TEST_SUITE

TEST_SUITE("expr_parse") {

TEST_CASE("rational function expressions") {
    const int q = 3;
    const Poly Y = Poly::Y(q), one = Poly::constant(q, 1);
    CHECK(parse_poly("Y^2+Y", q) == Y * Y + Y);
    CHECK(parse_poly("2Y", q) == Y.scaled(2));
    CHECK(parse_poly("(Y+1)(Y-1)", q) == Y * Y - one);
    CHECK(parse_poly("-3", q).is_zero());
    CHECK(parse_poly(" Y ^ 3 - y ", q) == Y.pow(3) - Y);
    CHECK(parse_ratfunc("Y^-1", q) == RatFunc(one, Y));
    CHECK(parse_ratfunc("(Y+1)/(Y-1)", q) == RatFunc(Y + one, Y - one));
    CHECK(parse_ratfunc("1/Y/Y", q) == RatFunc(one, Y * Y));
    auto m = parse_matrix("Y;1;1;0", q);
    CHECK(m[0] == RatFunc(Y));
    CHECK(m[3].is_zero());
    CHECK(parse_poly_list("1;0;-Y^2-Y", q).size() == 3);
}

TEST_CASE("parse errors") {
    for (const char* bad : {"Y+", "1/0", "(Y", "Y^x", "Z", "", "Y^-1;"})
        CHECK(error_code([&] { parse_ratfunc(bad, 3); }) == "parse-error");
    CHECK(error_code([] { parse_poly("1/Y", 3); }) == "parse-error");
    CHECK(error_code([] { parse_matrix("1;2;3", 3); }) == "parse-error");
    CHECK(error_code([] { parse_ratfunc("Y", 4); }) == "bad-field");
}

} // TEST_SUITE
