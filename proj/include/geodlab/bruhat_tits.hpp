#pragma once

// The Bruhat-Tits tree of PGL_2 over K_v = F_q((Y^-1)), pi = 1/Y.
//
// Vertices are identified with balls of K_v: the class of the lattice
// spanned by (pi^n, 0) and (x, 1) is the ball x + pi^n O_v, of radius q^-n.
// The standard base point is O_v itself (n = 0, x = 0).
//
// Values that are exact powers of q are returned as QPower.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geodlab/ff_arith.hpp"

namespace geodlab {

struct QPower {
    int q = 2;
    int exp = 0; // value q^exp
    Rational value() const { return rational_pow(q, exp); }
    bool operator==(const QPower& o) const { return q == o.q && exp == o.exp; }
};

class BTMatrix {
public:
    // Throws "singular" when ad - bc = 0.
    BTMatrix(RatFunc a, RatFunc b, RatFunc c, RatFunc d);
    static BTMatrix identity(int q);
    static BTMatrix from_polys(const Poly& a, const Poly& b, const Poly& c, const Poly& d);

    int q() const { return a_.q(); }
    const RatFunc& a() const { return a_; }
    const RatFunc& b() const { return b_; }
    const RatFunc& c() const { return c_; }
    const RatFunc& d() const { return d_; }
    const RatFunc& det() const { return det_; }
    int det_valuation() const { return v_det_; }
    int min_entry_valuation() const { return v_min_; }

    BTMatrix operator*(const BTMatrix& o) const;
    BTMatrix inverse() const;
    bool projectively_equal(const BTMatrix& o) const;
    std::string str() const;

private:
    RatFunc a_, b_, c_, d_, det_;
    int v_det_ = 0, v_min_ = 0;
};

struct Ball {
    int n = 0;        // radius q^-n
    RatFunc center;   // canonical: the expansion truncated below Y^-n
    bool operator==(const Ball& o) const { return n == o.n && center == o.center; }
};

// Truncates the centre so that equal balls compare equal.
Ball make_ball(const RatFunc& center, int n);
int ball_distance(const Ball& x, const Ball& y);
// [[pi^n, x], [0, 1]], which maps the base point to the ball.
BTMatrix ball_matrix(const Ball& b);
// The vertex g.* as a ball, by column reduction of g over O_v.
Ball vertex_ball(const BTMatrix& g);
// Every vertex within distance R of the base point, in breadth-first order.
std::vector<Ball> balls_within(int q, int radius);

// d(*, g.*) = |v(det g) - 2 min v(entries)|.
int vertex_distance(const BTMatrix& g);
int vertex_distance(const BTMatrix& g1, const BTMatrix& g2);
// Independent route: Hermite form of the lattice g O_v^2, then the ball tree.
int vertex_distance_oracle(const BTMatrix& g);

struct HoroballImage {
    int height = 0; // -2 v(c)
    RatFunc center; // a / c
};
// Image of the horoball centred at infinity. Errors "fixes-infinity" when
// c = 0 and "det-not-unit" when v(det) != 0.
HoroballImage horoball_height(const BTMatrix& g);

// Translation length for det in O_v^x: max(0, -2 v(tr)). Elliptic and
// parabolic elements (|tr| <= 1) give 0.
int translation_length(const BTMatrix& g);
// min over vertices x within `radius` of the base point of d(x, g x).
int translation_length_oracle(const BTMatrix& g, int radius = 6);

// A point of K_v or infinity, known exactly (rational) or by expansion.
class KPoint {
public:
    static KPoint infinity(int q);
    KPoint(const RatFunc& x); // NOLINT
    KPoint(const QuadIrr& x); // NOLINT

    int q() const { return q_; }
    bool is_infinite() const { return inf_; }
    const std::optional<RatFunc>& exact() const { return exact_; }
    const LaurentSeries& series() const { return series_; }

private:
    KPoint() = default;
    int q_ = 2;
    bool inf_ = false;
    std::optional<RatFunc> exact_;
    LaurentSeries series_;
};

// v(x - y) for finite points; "degenerate" if they coincide.
int valuation_of_difference(const KPoint& x, const KPoint& y);

// |a,b,c,d| = |c-a||d-b| / (|c-b||d-a|); factors containing infinity drop.
QPower crossratio_abs(const KPoint& a, const KPoint& b, const KPoint& c, const KPoint& d);

// Patterson density of the base point: max(1, |z|)^-2 dHaar, Haar(O_v) = 1.
Rational patterson_point_ball(int q, const RatFunc& center, int n);
Rational patterson_point_total(int q); // (q+1)/q
// Haar measure of a ball of radius q^-n: the horoball skinning measure.
Rational horoball_ball_mass(int q, int n);
// |L+ - L-| / (|rho - L-| |rho - L+|); "singular-point" if rho is an
// endpoint or infinity.
QPower line_density(const KPoint& lminus, const KPoint& lplus, const KPoint& rho);

// max(|alpha, beta, beta^s, alpha^s|, |alpha, beta^s, beta, alpha^s|).
// "degenerate" when beta is alpha or its conjugate.
QPower relative_height(const QuadIrr& alpha, const QuadIrr& beta);
// Distance between the two translation axes, read off the ball tree.
int axis_distance(const QuadIrr& alpha, const QuadIrr& beta);

// |x^2 - xy tr(alpha) + y^2 n(alpha)|.
QPower norm_form(const QuadIrr& alpha, const Poly& x, const Poly& y);

struct TransformCheck {
    int points = 0;
    int failures = 0;
    bool pass() const { return points > 0 && failures == 0; }
};
// Checks Q_{g alpha}(x, y) = (h(alpha) / h(g alpha)) Q_alpha(g^-1 (x, y))
// for g in GL_2(F_q[Y]) over all (x, y) != (0, 0) in grid x grid.
// "not-in-GL2" unless det g is a nonzero constant.
TransformCheck transform_check(const QuadIrr& alpha, const Poly& a, const Poly& b, const Poly& c, const Poly& d,
                               const std::vector<Poly>& grid);
// 0, 1, Y, Y+1, Y^2+1.
std::vector<Poly> default_grid(int q);

struct CovolumeReport {
    int q = 2;
    int genus = 0;
    Rational nagao_series; // 1/|Gamma_-1| + sum_n 1/|Gamma_n|
    Rational via_zeta;     // 2 zeta_K(-1)
    Rational closed_form;  // 2 / ((q-1)(q^2-1))
    bool pass() const { return nagao_series == via_zeta && via_zeta == closed_form; }
};
CovolumeReport covolume_suite(int q);
// zeta_K(s) for K = F_q(Y) from Z(u) = 1 / ((1-u)(1-qu)) at u = q^-s.
Rational zeta_value(int q, int s);
// Haar(K_v / I) = q^(g-1) N(I).
Rational ideal_covolume(const Poly& ideal, int genus = 0);
// Partial sums of the modular-ray series, first `terms` vertex groups.
std::vector<Rational> nagao_partial_sums(int q, int terms);

struct HeckeReport {
    BigInt formula;
    std::optional<BigInt> enumerated;
    BigInt gl_order, borel_order; // in GL_2(F_q[Y]/I), when enumerated
};
// N(I) prod_{p | I} (1 + 1/N(p)); with `enumerate`, also
// |GL_2(R/I)| / |B(R/I)| by listing matrices ("budget" beyond the cap).
HeckeReport hecke_index(const Poly& ideal, bool enumerate);

struct FareyReport {
    int q = 2, t = 0, depth = 0;
    std::vector<BigInt> psi; // psi[s] for s = 0..t
    std::vector<std::uint64_t> hist;
    std::uint64_t points = 0;
    double max_rel_dev = 0; // max |hist_i q^depth / points - 1|
};
// Coprime pairs (P, Q), Q != 0, deg Q <= t, modulo P -> P + kQ; the
// histogram bins Y P/Q (deg P < deg Q) by its first `depth` digits.
FareyReport farey_count(int q, int t, int depth);

enum class OrbitMode { Complexity, RelativeHeight };
struct OrbitRow {
    int exp = 0; // threshold q^exp
    std::uint64_t count = 0, cumulative = 0;
};
struct OrbitReport {
    std::size_t size = 0;    // distinct orbit points reached
    std::size_t skipped = 0; // alpha_0 and its conjugate in relative mode
    std::vector<OrbitRow> rows;
    bool monotone = true;
    bool powers_of_q = true;
};
// Words of length <= L in z+1, z-1, z+Y, z-Y, 1/z applied to alpha_0.
OrbitReport quad_orbit_experiment(const QuadIrr& alpha0, OrbitMode mode, int L, int bins);

} // namespace geodlab
