#pragma once

// Exact arithmetic over a prime field F_q: polynomials, rational functions,
// truncated Laurent series in Y^-1, Euler's function, continued fractions
// and quadratic irrationals.
//
// Laurent series use the v_inf convention: a series is sum_k c_k Y^-k, so
// Y has valuation -1 and |x| = q^-v(x).

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "geodlab/common.hpp"

namespace geodlab {

// Throws "bad-field" unless 2 <= q <= 101 is prime.
void check_field(int q);
bool is_prime(long n);

int fq_norm(int q, long x);
int fq_inv(int q, int a);
// Square root in F_q^x by exhaustive search; the canonical one lies in
// [1, (q-1)/2] for odd q.
std::optional<int> fq_sqrt(int q, int a);

class Poly {
public:
    explicit Poly(int q = 2);
    Poly(int q, std::vector<int> coeffs); // little-endian, reduced mod q

    static Poly constant(int q, long c);
    static Poly monomial(int q, int deg, long c = 1);
    static Poly Y(int q) { return monomial(q, 1); }

    int q() const { return q_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; } // -1 for 0
    bool is_zero() const { return c_.empty(); }
    int lc() const { return c_.empty() ? 0 : c_.back(); }
    int operator[](int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0; }
    const std::vector<int>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(long s) const;
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly operator%(const Poly& o) const { return divmod(o).second; }
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly monic() const;
    Poly pow(unsigned k) const;
    int eval(int x) const;

    bool operator==(const Poly& o) const { return q_ == o.q_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    // Total order: by degree, then coefficients from the top.
    bool operator<(const Poly& o) const;

    std::string str() const;

private:
    void trim();
    int q_;
    std::vector<int> c_;
};

Poly gcd(Poly a, Poly b); // monic, gcd(0,0)=0
// Returns (g, s, t) with s a + t b = g, g monic.
std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b);

// All monic polynomials of degree exactly d, in lexicographic order.
std::vector<Poly> monic_polys(int q, int d);
// Monic irreducibles of degree d, cached per (q, d).
const std::vector<Poly>& monic_irreducibles(int q, int d);
// Factorisation into monic irreducibles by trial division in increasing
// degree; the unit is dropped.
std::vector<std::pair<Poly, int>> factor(const Poly& f);
bool is_irreducible(const Poly& f);

class RatFunc {
public:
    explicit RatFunc(int q = 2);
    RatFunc(Poly num); // NOLINT: polynomials embed
    RatFunc(Poly num, Poly den);

    int q() const { return num_.q(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.deg() == 0; }
    // v_inf = deg den - deg num; nullopt is +infinity.
    std::optional<int> valuation() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc inverse() const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    std::string str() const;

private:
    Poly num_, den_;
};

// Global coefficient cap for Laurent expansions (default 256).
int laurent_cap();
void set_laurent_cap(int cap);

class LaurentSeries {
public:
    // Produces the same element known through absolute index < hi.
    using Source = std::function<LaurentSeries(int hi)>;

    LaurentSeries() = default;
    // Coefficients of Y^-lo, Y^-(lo+1), ...; `terminates` means every later
    // coefficient is zero (the element is a finite sum).
    LaurentSeries(int q, int lo, std::vector<int> coeffs, bool terminates = false,
                  std::shared_ptr<const Source> src = nullptr);

    static LaurentSeries from_poly(const Poly& p);
    static LaurentSeries zero(int q) { return LaurentSeries(q, 0, {0}, true); }

    int q() const { return q_; }
    int lo() const { return lo_; }
    int prec() const { return static_cast<int>(c_.size()); }
    // First unknown absolute index; meaningless when terminates().
    int hi() const { return lo_ + prec(); }
    bool terminates() const { return terminates_; }
    bool extendable() const { return terminates_ || static_cast<bool>(src_); }
    // Known when k < hi or the series terminates; throws otherwise.
    int coeff(int k) const;
    const std::vector<int>& coeffs() const { return c_; }

    LaurentSeries extend(int hi) const;
    // Exact valuation, extending precision by doubling up to the cap.
    std::optional<int> valuation() const;

    LaurentSeries operator+(const LaurentSeries& o) const;
    LaurentSeries operator-(const LaurentSeries& o) const;
    LaurentSeries operator*(const LaurentSeries& o) const;
    LaurentSeries operator-() const;
    LaurentSeries inverse() const;
    LaurentSeries operator/(const LaurentSeries& o) const { return *this * o.inverse(); }

    // Same element re-cut to coefficients in [lo, hi).
    LaurentSeries window(int lo, int hi) const;
    std::string str() const;

private:
    LaurentSeries inverse_to(int hi) const;

    int q_ = 2;
    int lo_ = 0;
    std::vector<int> c_{0};
    bool terminates_ = true;
    std::shared_ptr<const Source> src_;
};

struct ValAbs {
    std::optional<int> v; // nullopt = +infinity
    Rational abs;         // q^-v, or 0
};
ValAbs valuation_abs(const LaurentSeries& x);
ValAbs valuation_abs(const RatFunc& x);

// A root of A X^2 + B X + C in F_q((Y^-1)): (-B + eps S) / (2A) where S is
// the square root of the discriminant whose leading coefficient lies in
// [1, (q-1)/2].
class QuadIrr {
public:
    QuadIrr(Poly A, Poly B, Poly C, int branch);
    // Branch chosen so that the expansion has the given leading coefficient.
    static QuadIrr with_leading(Poly A, Poly B, Poly C, int lead);

    int q() const { return A_.q(); }
    const Poly& A() const { return A_; }
    const Poly& B() const { return B_; }
    const Poly& C() const { return C_; }
    int branch() const { return eps_; }
    const Poly& disc() const { return D_; }
    int sqrt_lead() const { return s_; }

    QuadIrr conj() const { return QuadIrr(A_, B_, C_, -eps_, D_, s_); }
    // Homography (a x + b)/(c x + d) by a matrix over F_q[Y].
    QuadIrr transform(const Poly& a, const Poly& b, const Poly& c, const Poly& d) const;
    // Primitive (A,B,C) with A monic; the root is unchanged.
    QuadIrr canonical() const;

    // Series known through absolute index < hi.
    LaurentSeries series_to(int hi) const;
    LaurentSeries sqrt_disc_to(int hi) const;

    bool operator==(const QuadIrr& o) const;
    bool operator<(const QuadIrr& o) const;
    std::string str() const;

private:
    QuadIrr(Poly A, Poly B, Poly C, int eps, Poly D, int s)
        : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)), eps_(eps), s_(s) {}
    Poly A_, B_, C_, D_;
    int eps_ = 1;
    int s_ = 1;
};

LaurentSeries laurent_expand(const RatFunc& x, int prec);
LaurentSeries laurent_expand(const QuadIrr& x, int prec);
// Lazily extendable expansion of x (no fixed window).
LaurentSeries lazy_series(const RatFunc& x);
LaurentSeries lazy_series(const QuadIrr& x);

BigInt euler_phi(const Poly& f);
// Sum of phi over all nonzero f with 0 < deg f <= n; "too-large" when
// q^(n+1) exceeds the enumeration budget.
BigInt mertens_sum(int q, int n);
// Sum of phi over monic f of degree exactly n.
BigInt monic_phi_sum(int q, int n);

struct CFExpansion {
    std::vector<Poly> preperiod;
    std::vector<Poly> period;
};
CFExpansion cf_expand(const RatFunc& x);
CFExpansion cf_expand(const QuadIrr& x);
// Convergents p_k/q_k of the first `count` partial quotients.
std::vector<std::pair<Poly, Poly>> cf_convergents(const CFExpansion& cf, int count);

struct QuadInvariants {
    RatFunc tr, n;
    QuadIrr conj;
    int h_exp;  // h = q^h_exp
    Rational h;
};
QuadInvariants quad_invariants(const QuadIrr& a);

} // namespace geodlab
