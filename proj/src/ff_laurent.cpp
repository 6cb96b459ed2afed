#include <algorithm>
#include <atomic>
#include <climits>
#include <sstream>

#include "geodlab/ff_arith.hpp"

namespace geodlab {

namespace {
const char* kMod = "ff_arith";
std::atomic<int> g_cap{256};

// Hard ceiling for internal extensions, which may overshoot the user cap a
// little when precision is lost to division or cancellation.
int internal_cap() { return 4 * g_cap.load() + 64; }
} // namespace

int laurent_cap() { return g_cap.load(); }
void set_laurent_cap(int cap) {
    if (cap < 1) throw Error("bad-argument", kMod, "set-laurent-cap");
    g_cap.store(cap);
}

LaurentSeries::LaurentSeries(int q, int lo, std::vector<int> coeffs, bool terminates,
                             std::shared_ptr<const Source> src)
    : q_(q), lo_(lo), c_(std::move(coeffs)), terminates_(terminates), src_(std::move(src)) {
    for (int& x : c_) x = fq_norm(q_, x);
    if (terminates_ && c_.empty()) c_.push_back(0);
}

LaurentSeries LaurentSeries::from_poly(const Poly& p) {
    if (p.is_zero()) return zero(p.q());
    std::vector<int> c(p.deg() + 1);
    for (int i = 0; i <= p.deg(); ++i) c[i] = p[p.deg() - i];
    return LaurentSeries(p.q(), -p.deg(), std::move(c), true);
}

int LaurentSeries::coeff(int k) const {
    if (k < lo_) return 0;
    if (k < hi()) return c_[k - lo_];
    if (terminates_) return 0;
    throw Error("precision-exhausted", kMod, "coeff", "index " + std::to_string(k));
}

LaurentSeries LaurentSeries::extend(int hi_req) const {
    if (terminates_ || hi_req <= hi()) return *this;
    if (!src_) throw Error("precision-exhausted", kMod, "extend", "series is not extendable");
    if (hi_req - lo_ > internal_cap())
        throw Error("precision-cap", kMod, "extend", std::to_string(hi_req - lo_) + " coefficients");
    LaurentSeries r = (*src_)(hi_req);
    if (!r.terminates_ && r.hi() < hi_req) throw Error("internal", kMod, "extend", "source fell short");
    return r;
}

std::optional<int> LaurentSeries::valuation() const {
    LaurentSeries cur = *this;
    const int cap = laurent_cap();
    while (true) {
        for (size_t i = 0; i < cur.c_.size(); ++i)
            if (cur.c_[i]) return cur.lo_ + static_cast<int>(i);
        if (cur.terminates_) return std::nullopt;
        if (!cur.src_ || cur.prec() >= cap)
            throw Error("precision-exhausted", kMod, "valuation",
                        "no nonzero coefficient among " + std::to_string(cur.prec()));
        int n = std::min(cap, 2 * std::max(cur.prec(), 1));
        cur = cur.extend(cur.lo_ + n);
    }
}

LaurentSeries LaurentSeries::operator-() const {
    std::vector<int> c(c_);
    for (int& x : c) x = fq_norm(q_, -x);
    std::shared_ptr<const Source> src;
    if (src_) {
        auto self = *this;
        src = std::make_shared<const Source>([self](int n) { return -self.extend(n); });
    }
    return LaurentSeries(q_, lo_, std::move(c), terminates_, src);
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
    if (q_ != o.q_) throw Error("field-mismatch", kMod, "series-add");
    const int lo = std::min(lo_, o.lo_);
    int h;
    bool term = terminates_ && o.terminates_;
    if (term) h = std::max(hi(), o.hi());
    else h = std::min(terminates_ ? INT_MAX : hi(), o.terminates_ ? INT_MAX : o.hi());
    std::vector<int> c(std::max(0, h - lo));
    for (int k = lo; k < h; ++k) c[k - lo] = fq_norm(q_, static_cast<long>(coeff(k)) + o.coeff(k));
    std::shared_ptr<const Source> src;
    if (!term && extendable() && o.extendable()) {
        auto a = *this, b = o;
        src = std::make_shared<const Source>([a, b](int n) { return a.extend(n) + b.extend(n); });
    }
    return LaurentSeries(q_, lo, std::move(c), term, src);
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
    if (q_ != o.q_) throw Error("field-mismatch", kMod, "series-mul");
    const int lo = lo_ + o.lo_;
    const bool term = terminates_ && o.terminates_;
    long hi = LONG_MAX;
    if (term) hi = static_cast<long>(this->hi()) + o.hi() - 1;
    if (!terminates_) hi = std::min(hi, static_cast<long>(this->hi()) + o.lo_);
    if (!o.terminates_) hi = std::min(hi, static_cast<long>(o.hi()) + lo_);
    std::vector<long> acc(std::max(0L, hi - lo), 0);
    for (int i = 0; i < prec(); ++i) {
        if (!c_[i]) continue;
        for (int j = 0; j < o.prec() && i + j < static_cast<int>(acc.size()); ++j)
            acc[i + j] += static_cast<long>(c_[i]) * o.c_[j];
    }
    std::vector<int> c(acc.size());
    for (size_t k = 0; k < acc.size(); ++k) c[k] = fq_norm(q_, acc[k]);
    std::shared_ptr<const Source> src;
    if (!term && extendable() && o.extendable()) {
        auto a = *this, b = o;
        src = std::make_shared<const Source>(
            [a, b](int n) { return a.extend(n - b.lo_) * b.extend(n - a.lo_); });
    }
    return LaurentSeries(q_, lo, std::move(c), term, src);
}

LaurentSeries LaurentSeries::inverse_to(int hi_req) const {
    auto v = valuation();
    if (!v) throw Error("division-by-zero", kMod, "series-inverse");
    const int rel = hi_req + *v; // coefficients needed from index -v
    LaurentSeries x = extend(hi_req + 2 * *v);
    std::vector<int> u(std::max(rel, 1));
    for (int i = 0; i < static_cast<int>(u.size()); ++i) u[i] = x.coeff(*v + i);
    std::vector<int> w(u.size());
    const int w0 = fq_inv(q_, u[0]);
    w[0] = w0;
    for (size_t k = 1; k < u.size(); ++k) {
        long s = 0;
        for (size_t i = 1; i <= k; ++i) s += static_cast<long>(u[i]) * w[k - i];
        w[k] = fq_norm(q_, -fq_norm(q_, s) * static_cast<long>(w0));
    }
    auto self = *this;
    auto src = std::make_shared<const Source>([self](int n) { return self.inverse_to(n); });
    return LaurentSeries(q_, -*v, std::move(w), false, src);
}

LaurentSeries LaurentSeries::inverse() const {
    auto v = valuation();
    if (!v) throw Error("division-by-zero", kMod, "series-inverse");
    const int rel = terminates_ ? std::max(prec(), 16) : hi() - *v;
    return inverse_to(rel - *v);
}

LaurentSeries LaurentSeries::window(int lo, int hi_req) const {
    LaurentSeries x = extend(hi_req);
    std::vector<int> c(std::max(0, hi_req - lo));
    for (int k = lo; k < hi_req; ++k) c[k - lo] = x.coeff(k);
    std::shared_ptr<const Source> src = src_;
    if (terminates_ && !src) {
        auto self = *this;
        src = std::make_shared<const Source>([self](int) { return self; });
    }
    return LaurentSeries(q_, lo, std::move(c), false, src);
}

std::string LaurentSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < prec(); ++i) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        int e = -(lo_ + i);
        if (c_[i] != 1 || e == 0) os << c_[i] << (e ? "*" : "");
        if (e) os << "Y^" << e;
    }
    if (first) os << "0";
    if (!terminates_) os << " + O(Y^" << -hi() << ")";
    return os.str();
}

ValAbs valuation_abs(const LaurentSeries& x) {
    auto v = x.valuation();
    if (!v) return {std::nullopt, Rational(0)};
    return {v, rational_pow(x.q(), -*v)};
}

ValAbs valuation_abs(const RatFunc& x) {
    auto v = x.valuation();
    if (!v) return {std::nullopt, Rational(0)};
    return {v, rational_pow(x.q(), -*v)};
}

namespace {

// Coefficients of P/Q from index v = deg Q - deg P up to (excluding) hi.
LaurentSeries rat_series(const RatFunc& x, int hi) {
    const Poly& P = x.num();
    const Poly& Q = x.den();
    const int q = x.q();
    const int n = P.deg(), m = Q.deg(), v = m - n;
    const int K = std::max(hi - v, 1);
    std::vector<int> s(K);
    const int inv = fq_inv(q, Q.lc());
    for (int k = 0; k < K; ++k) {
        long acc = P[n - k] * (k <= n ? 1L : 0L);
        for (int i = 1; i <= std::min(k, m); ++i) acc -= static_cast<long>(Q[m - i]) * s[k - i];
        s[k] = fq_norm(q, fq_norm(q, acc) * static_cast<long>(inv));
    }
    auto src = std::make_shared<const LaurentSeries::Source>([x](int h) { return rat_series(x, h); });
    return LaurentSeries(q, v, std::move(s), false, src);
}

} // namespace

LaurentSeries lazy_series(const RatFunc& x) {
    if (x.is_zero()) return LaurentSeries::zero(x.q());
    if (x.is_poly()) return LaurentSeries::from_poly(x.num());
    return rat_series(x, *x.valuation() + 16);
}

LaurentSeries laurent_expand(const RatFunc& x, int prec) {
    if (prec < 1) throw Error("bad-argument", kMod, "laurent_expand", "prec must be positive");
    if (prec > laurent_cap()) throw Error("precision-cap", kMod, "laurent_expand", std::to_string(prec));
    if (x.is_zero()) return LaurentSeries::zero(x.q());
    const int v = *x.valuation();
    return rat_series(x, v + prec);
}

// ---------------------------------------------------------------- quadratic

LaurentSeries QuadIrr::sqrt_disc_to(int hi) const {
    const int q = A_.q();
    const int d = D_.deg();
    const int lo = -d / 2;
    const int K = std::max(hi - lo, 1);
    std::vector<int> s(K);
    s[0] = s_;
    const long inv2s = fq_inv(q, 2 * s_);
    for (int k = 1; k < K; ++k) {
        long acc = D_[d - k] * (k <= d ? 1L : 0L);
        for (int i = 1; i < k; ++i) acc -= static_cast<long>(s[i]) * s[k - i];
        s[k] = fq_norm(q, fq_norm(q, acc) * inv2s);
    }
    auto self = *this;
    auto src = std::make_shared<const LaurentSeries::Source>([self](int h) { return self.sqrt_disc_to(h); });
    return LaurentSeries(q, lo, std::move(s), false, src);
}

LaurentSeries QuadIrr::series_to(int hi) const {
    const int q = A_.q();
    const int degA = A_.deg();
    LaurentSeries S = sqrt_disc_to(hi - degA + 1);
    LaurentSeries num = LaurentSeries::from_poly(-B_) + (eps_ == 1 ? S : -S);
    LaurentSeries inv = laurent_expand(RatFunc(Poly::constant(q, 1), A_.scaled(2)), 1)
                            .extend(hi - num.lo() + 1);
    LaurentSeries prod = num * inv;
    std::vector<int> c(prod.coeffs());
    auto self = *this;
    auto src = std::make_shared<const LaurentSeries::Source>([self](int h) { return self.series_to(h); });
    return LaurentSeries(q, prod.lo(), std::move(c), false, src);
}

LaurentSeries lazy_series(const QuadIrr& x) { return x.series_to(16); }

LaurentSeries laurent_expand(const QuadIrr& x, int prec) {
    if (prec < 1) throw Error("bad-argument", kMod, "laurent_expand", "prec must be positive");
    if (prec > laurent_cap()) throw Error("precision-cap", kMod, "laurent_expand", std::to_string(prec));
    LaurentSeries s = x.series_to(16);
    const int v = *s.valuation(); // irrational, so never zero
    return s.window(v, v + prec);
}

} // namespace geodlab
