#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "geodlab/ff_arith.hpp"

namespace geodlab {

namespace {
const char* kMod = "ff_arith";

void same_field(int a, int b, const char* op) {
    if (a != b) throw Error("field-mismatch", kMod, op, std::to_string(a) + " vs " + std::to_string(b));
}
} // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void check_field(int q) {
    if (q < 2 || q > 101 || !is_prime(q)) throw Error("bad-field", kMod, "field", "q=" + std::to_string(q));
}

int fq_norm(int q, long x) {
    long r = x % q;
    return static_cast<int>(r < 0 ? r + q : r);
}

int fq_inv(int q, int a) {
    a = fq_norm(q, a);
    if (a == 0) throw Error("division-by-zero", kMod, "inverse");
    // Extended Euclid on small integers.
    long t = 0, nt = 1, r = q, nr = a;
    while (nr) {
        long k = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - k * nt);
        std::tie(r, nr) = std::make_pair(nr, r - k * nr);
    }
    return fq_norm(q, t);
}

std::optional<int> fq_sqrt(int q, int a) {
    a = fq_norm(q, a);
    if (a == 0) return 0;
    for (int s = 1; s <= q / 2 || (q == 2 && s == 1); ++s)
        if ((static_cast<long>(s) * s) % q == a) return s;
    return std::nullopt;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(int q) : q_(q) {}

Poly::Poly(int q, std::vector<int> coeffs) : q_(q), c_(std::move(coeffs)) {
    for (int& x : c_) x = fq_norm(q_, x);
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(int q, long c) { return Poly(q, {fq_norm(q, c)}); }

Poly Poly::monomial(int q, int deg, long c) {
    std::vector<int> v(deg + 1, 0);
    v[deg] = fq_norm(q, c);
    return Poly(q, std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
    same_field(q_, o.q_, "poly-add");
    std::vector<int> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = fq_norm(q_, static_cast<long>((*this)[i]) + o[i]);
    return Poly(q_, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<int> r(c_);
    for (int& x : r) x = fq_norm(q_, -x);
    return Poly(q_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    same_field(q_, o.q_, "poly-mul");
    if (is_zero() || o.is_zero()) return Poly(q_);
    std::vector<long> acc(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += static_cast<long>(c_[i]) * o.c_[j];
    }
    std::vector<int> r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = fq_norm(q_, acc[i]);
    return Poly(q_, std::move(r));
}

Poly Poly::scaled(long s) const {
    std::vector<int> r(c_);
    for (int& x : r) x = fq_norm(q_, x * s);
    return Poly(q_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    same_field(q_, d.q_, "poly-divmod");
    if (d.is_zero()) throw Error("division-by-zero", kMod, "poly-divmod");
    if (deg() < d.deg()) return {Poly(q_), *this};
    std::vector<int> rem(c_);
    std::vector<int> quo(deg() - d.deg() + 1, 0);
    const int inv = fq_inv(q_, d.lc());
    for (int i = deg(); i >= d.deg(); --i) {
        int coef = rem[i];
        if (!coef) continue;
        coef = fq_norm(q_, static_cast<long>(coef) * inv);
        quo[i - d.deg()] = coef;
        for (int j = 0; j <= d.deg(); ++j)
            rem[i - d.deg() + j] = fq_norm(q_, rem[i - d.deg() + j] - static_cast<long>(coef) * d.c_[j]);
    }
    return {Poly(q_, std::move(quo)), Poly(q_, std::move(rem))};
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(fq_inv(q_, lc()));
}

Poly Poly::pow(unsigned k) const {
    Poly r = constant(q_, 1), b = *this;
    while (k) {
        if (k & 1u) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

int Poly::eval(int x) const {
    long acc = 0;
    for (int i = deg(); i >= 0; --i) acc = fq_norm(q_, acc * x + c_[i]);
    return static_cast<int>(acc);
}

bool Poly::operator<(const Poly& o) const {
    if (q_ != o.q_) return q_ < o.q_;
    if (deg() != o.deg()) return deg() < o.deg();
    for (int i = deg(); i >= 0; --i)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i > 0) {
            if (c_[i] != 1) os << "*";
            os << "Y";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
    const int q = a.q();
    Poly r0 = a, r1 = b, s0 = Poly::constant(q, 1), s1(q), t0(q), t1 = Poly::constant(q, 1);
    while (!r1.is_zero()) {
        auto [k, r] = r0.divmod(r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - k * s1);
        t0 = std::exchange(t1, t0 - k * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const int inv = fq_inv(q, r0.lc());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

std::vector<Poly> monic_polys(int q, int d) {
    std::vector<Poly> out;
    std::vector<int> c(d + 1, 0);
    c[d] = 1;
    while (true) {
        out.emplace_back(q, c);
        int i = 0;
        while (i < d && ++c[i] == q) c[i++] = 0;
        if (i == d) break;
    }
    return out;
}

const std::vector<Poly>& monic_irreducibles(int q, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Poly>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(q, d);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    // Sieve: degree-d monics with no irreducible factor of degree <= d/2.
    std::vector<Poly> smaller;
    for (int e = 1; 2 * e <= d; ++e) {
        auto it = cache.find({q, e});
        if (it == cache.end()) {
            // Fill recursively without holding the lock across the call.
            std::vector<Poly> irr;
            for (const Poly& f : monic_polys(q, e)) {
                bool ok = true;
                for (const Poly& g : smaller)
                    if (2 * g.deg() <= e && (f % g).is_zero()) { ok = false; break; }
                if (ok) irr.push_back(f);
            }
            it = cache.emplace(std::make_pair(q, e), std::move(irr)).first;
        }
        smaller.insert(smaller.end(), it->second.begin(), it->second.end());
    }
    std::vector<Poly> irr;
    for (const Poly& f : monic_polys(q, d)) {
        bool ok = true;
        for (const Poly& g : smaller)
            if ((f % g).is_zero()) { ok = false; break; }
        if (ok) irr.push_back(f);
    }
    return cache.emplace(key, std::move(irr)).first->second;
}

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
    if (f.is_zero()) throw Error("zero-polynomial", kMod, "factor");
    std::vector<std::pair<Poly, int>> out;
    Poly g = f.monic();
    for (int d = 1; 2 * d <= g.deg(); ++d) {
        for (const Poly& p : monic_irreducibles(f.q(), d)) {
            if (2 * d > g.deg()) break;
            int k = 0;
            while (true) {
                auto [quo, rem] = g.divmod(p);
                if (!rem.is_zero()) break;
                g = quo;
                ++k;
            }
            if (k) out.emplace_back(p, k);
        }
    }
    if (g.deg() > 0) {
        // What is left is irreducible; merge with an equal earlier factor.
        auto it = std::find_if(out.begin(), out.end(), [&](auto& pr) { return pr.first == g; });
        if (it != out.end()) ++it->second;
        else out.emplace_back(g, 1);
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.deg() <= 0) return false;
    auto fs = factor(f);
    return fs.size() == 1 && fs[0].second == 1;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(int q) : num_(q), den_(Poly::constant(q, 1)) {}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.q(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    same_field(num_.q(), den_.q(), "ratfunc");
    if (den_.is_zero()) throw Error("division-by-zero", kMod, "ratfunc");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.q(), 1);
        return;
    }
    Poly g = gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
    const int inv = fq_inv(den_.q(), den_.lc());
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
}

std::optional<int> RatFunc::valuation() const {
    if (num_.is_zero()) return std::nullopt;
    return den_.deg() - num_.deg();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }
RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }
RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }
RatFunc RatFunc::inverse() const {
    if (num_.is_zero()) throw Error("division-by-zero", kMod, "ratfunc-inverse");
    return RatFunc(den_, num_);
}

std::string RatFunc::str() const {
    if (is_poly()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace geodlab
