#include <map>
#include <sstream>

#include "geodlab/ff_arith.hpp"

namespace geodlab {

namespace {
const char* kMod = "ff_arith";

bool canonical_root(int q, int s) { return s >= 1 && s <= (q - 1) / 2; }

// Polynomial part of the canonical square root of D (indices <= 0).
Poly sqrt_floor(const QuadIrr& x) {
    LaurentSeries S = x.sqrt_disc_to(1);
    const int top = -S.lo();
    std::vector<int> c(std::max(top + 1, 0));
    for (int j = 0; j <= top; ++j) c[j] = S.coeff(-j);
    return Poly(x.q(), std::move(c));
}
} // namespace

QuadIrr::QuadIrr(Poly A, Poly B, Poly C, int branch)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(A_.q()), eps_(branch) {
    const int q = A_.q();
    check_field(q);
    if (B_.q() != q || C_.q() != q) throw Error("field-mismatch", kMod, "quad-irr");
    if (q == 2) throw Error("char-2-unsupported", kMod, "quad-irr");
    if (A_.is_zero()) throw Error("degenerate", kMod, "quad-irr", "A = 0");
    if (branch != 1 && branch != -1) throw Error("bad-branch", kMod, "quad-irr", std::to_string(branch));
    D_ = B_ * B_ - A_ * C_.scaled(4);
    if (D_.is_zero()) throw Error("not-irrational", kMod, "quad-irr", "discriminant is 0");
    if (D_.deg() % 2 != 0) throw Error("not-split", kMod, "quad-irr", "odd-degree discriminant");
    auto s = fq_sqrt(q, D_.lc());
    if (!s) throw Error("not-split", kMod, "quad-irr", "leading coefficient is not a square");
    s_ = *s;
    // D is a square in F_q(Y) exactly when the polynomial part of its root
    // squares back to D.
    Poly f = sqrt_floor(*this);
    if (f * f == D_) throw Error("not-irrational", kMod, "quad-irr", "discriminant is a square");
}

QuadIrr QuadIrr::with_leading(Poly A, Poly B, Poly C, int lead) {
    for (int eps : {1, -1}) {
        QuadIrr x(A, B, C, eps);
        LaurentSeries s = lazy_series(x);
        int v = *s.valuation();
        if (s.extend(v + 1).coeff(v) == fq_norm(x.q(), lead)) return x;
    }
    throw Error("no-branch", kMod, "quad-irr", "no root with leading coefficient " + std::to_string(lead));
}

QuadIrr QuadIrr::transform(const Poly& a, const Poly& b, const Poly& c, const Poly& d) const {
    Poly det = a * d - b * c;
    if (det.is_zero()) throw Error("singular", kMod, "quad-transform");
    Poly A2 = A_ * d * d - B_ * c * d + C_ * c * c;
    Poly B2 = B_ * (a * d + b * c) - (A_ * b * d + C_ * a * c).scaled(2);
    Poly C2 = A_ * b * b - B_ * a * b + C_ * a * a;
    // The image is (-B2 + eps det S) / (2 A2); re-express det S through the
    // canonical root of det^2 D.
    const int q = A_.q();
    int lead = fq_norm(q, static_cast<long>(det.lc()) * s_);
    int sigma = canonical_root(q, lead) ? 1 : -1;
    return QuadIrr(A2, B2, C2, eps_ * sigma, det * det * D_, canonical_root(q, lead) ? lead : fq_norm(q, -lead));
}

QuadIrr QuadIrr::canonical() const {
    const int q = A_.q();
    Poly g = gcd(A_, gcd(B_, C_));
    Poly lambda = g.scaled(A_.lc());
    Poly A2 = A_ / lambda, B2 = B_ / lambda, C2 = C_ / lambda;
    Poly D2 = D_ / (lambda * lambda);
    int lead = fq_norm(q, static_cast<long>(s_) * fq_inv(q, lambda.lc()));
    int sigma = canonical_root(q, lead) ? 1 : -1;
    return QuadIrr(A2, B2, C2, eps_ * sigma, D2, canonical_root(q, lead) ? lead : fq_norm(q, -lead));
}

bool QuadIrr::operator==(const QuadIrr& o) const {
    QuadIrr a = canonical(), b = o.canonical();
    return a.A_ == b.A_ && a.B_ == b.B_ && a.C_ == b.C_ && a.eps_ == b.eps_;
}

bool QuadIrr::operator<(const QuadIrr& o) const {
    QuadIrr a = canonical(), b = o.canonical();
    if (a.A_ != b.A_) return a.A_ < b.A_;
    if (a.B_ != b.B_) return a.B_ < b.B_;
    if (a.C_ != b.C_) return a.C_ < b.C_;
    return a.eps_ < b.eps_;
}

std::string QuadIrr::str() const {
    std::ostringstream os;
    os << "root[" << (eps_ > 0 ? "+" : "-") << "] of (" << A_.str() << ")X^2 + (" << B_.str() << ")X + ("
       << C_.str() << ")";
    return os.str();
}

// ---------------------------------------------------------------- continued fractions

CFExpansion cf_expand(const RatFunc& x) {
    CFExpansion cf;
    Poly P = x.num(), Q = x.den();
    while (!Q.is_zero()) {
        auto [a, r] = P.divmod(Q);
        cf.preperiod.push_back(a);
        P = std::move(Q);
        Q = std::move(r);
    }
    return cf;
}

CFExpansion cf_expand(const QuadIrr& x) {
    // Complete quotients (P_i + S)/Q_i with S the canonical root of D.
    const Poly& D = x.disc();
    const Poly fl = sqrt_floor(x);
    Poly P = x.B().scaled(-x.branch());
    Poly Q = x.A().scaled(2L * x.branch());
    std::map<std::pair<Poly, Poly>, size_t> seen;
    std::vector<Poly> quotients;
    const size_t cap = 100000;
    while (true) {
        auto key = std::make_pair(P, Q);
        if (auto it = seen.find(key); it != seen.end()) {
            CFExpansion cf;
            cf.preperiod.assign(quotients.begin(), quotients.begin() + it->second);
            cf.period.assign(quotients.begin() + it->second, quotients.end());
            return cf;
        }
        if (quotients.size() >= cap) throw Error("budget", kMod, "cf_expand", "period not found");
        seen.emplace(key, quotients.size());
        Poly a = (P + fl) / Q;
        quotients.push_back(a);
        Poly P2 = a * Q - P;
        auto [Q2, rem] = (D - P2 * P2).divmod(Q);
        if (!rem.is_zero()) throw Error("internal", kMod, "cf_expand", "non-exact complete quotient");
        P = std::move(P2);
        Q = std::move(Q2);
    }
}

std::vector<std::pair<Poly, Poly>> cf_convergents(const CFExpansion& cf, int count) {
    if (cf.preperiod.empty() && cf.period.empty()) return {};
    const int q = cf.preperiod.empty() ? cf.period[0].q() : cf.preperiod[0].q();
    std::vector<std::pair<Poly, Poly>> out;
    Poly p2(q), p1 = Poly::constant(q, 1), q2 = Poly::constant(q, 1), q1(q);
    for (int k = 0; k < count; ++k) {
        const Poly* a;
        if (k < static_cast<int>(cf.preperiod.size())) a = &cf.preperiod[k];
        else if (!cf.period.empty()) a = &cf.period[(k - cf.preperiod.size()) % cf.period.size()];
        else break;
        Poly p = *a * p1 + p2, qq = *a * q1 + q2;
        out.emplace_back(p, qq);
        p2 = std::exchange(p1, p);
        q2 = std::exchange(q1, qq);
    }
    return out;
}

QuadInvariants quad_invariants(const QuadIrr& a) {
    const int q = a.q();
    RatFunc tr(-a.B(), a.A());
    RatFunc n(a.C(), a.A());
    QuadIrr conj = a.conj();
    LaurentSeries diff = lazy_series(a) - lazy_series(conj);
    int v_series = *diff.valuation();
    RatFunc disc = tr * tr - n * RatFunc(Poly::constant(q, 4));
    int v_disc = *disc.valuation();
    if (v_disc % 2 != 0 || v_disc / 2 != v_series)
        throw Error("internal", kMod, "quad_invariants", "complexity mismatch between the two routes");
    return {tr, n, conj, v_series, rational_pow(q, v_series)};
}

} // namespace geodlab
