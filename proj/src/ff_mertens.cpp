#include <map>

#include "geodlab/ff_arith.hpp"

namespace geodlab {

namespace {
const char* kMod = "ff_arith";

void check_budget(int q, int n, const char* op) {
    BigInt need = big_pow(q, static_cast<unsigned>(n + 1));
    if (need > BigInt(enumeration_budget()))
        throw Error("too-large", kMod, op, "q^(n+1) = " + need.str() + " exceeds the budget");
}
} // namespace

BigInt euler_phi(const Poly& f) {
    if (f.is_zero()) throw Error("zero-polynomial", kMod, "euler_phi");
    BigInt r = 1;
    for (const auto& [p, k] : factor(f)) {
        BigInt N = big_pow(f.q(), static_cast<unsigned>(p.deg()));
        r *= big_pow(f.q(), static_cast<unsigned>(p.deg() * (k - 1))) * (N - 1);
    }
    return r;
}

BigInt monic_phi_sum(int q, int n) {
    check_field(q);
    if (n < 1) throw Error("bad-argument", kMod, "monic_phi_sum", "n must be positive");
    check_budget(q, n, "monic_phi_sum");
    BigInt s = 0;
    for (const Poly& f : monic_polys(q, n)) s += euler_phi(f);
    return s;
}

BigInt mertens_sum(int q, int n) {
    check_field(q);
    if (n < 1) throw Error("bad-argument", kMod, "mertens_sum", "n must be positive");
    check_budget(q, n, "mertens_sum");
    // phi(lambda f) = phi(f), so every polynomial looks up its monic part.
    std::map<Poly, BigInt> cache;
    BigInt total = 0;
    for (int d = 1; d <= n; ++d) {
        for (const Poly& m : monic_polys(q, d)) {
            for (int lambda = 1; lambda < q; ++lambda) {
                Poly f = m.scaled(lambda);
                Poly key = f.monic();
                auto it = cache.find(key);
                if (it == cache.end()) it = cache.emplace(key, euler_phi(key)).first;
                total += it->second;
            }
        }
    }
    return total;
}

} // namespace geodlab
