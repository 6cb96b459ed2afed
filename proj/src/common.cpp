#include "geodlab/common.hpp"

#include <cstdlib>

namespace geodlab {

Error::Error(std::string code, std::string module, std::string op, std::string detail)
    : std::runtime_error(module + "::" + op + ": " + code + (detail.empty() ? "" : " (" + detail + ")")),
      code_(std::move(code)), module_(std::move(module)), op_(std::move(op)), detail_(std::move(detail)) {}

std::uint64_t enumeration_budget() {
    if (const char* env = std::getenv("GEODLAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 100'000'000ULL;
}

BigInt big_pow(long base, unsigned k) {
    BigInt r = 1, b = base;
    while (k) {
        if (k & 1u) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

Rational rational_pow(long base, long k) {
    if (k >= 0) return Rational(big_pow(base, static_cast<unsigned>(k)));
    return Rational(BigInt(1), big_pow(base, static_cast<unsigned>(-k)));
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace geodlab
