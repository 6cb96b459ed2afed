#pragma once

// Shared plumbing: typed errors, exact number types, enumeration budgets.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace geodlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Every failure surfaced by the library carries a stable machine-readable
// code plus the module and operation that raised it.
class Error : public std::runtime_error {
public:
    Error(std::string code, std::string module, std::string op, std::string detail = {});

    const std::string& code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }
    const std::string& op() const noexcept { return op_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string code_, module_, op_, detail_;
};

// Enumeration cap shared by the brute-force operations. GEODLAB_BUDGET
// overrides the default of 10^8 elementary steps.
std::uint64_t enumeration_budget();

// q^k as a rational, k of either sign.
Rational rational_pow(long base, long k);

BigInt big_pow(long base, unsigned k);

std::string to_string(const Rational& r);

} // namespace geodlab
