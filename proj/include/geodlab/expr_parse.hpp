#pragma once

// Text input for rational functions over F_q in the variable Y.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/')? unary)*      juxtaposition multiplies
//   unary := ('+' | '-') unary | power
//   power := atom ('^' '-'? digits)?
//   atom  := digits | 'Y' | 'y' | '(' expr ')'
//
// Integer literals are reduced mod q. Errors carry the code "parse-error".

#include <array>
#include <string>
#include <vector>

#include "geodlab/ff_arith.hpp"

namespace geodlab {

RatFunc parse_ratfunc(const std::string& text, int q);
// Same grammar; throws "parse-error" unless the value is a polynomial.
Poly parse_poly(const std::string& text, int q);
// Four semicolon-separated entries, row-major: "a;b;c;d".
std::array<RatFunc, 4> parse_matrix(const std::string& text, int q);
// Semicolon-separated list of polynomials, e.g. quadratic coefficients.
std::vector<Poly> parse_poly_list(const std::string& text, int q);

} // namespace geodlab
