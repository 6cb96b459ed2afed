#pragma once

#include <string>

#include "geodlab/expr_parse.hpp"

namespace geodlab::cli {

// "A;B;C" plus a branch sign: the root (-B + branch sqrt(D)) / 2A.
inline QuadIrr parse_quad(const std::string& text, int branch, int q) {
    const auto c = parse_poly_list(text, q);
    if (c.size() != 3) throw Error("usage", "cli", "parse", "a quadratic needs \"A;B;C\"");
    return QuadIrr(c[0], c[1], c[2], branch);
}

} // namespace geodlab::cli
