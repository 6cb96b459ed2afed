#pragma once

// Row-oriented results shared by every subcommand. CSV has a header row,
// integers print exactly and reals with 17 significant digits; JSON mirrors
// the rows as an array of records.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "geodlab/common.hpp"

namespace geodlab::cli {

using Cell = std::variant<long long, BigInt, double, std::string, bool, Rational>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}
    void add(std::vector<Cell> row);
};

std::string format_real(double x);
void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

} // namespace geodlab::cli
