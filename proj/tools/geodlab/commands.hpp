#pragma once

#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "table.hpp"

namespace geodlab::cli {

// The selected verb leaves its work here; main runs it after parsing.
using Runner = std::function<Table()>;

void add_graph_commands(CLI::App& app, Runner& run);
void add_count_commands(CLI::App& app, Runner& run);
void add_shift_commands(CLI::App& app, Runner& run);
void add_walk_commands(CLI::App& app, Runner& run);
void add_ff_commands(CLI::App& app, Runner& run);
void add_bt_commands(CLI::App& app, Runner& run);

// "1,2.5,-3" -> {1, 2.5, -3}; "usage" on malformed input.
std::vector<double> parse_reals(const std::string& s);
std::vector<int> parse_ints(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

} // namespace geodlab::cli
