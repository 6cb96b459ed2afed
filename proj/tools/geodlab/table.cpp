#include "table.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace geodlab::cli {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw Error("internal", "cli", "table", "row has " + std::to_string(row.size()) + " cells, expected " +
                                                    std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {
std::string text(const Cell& c) {
    struct {
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const BigInt& v) const { return v.str(); }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(const std::string& v) const { return v; }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const Rational& v) const { return to_string(v); }
    } visit;
    return std::visit(visit, c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
    if (auto* v = std::get_if<long long>(&c)) return *v;
    if (auto* v = std::get_if<BigInt>(&c)) {
        // Exact: fall back to a decimal string beyond 64 bits.
        if (*v >= std::numeric_limits<long long>::min() && *v <= std::numeric_limits<long long>::max())
            return v->convert_to<long long>();
        return v->str();
    }
    if (auto* v = std::get_if<double>(&c)) {
        if (std::isfinite(*v)) return *v;
        return format_real(*v);
    }
    if (auto* v = std::get_if<bool>(&c)) return *v;
    return text(c);
}
} // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(text(row[i]));
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) rec[t.columns[i]] = json_cell(row[i]);
        arr.push_back(std::move(rec));
    }
    os << arr.dump(2) << '\n';
}

} // namespace geodlab::cli
