#include "geodlab/expr_parse.hpp"

#include <cctype>

namespace geodlab {

namespace {
const char* kMod = "expr_parse";

class Parser {
public:
    Parser(const std::string& s, int q) : s_(s), q_(q) {}

    RatFunc run() {
        RatFunc r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error("parse-error", kMod, "parse", what + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool starts_atom() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'Y' || c == 'y' || c == '(';
    }
    long digits() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected digits");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > 1000000000L) fail("integer literal too large");
            v = 10 * v + (s_[pos_++] - '0');
        }
        return v;
    }

    RatFunc expr() {
        RatFunc r = term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            RatFunc t = term();
            r = c == '+' ? r + t : r - t;
        }
        return r;
    }
    RatFunc term() {
        RatFunc r = unary();
        for (;;) {
            const char c = peek();
            if (c == '*' || c == '/') {
                ++pos_;
                RatFunc u = unary();
                if (c == '/') {
                    if (u.is_zero()) fail("division by zero");
                    r = r / u;
                } else {
                    r = r * u;
                }
            } else if (starts_atom()) {
                r = r * power();
            } else {
                return r;
            }
        }
    }
    RatFunc unary() {
        const char c = peek();
        if (c == '-' || c == '+') {
            ++pos_;
            RatFunc u = unary();
            return c == '-' ? -u : u;
        }
        return power();
    }
    RatFunc power() {
        RatFunc base = atom();
        if (peek() != '^') return base;
        ++pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        const long k = digits();
        if (k > 4096) fail("exponent too large");
        if (neg && base.is_zero()) fail("zero to a negative power");
        RatFunc r(Poly::constant(q_, 1));
        for (long i = 0; i < k; ++i) r = r * base;
        return neg ? r.inverse() : r;
    }
    RatFunc atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return r;
        }
        if (c == 'Y' || c == 'y') {
            ++pos_;
            return RatFunc(Poly::Y(q_));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RatFunc(Poly::constant(q_, digits()));
        fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end of input");
    }

    const std::string& s_;
    int q_;
    std::size_t pos_ = 0;
};

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t k = text.find(';', start);
        parts.push_back(text.substr(start, k == std::string::npos ? std::string::npos : k - start));
        if (k == std::string::npos) return parts;
        start = k + 1;
    }
}
} // namespace

RatFunc parse_ratfunc(const std::string& text, int q) {
    check_field(q);
    return Parser(text, q).run();
}

Poly parse_poly(const std::string& text, int q) {
    RatFunc r = parse_ratfunc(text, q);
    if (!r.is_poly()) throw Error("parse-error", kMod, "parse", "\"" + text + "\" is not a polynomial");
    return r.num(); // denominators are kept monic
}

std::array<RatFunc, 4> parse_matrix(const std::string& text, int q) {
    auto parts = split(text);
    if (parts.size() != 4) throw Error("parse-error", kMod, "parse", "a matrix needs 4 entries \"a;b;c;d\"");
    return {parse_ratfunc(parts[0], q), parse_ratfunc(parts[1], q), parse_ratfunc(parts[2], q),
            parse_ratfunc(parts[3], q)};
}

std::vector<Poly> parse_poly_list(const std::string& text, int q) {
    std::vector<Poly> out;
    for (const auto& p : split(text)) out.push_back(parse_poly(p, q));
    return out;
}

} // namespace geodlab
