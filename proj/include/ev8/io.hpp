#pragma once

// Textual literal syntax for field elements, shared by CLI flags and all
// file formats:  rat | rat*I | rat*R2 | rat*Z8^k  and sums thereof, e.g.
// "1/2 + 3/2*I".  Approx literals are "~(re,im)".

#include <cctype>
#include <string>
#include <vector>

#include "field.hpp"

namespace ev8 {

namespace detail {

struct Cursor {
    const std::string& s;
    size_t pos = 0;
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void err(const std::string& what) const {
        fail("ParseError", what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }
};

inline Q parse_rational(Cursor& c) {
    c.skip_ws();
    size_t start = c.pos;
    if (c.pos < c.s.size() && (c.s[c.pos] == '+' || c.s[c.pos] == '-')) ++c.pos;
    size_t digits = c.pos;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
    if (c.pos == digits) c.err("expected number");
    if (c.pos < c.s.size() && c.s[c.pos] == '/') {
        ++c.pos;
        size_t den = c.pos;
        while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
        if (c.pos == den) c.err("expected denominator");
    }
    Q q(c.s.substr(start, c.pos - start));
    q.canonicalize();
    return q;
}

// I | R2 | Z8 | Z8^k
inline FieldElem parse_basis(Cursor& c) {
    c.skip_ws();
    if (c.s.compare(c.pos, 2, "R2") == 0) {
        c.pos += 2;
        return FieldElem::sqrt2();
    }
    if (c.s.compare(c.pos, 2, "Z8") == 0) {
        c.pos += 2;
        long k = 1;
        if (c.pos < c.s.size() && c.s[c.pos] == '^') {
            ++c.pos;
            size_t start = c.pos;
            if (c.pos < c.s.size() && c.s[c.pos] == '-') ++c.pos;
            while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
                ++c.pos;
            if (c.pos == start) c.err("expected exponent");
            k = std::stol(c.s.substr(start, c.pos - start));
        }
        return zeta8_pow(k);
    }
    if (c.peek() == 'I') {
        ++c.pos;
        return FieldElem::i();
    }
    c.err("expected I, R2 or Z8^k");
}

inline FieldElem parse_term(Cursor& c) {
    c.skip_ws();
    char ch = c.peek();
    FieldElem r = (ch == 'I' || ch == 'R' || ch == 'Z') ? parse_basis(c)
                                                        : FieldElem(parse_rational(c));
    while (c.peek() == '*') {
        ++c.pos;
        r = r * parse_basis(c);
    }
    return r;
}

}  // namespace detail

inline FieldElem parse_field_elem(const std::string& text) {
    detail::Cursor c{text};
    c.skip_ws();
    if (c.peek() == '~') {
        ++c.pos;
        if (c.peek() != '(') c.err("expected '(' after ~");
        ++c.pos;
        size_t comma = text.find(',', c.pos);
        size_t close = text.find(')', c.pos);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            c.err("expected ~(re,im)");
        double re = std::stod(text.substr(c.pos, comma - c.pos));
        double im = std::stod(text.substr(comma + 1, close - comma - 1));
        c.pos = close + 1;
        if (!c.eof()) c.err("trailing characters");
        return FieldElem::approx({re, im});
    }
    FieldElem r(0);
    bool first = true;
    while (!c.eof()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = (ch == '-') ? -1 : 1;
            ++c.pos;
        } else if (!first) {
            c.err("expected '+' or '-'");
        }
        FieldElem t = detail::parse_term(c);
        r = (sign > 0) ? r + t : r - t;
        first = false;
    }
    if (first) c.err("empty literal");
    return r;
}

// Comma-separated field-element list ("1,0,0,2, 0,3,5,0, ...").
inline std::vector<FieldElem> parse_field_elem_list(const std::string& text) {
    std::vector<FieldElem> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string piece =
            (comma == std::string::npos) ? text.substr(pos) : text.substr(pos, comma - pos);
        if (!piece.empty() && piece.find_first_not_of(" \t") != std::string::npos)
            out.push_back(parse_field_elem(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace ev8
