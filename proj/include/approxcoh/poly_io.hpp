#pragma once

// Text interchange format for polynomials:
//
//   p=<prime> n=<nvars> d=<degbound>
//   <c>*x<i>^<e>*... + <c>*... + ...
//
// Whitespace is ignored in the body. The canonical form lists monomials in descending lexicographic order of their
// exponent vectors, always prints the coefficient and omits ^1. The zero polynomial has body "0".

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "poly.hpp"

namespace approxcoh {

class ParseError : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
};

namespace detail {

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

inline unsigned long parse_number(std::string_view s, std::size_t& pos, const char* what) {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        throw ParseError(std::string("expected ") + what + " at offset " + std::to_string(pos));
    unsigned long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        v = v * 10 + static_cast<unsigned long>(s[pos] - '0');
        if (v > 1'000'000'000UL) throw ParseError(std::string(what) + " too large");
        ++pos;
    }
    return v;
}

}  // namespace detail

struct PolyHeader {
    unsigned p = 0;
    std::size_t n = 0;
    unsigned d = 0;
};

inline PolyHeader parse_header(std::string_view line) {
    PolyHeader h;
    bool seen_p = false, seen_n = false, seen_d = false;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("malformed header token '" + tok + "'");
        const auto key = tok.substr(0, eq);
        std::size_t pos = 0;
        const auto val = detail::parse_number(std::string_view(tok).substr(eq + 1), pos, key.c_str());
        if (pos + eq + 1 != tok.size()) throw ParseError("trailing characters in header token '" + tok + "'");
        if (key == "p") {
            h.p = static_cast<unsigned>(val);
            seen_p = true;
        } else if (key == "n") {
            h.n = val;
            seen_n = true;
        } else if (key == "d") {
            h.d = static_cast<unsigned>(val);
            seen_d = true;
        } else {
            throw ParseError("unknown header key '" + key + "'");
        }
    }
    if (!seen_p || !seen_n || !seen_d) throw ParseError("header must define p, n and d");
    return h;
}

/// Parses a body against a known field; coefficients are element codes of F.
template <class F>
BasicPoly<F> parse_body(const F& field, std::size_t n, unsigned d, std::string_view text) {
    const std::string s = detail::strip_spaces(text);
    BasicPoly<F> poly(field, n, d);
    if (s.empty()) throw ParseError("empty polynomial body");
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size() || first) {
        bool negate = false;
        if (!first) {
            if (s[pos] == '+') {
                ++pos;
            } else if (s[pos] == '-') {
                negate = true;
                ++pos;
            } else {
                throw ParseError("expected '+' at offset " + std::to_string(pos));
            }
        } else if (pos < s.size() && s[pos] == '-') {
            negate = true;
            ++pos;
        }
        first = false;
        Residue coef = 1;
        std::vector<std::uint16_t> exps(n, 0);
        bool factor_expected = true;
        while (factor_expected) {
            if (pos >= s.size()) throw ParseError("unexpected end of polynomial body");
            if (s[pos] == 'x') {
                ++pos;
                const auto var = detail::parse_number(s, pos, "variable index");
                if (var >= n) throw ParseError("variable x" + std::to_string(var) + " out of range for n=" +
                                               std::to_string(n));
                unsigned long e = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    e = detail::parse_number(s, pos, "exponent");
                }
                exps[var] = static_cast<std::uint16_t>(exps[var] + e);
            } else {
                const auto c = detail::parse_number(s, pos, "coefficient");
                if (c >= field.order())
                    throw ParseError("coefficient " + std::to_string(c) + " is not a reduced field element");
                coef = field.mul(coef, static_cast<Residue>(c));
            }
            factor_expected = pos < s.size() && s[pos] == '*';
            if (factor_expected) ++pos;
        }
        if (negate) coef = field.neg(coef);
        poly.add_term(Monomial(std::move(exps)), coef);
    }
    return poly;
}

/// Parses the full text format (header line followed by the body).
inline Poly parse_poly(std::string_view text) {
    auto nl = text.find_first_of("\n;");
    if (nl == std::string_view::npos) throw ParseError("missing header line");
    const auto h = parse_header(text.substr(0, nl));
    return parse_body(PrimeModulus(h.p), h.n, h.d, text.substr(nl + 1));
}

template <class F>
std::string body_text(const BasicPoly<F>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) out += " + ";
        first = false;
        out += std::to_string(c);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            out += "*x" + std::to_string(i);
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
        }
    }
    return out;
}

template <class F>
std::string header_text(const BasicPoly<F>& p) {
    return "p=" + std::to_string(p.field().characteristic()) + " n=" + std::to_string(p.nvars()) +
           " d=" + std::to_string(p.degree_bound());
}

/// Canonical serialization: header line, newline, body.
template <class F>
std::string to_text(const BasicPoly<F>& p) {
    return header_text(p) + "\n" + body_text(p);
}

}  // namespace approxcoh
