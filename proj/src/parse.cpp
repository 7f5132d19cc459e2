#include "drinfeld/parse.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

using i64 = std::int64_t;

std::string strip_spaces(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

/// Split on '+' and '-' at paren depth 0; each piece keeps its sign.
std::vector<std::pair<int, std::string>> split_terms(const std::string& s) {
    std::vector<std::pair<int, std::string>> out;
    int depth = 0, sign = 1;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '-') && i > 0 && s[i - 1] != '(' &&
            s[i - 1] != '/' && !cur.empty()) {
            out.emplace_back(sign, cur);
            cur.clear();
            sign = c == '-' ? -1 : 1;
            continue;
        }
        cur.push_back(c);
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in '" + s + "'");
    if (!cur.empty()) out.emplace_back(sign, cur);
    if (out.empty()) throw ParseError("empty expression");
    return out;
}

long parse_long(const std::string& s) {
    if (s.empty()) throw ParseError("expected an integer");
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size()) throw ParseError("bad integer '" + s + "'");
    return v;
}

/// One '+'-free atom of a field element: "3", "g", "g^2", "2*g^3".
FieldElem parse_fe_atom(const FieldPtr& fld, const std::string& s) {
    std::string body = s;
    long scalar = 1;
    auto star = body.find('*');
    if (star != std::string::npos) {
        scalar = parse_long(body.substr(0, star));
        body = body.substr(star + 1);
    }
    long gpow = -1;  // -1: no generator factor
    if (!body.empty() && body[0] == 'g') {
        gpow = 1;
        if (body.size() > 1) {
            if (body[1] != '^') throw ParseError("bad generator term '" + s + "'");
            gpow = parse_long(body.substr(2));
        }
    } else if (star == std::string::npos) {
        scalar = parse_long(body);
    } else {
        throw ParseError("bad field-element term '" + s + "'");
    }
    if (gpow > 0 && gpow >= fld->n)
        throw ParseError("generator power out of range in '" + s + "'");
    FieldElem v = FieldElem::from_int(fld, scalar);
    if (gpow >= 1) {
        std::vector<int> digits(std::size_t(fld->n), 0);
        digits[std::size_t(gpow)] = 1;
        v = v * FieldElem(fld, fld->pack(digits));
    }
    return v;
}

/// Exponent forms "n", "(n)", "(n/d)" -> pair {a, d} meaning theta^{a/d}.
std::pair<i64, int> parse_exponent(const std::string& s) {
    std::string body = s;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') throw ParseError("bad exponent '" + s + "'");
        body = body.substr(1, body.size() - 2);
    }
    auto slash = body.find('/');
    if (slash == std::string::npos) return {parse_long(body), 1};
    long d = parse_long(body.substr(slash + 1));
    if (d <= 0) throw ParseError("exponent denominator must be positive in '" + s + "'");
    return {parse_long(body.substr(0, slash)), int(d)};
}

} // namespace

FieldElem parse_field_elem(const FieldPtr& fld, const std::string& raw) {
    std::string s = strip_spaces(raw);
    if (s.empty()) throw ParseError("empty field-element literal");
    if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    FieldElem acc = FieldElem::zero(fld);
    for (const auto& [sign, term] : split_terms(s)) {
        FieldElem v = parse_fe_atom(fld, term);
        acc = sign > 0 ? acc + v : acc - v;
    }
    return acc;
}

Poly parse_theta_poly(const FieldPtr& fld, const std::string& raw) {
    std::string s = strip_spaces(raw);
    Poly acc = Poly::zero(Var::Theta, fld);
    for (const auto& [sign, term] : split_terms(s)) {
        std::string coeff = "1";
        std::string body = term;
        auto th = body.find("th");
        if (th == std::string::npos) {
            coeff = body;
            body.clear();
        } else {
            if (th > 0) {
                if (body[th - 1] != '*') throw ParseError("expected '*' before th in '" + term + "'");
                coeff = body.substr(0, th - 1);
            }
            body = body.substr(th + 2);
        }
        long deg = 0;
        if (!body.empty()) {
            if (body[0] != '^') throw ParseError("bad theta power in '" + term + "'");
            deg = parse_long(body.substr(1));
            if (deg < 0) throw ParseError("negative theta power in a polynomial: '" + term + "'");
        } else if (th != std::string::npos) {
            deg = 1;
        }
        FieldElem c = parse_field_elem(fld, coeff);
        if (sign < 0) c = -c;
        acc = acc + Poly::monomial(Var::Theta, c, int(deg));
    }
    return acc;
}

Puiseux parse_puiseux(const FieldPtr& fld, const std::string& raw) {
    std::string s = strip_spaces(raw);
    Puiseux acc = Puiseux::exact_zero(fld);
    for (const auto& [sign, term] : split_terms(s)) {
        if (term.rfind("O(", 0) == 0) {
            if (term.back() != ')' || term.rfind("O(th^", 0) != 0)
                throw ParseError("bad precision marker '" + term + "'");
            auto [a, d] = parse_exponent(term.substr(5, term.size() - 6));
            // exponent a/d caps the grid at index -a on the 1/d grid
            acc = acc + Puiseux::zero_to_prec(fld, d, -a);
            continue;
        }
        std::string coeff = "1";
        std::string body = term;
        auto th = body.find("*th^");
        if (th != std::string::npos) {
            coeff = body.substr(0, th);
            body = body.substr(th + 4);
        } else if (body.rfind("th^", 0) == 0) {
            body = body.substr(3);
        } else if (body == "th") {
            body = "1";
        } else {
            coeff = body;
            body = "0";
        }
        auto [a, d] = parse_exponent(body);
        FieldElem c = parse_field_elem(fld, coeff);
        if (sign < 0) c = -c;
        acc = acc + Puiseux::from_elem(c) * Puiseux::theta_power(fld, a, d);
    }
    return acc;
}

} // namespace drinfeld
