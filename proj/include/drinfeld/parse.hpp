#ifndef DRINFELD_PARSE_HPP
#define DRINFELD_PARSE_HPP

#include <string>

#include "drinfeld/poly.hpp"
#include "drinfeld/puiseux.hpp"

namespace drinfeld {

/// Element of F_{q^d} written as a polynomial in the generator symbol "g":
/// e.g. "0", "1", "g", "g^2+g+1", "2*g+1". ParseError on malformed input.
FieldElem parse_field_elem(const FieldPtr& fld, const std::string& s);

/// Polynomial in theta, e.g. "th^2+th+1" or "(g+1)*th^3+2".
Poly parse_theta_poly(const FieldPtr& fld, const std::string& s);

/// Puiseux literal: '+'-separated terms "c", "c*th^E", "th^E" with exponent
/// E one of "n", "(n)", "(n/d)", plus an optional trailing precision marker
/// "O(th^E)". This is the same grammar Puiseux::str() emits, so values
/// round-trip. Example: "1*th^(-1/2) + g*th^1 + O(th^4)".
Puiseux parse_puiseux(const FieldPtr& fld, const std::string& s);

} // namespace drinfeld

#endif
