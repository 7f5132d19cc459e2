#ifndef DRINFELD_POLY_HPP
#define DRINFELD_POLY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drinfeld/gf.hpp"

namespace drinfeld {

enum class Var : char { Theta = 'h', T = 't' };

std::string var_name(Var v);

/// Dense univariate polynomial over F_{q^d}.
class Poly {
public:
    Poly() : var_(Var::Theta) {}
    Poly(Var v, FieldPtr fld) : var_(v), fld_(std::move(fld)) {}
    Poly(Var v, std::vector<FieldElem> coeffs);
    static Poly zero(Var v, FieldPtr fld) { return Poly(v, std::move(fld)); }
    static Poly constant(Var v, const FieldElem& c);
    static Poly monomial(Var v, const FieldElem& c, int deg);

    Var var() const { return var_; }
    const FieldPtr& field() const { return fld_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    FieldElem coeff(int i) const;
    const std::vector<FieldElem>& coeffs() const { return c_; }
    FieldElem leading() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const FieldElem& s) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Division with remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    FieldElem eval(const FieldElem& x) const;
    Poly monic() const;
    /// Coefficientwise q^m Frobenius combined with exponent scaling by q^m
    /// (i.e. P(x) -> P(x)^{q^m} as polynomials, m >= 0).
    Poly frobenius_power(long m) const;
    /// Coefficientwise q^m Frobenius only (exponents untouched).
    Poly coeff_frobenius(long m) const;

    std::string str() const;

private:
    void trim();
    Var var_;
    FieldPtr fld_;
    std::vector<FieldElem> c_;  // c_[i] coefficient of x^i; c_.back() != 0
};

Poly gcd(Poly a, Poly b);

/// Rational function stored in lowest terms with monic denominator.
class RationalFn {
public:
    RationalFn() = default;
    RationalFn(Poly num, Poly den);
    static RationalFn from_poly(Poly p);
    static RationalFn zero(Var v, FieldPtr fld) {
        return from_poly(Poly::zero(v, std::move(fld)));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-(const RationalFn& o) const;
    RationalFn operator*(const RationalFn& o) const;
    RationalFn operator/(const RationalFn& o) const;
    RationalFn operator-() const;
    RationalFn inv() const;
    bool operator==(const RationalFn& o) const;
    bool operator!=(const RationalFn& o) const { return !(*this == o); }

    /// Power-series expansion around x = 0 (denominator must have a unit
    /// constant term): first `len` coefficients.
    std::vector<FieldElem> series(int len) const;

    std::string str() const;

private:
    Poly num_, den_;
};

/// Sparse polynomial over F_{q^d} with 64-bit exponents; used where the
/// exact exp/log recursions push exponents to q^8 and beyond.
class SparsePoly {
public:
    SparsePoly() = default;
    explicit SparsePoly(FieldPtr fld) : fld_(std::move(fld)) {}
    static SparsePoly term(const FieldElem& c, std::int64_t exp);

    const FieldPtr& field() const { return fld_; }
    bool is_zero() const { return t_.empty(); }
    const std::map<std::int64_t, FieldElem>& terms() const { return t_; }
    std::int64_t degree() const { return t_.empty() ? -1 : t_.rbegin()->first; }
    size_t term_count() const { return t_.size(); }

    void add_term(std::int64_t exp, const FieldElem& c);
    SparsePoly operator+(const SparsePoly& o) const;
    SparsePoly operator-(const SparsePoly& o) const;
    SparsePoly operator*(const SparsePoly& o) const;
    bool operator==(const SparsePoly& o) const;

    /// P(x) -> P(x)^{q^m}, m >= 0: exponents scaled, coefficients twisted.
    SparsePoly frobenius_power(long m) const;

private:
    FieldPtr fld_;
    std::map<std::int64_t, FieldElem> t_;
};

} // namespace drinfeld

#endif
