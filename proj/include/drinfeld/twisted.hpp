#ifndef DRINFELD_TWISTED_HPP
#define DRINFELD_TWISTED_HPP

#include <string>
#include <vector>

#include "drinfeld/puiseux.hpp"

namespace drinfeld {

/// Twisted (Ore) polynomial sum c_i tau^i with Puiseux coefficients, where
/// tau is the q-power Frobenius: multiplication obeys tau * c = c^q * tau.
class TwistedPoly {
public:
    TwistedPoly() = default;
    explicit TwistedPoly(FieldPtr fld) : fld_(std::move(fld)) {}
    TwistedPoly(FieldPtr fld, std::vector<Puiseux> coeffs);

    static TwistedPoly zero(FieldPtr fld) { return TwistedPoly(std::move(fld)); }
    static TwistedPoly one(FieldPtr fld);
    static TwistedPoly constant(const Puiseux& c);
    static TwistedPoly tau(FieldPtr fld, int i = 1);  // tau^i

    const FieldPtr& field() const { return fld_; }
    int deg() const { return int(c_.size()) - 1; }  // -1 for zero
    /// Coefficient of tau^i (exact zero beyond the degree).
    Puiseux coeff(int i) const;
    const std::vector<Puiseux>& coeffs() const { return c_; }

    TwistedPoly operator+(const TwistedPoly& o) const;
    TwistedPoly operator-(const TwistedPoly& o) const;
    TwistedPoly operator*(const TwistedPoly& o) const;
    TwistedPoly operator*(const Puiseux& s) const;  // left multiply by scalar
    TwistedPoly operator-() const;
    TwistedPoly pow(int n) const;  // n >= 0

    /// Apply as an F_q-linear operator: z -> sum c_i z^{q^i}.
    Puiseux apply(const Puiseux& z) const;

    bool eq_to_prec(const TwistedPoly& o) const;
    std::string str() const;

private:
    void trim();
    FieldPtr fld_;
    std::vector<Puiseux> c_;  // c_[i] multiplies tau^i
};

} // namespace drinfeld

#endif
