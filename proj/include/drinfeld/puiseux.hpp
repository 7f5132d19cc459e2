#ifndef DRINFELD_PUISEUX_HPP
#define DRINFELD_PUISEUX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/gf.hpp"

namespace drinfeld {

/// Truncated element of F_{q^d}((theta^{-1/e})) with an absolute precision
/// cap. Valuations are normalized so val(1/theta) = +1. Internally the value
/// is sum_k c[k - lead] * theta^{-k/e} for k in [lead, lead + len), and all
/// exponents k/e >= cap/e are unknown unless the value is exact.
class Puiseux {
public:
    using i64 = std::int64_t;

    /// Default working width (whole-theta slots) introduced by inv() on
    /// exact inputs and by other width-creating operations.
    static int default_slots;

    Puiseux() = default;

    static Puiseux exact_zero(FieldPtr f);
    static Puiseux zero_to_prec(FieldPtr f, int e, i64 cap);
    static Puiseux from_elem(const FieldElem& c);            // exact constant
    /// c * theta^{-val_num/val_den}, exact.
    static Puiseux monomial(const FieldElem& c, i64 val_num, int val_den);
    static Puiseux theta(FieldPtr f);                        // theta, exact
    /// theta^{a/e}, exact.
    static Puiseux theta_power(FieldPtr f, i64 a, int e = 1);

    const FieldPtr& field() const { return fld_; }
    int ram() const { return e_; }
    bool exact() const { return exact_; }
    bool is_zero_to_prec() const { return c_.empty(); }
    bool is_exact_zero() const { return c_.empty() && exact_; }

    /// Valuation as lead/ram(); throws ZeroToPrec on values with no known
    /// nonzero digit.
    i64 val_num() const;
    /// Valuation (or, for zero-to-precision values, the cap) as num/ram().
    i64 val_or_cap_num() const;
    /// Precision cap as cap_num()/ram(); only meaningful when !exact().
    i64 cap_num() const { return cap_; }
    /// First grid index past the known support (for exact values: every
    /// coefficient from here on is exactly zero; otherwise equals cap_num()).
    i64 support_end_num() const { return exact_ ? lead_ + i64(c_.size()) : cap_; }
    bool has_val(i64 num, i64 den) const;
    FieldElem leading() const;
    /// Coefficient of theta^{-k/ram()} (zero when inside the known window).
    FieldElem coeff_at(i64 k) const;

    Puiseux operator+(const Puiseux& o) const;
    Puiseux operator-(const Puiseux& o) const;
    Puiseux operator*(const Puiseux& o) const;
    Puiseux operator/(const Puiseux& o) const { return *this * o.inv(); }
    Puiseux operator-() const;
    Puiseux operator*(const FieldElem& s) const;
    Puiseux inv() const;
    Puiseux pow_int(long n) const;  // n may be negative

    /// x -> x^{q^n}; for n < 0 the exponent grid must divide by q^{|n|}
    /// (otherwise the root is wildly ramified and WildRamification is thrown).
    Puiseux frob_power(long n) const;

    /// Restrict the known window: exponents >= new_cap/ram() become unknown.
    Puiseux truncate(i64 new_cap) const;
    /// View on a refined grid / larger coefficient field.
    Puiseux lift(int new_e, const FieldPtr& new_fld) const;

    /// (a - b) indistinguishable from 0 at the joint precision.
    bool eq_to_prec(const Puiseux& o) const { return (*this - o).is_zero_to_prec() || (*this - o).is_exact_zero(); }

    std::string str() const;

private:
    void normalize(bool reduce_grid = true);
    static void unify(Puiseux& a, Puiseux& b);

    FieldPtr fld_;
    int e_ = 1;
    i64 lead_ = 0;                // index of c_[0] on the 1/e grid
    std::vector<FieldElem> c_;    // c_[0] nonzero unless value is zero
    i64 cap_ = 0;                 // first unknown index (when !exact_)
    bool exact_ = true;
};

/// Deterministic total order used for reproducible root/branch selection:
/// by valuation, then by the packed index of the leading coefficient.
bool branch_less(const Puiseux& a, const Puiseux& b);

} // namespace drinfeld

#endif
