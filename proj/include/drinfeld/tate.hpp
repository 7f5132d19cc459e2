#ifndef DRINFELD_TATE_HPP
#define DRINFELD_TATE_HPP

#include <vector>

#include "drinfeld/puiseux.hpp"

namespace drinfeld {

/// Truncated series in t with Puiseux coefficients: the computational model
/// of the Tate algebra. A series knows how many coefficients it carries (its
/// truncation order N); when `entire_poly` is set the series is an exact
/// polynomial and every coefficient beyond the stored ones is exactly zero.
class TateSeries {
public:
    TateSeries() = default;
    TateSeries(FieldPtr fld, int N);  // zero series, not entire

    static TateSeries zero(FieldPtr fld, int N) { return TateSeries(std::move(fld), N); }
    /// Exact polynomial sum coeffs[i] t^i.
    static TateSeries poly(FieldPtr fld, std::vector<Puiseux> coeffs);
    static TateSeries constant(const Puiseux& c) { return poly(c.field(), {c}); }
    static TateSeries t_var(FieldPtr fld);
    /// Truncated series with the given coefficients (unknown beyond them).
    static TateSeries series(FieldPtr fld, std::vector<Puiseux> coeffs);

    const FieldPtr& field() const { return fld_; }
    int trunc() const { return int(c_.size()); }
    bool entire() const { return entire_; }
    bool is_zero_to_prec() const;
    const Puiseux& coeff(int m) const;
    Puiseux coeff_or_zero(int m) const;  // exact zero beyond an entire poly

    TateSeries operator+(const TateSeries& o) const;
    TateSeries operator-(const TateSeries& o) const;
    TateSeries operator*(const TateSeries& o) const;
    TateSeries operator-() const;
    TateSeries operator*(const Puiseux& s) const;

    /// Coefficientwise q^n Frobenius (n may be negative).
    TateSeries twist(long n) const;
    /// Multiplicative inverse as a series; the t-constant coefficient must be
    /// invertible (NonUnitConstantTerm otherwise).
    TateSeries inv() const;
    TateSeries truncate(int N) const;

    /// Specialize at t = theta with a tail certificate: over the last
    /// `window` coefficients, val(c_m theta^m) must be strictly increasing
    /// (InsufficientTruncation otherwise); exact for entire polynomials.
    Puiseux eval_at_theta(int window = 5) const;

    /// Minimum over m of val(c_m), as a rational val_num/val_den; used in
    /// residual reports. Returns false when every coefficient is exactly zero.
    bool min_coeff_val(std::int64_t& num, std::int64_t& den) const;

    std::string str() const;

private:
    FieldPtr fld_;
    std::vector<Puiseux> c_;
    bool entire_ = false;
};

using TateMatrix = std::vector<std::vector<TateSeries>>;

TateMatrix tmat_zero(FieldPtr fld, int rows, int cols, int N);
TateMatrix tmat_id(FieldPtr fld, int n, int N);
TateMatrix tmat_add(const TateMatrix& a, const TateMatrix& b);
TateMatrix tmat_sub(const TateMatrix& a, const TateMatrix& b);
TateMatrix tmat_mul(const TateMatrix& a, const TateMatrix& b);
TateMatrix tmat_twist(const TateMatrix& a, long n);
TateMatrix tmat_transpose(const TateMatrix& a);
/// Gaussian elimination over the series ring; pivots must have invertible
/// t-constant coefficients (NonUnitConstantTerm when singular to precision).
TateMatrix tmat_inv(const TateMatrix& a);

/// Least valuation (num/den) over all coefficients of all entries; true when
/// at least one coefficient is not exactly zero.
bool tmat_min_val(const TateMatrix& a, std::int64_t& num, std::int64_t& den);

} // namespace drinfeld

#endif
