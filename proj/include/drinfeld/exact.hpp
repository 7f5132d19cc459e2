#ifndef DRINFELD_EXACT_HPP
#define DRINFELD_EXACT_HPP

#include <vector>

#include "drinfeld/poly.hpp"

namespace drinfeld {

/// Symbolic certification of the exponential functional equation
///   exp_rho(theta z) = rho_t(exp_rho(z))
/// through z^{q^I}, for a module with polynomial coefficients
/// kappa_1..kappa_r in F_{q^d}[theta].
///
/// The exponential coefficients are carried as exact fractions
/// alpha_i = A_i / Delta_i with the factored denominators
///   Delta_i = prod_{m=1}^{i} (theta^{q^m} - theta)^{q^{i-m}},
/// so only the numerators A_i are computed:
///   A_i = sum_j kappa_j A_{i-j}^{q^j} R_{i,j},
///   R_{i,j} = prod_{m=i-j+1}^{i-1} (theta^{q^m} - theta)^{q^{i-m}}.
/// In characteristic p each factor collapses to the binomial
/// theta^{q^i} - theta^{q^{i-m}}, keeping the terms sparse.
///
/// The returned value is true iff every coefficient residual
///   A_i theta^{q^i} - theta A_i - sum_j kappa_j A_{i-j}^{q^j} R'_{i,j},
///   R'_{i,j} = prod_{m=i-j+1}^{i} (theta^{q^i} - theta^{q^{i-m}}),
/// vanishes identically for 1 <= i <= I (the z^{q^i} coefficient of the
/// functional equation cleared of denominators).
bool verify_exp_functional_equation(const FieldPtr& fld,
                                    const std::vector<Poly>& kappa, int I);

/// The exact numerators A_0..A_I described above (A_0 = 1); exposed so the
/// numeric exponential coefficients can be cross-checked against A_i/Delta_i.
std::vector<SparsePoly> exp_numerators(const FieldPtr& fld,
                                       const std::vector<Poly>& kappa, int I);

} // namespace drinfeld

#endif
