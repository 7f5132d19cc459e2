#ifndef DRINFELD_HOMS_HPP
#define DRINFELD_HOMS_HPP

#include <vector>

#include "drinfeld/module.hpp"

namespace drinfeld {

/// F_q-basis of the morphisms {b : deg_tau b <= B, b rho_t = rho'_t b} whose
/// coefficients are polynomials in theta of degree <= theta_cap with
/// coefficients in F_{q^d} (d over the modules' own coefficient fields).
/// Obtained by equating tau-coefficients of b rho_t = rho'_t b and solving
/// the resulting F_q-linear system on the theta/field digits of the c_i.
/// Requires both modules' kappa_j to be exact theta-polynomials
/// (ShapeMismatch otherwise). theta_cap < 0 defaults to B.
std::vector<TwistedPoly> hom_solver(const DrinfeldModule& rho, const DrinfeldModule& rhop,
                                    int B, int d, int theta_cap = -1);

/// Degree s = [K_rho : k] of the endomorphism algebra, from the growth of
/// the bounded-degree endomorphism count: s = N(B + r) - N(B) where
/// N(B) = dim_{F_q} {b in End(rho) : deg_tau b <= B}.  Certified only up to
/// the caps: the probes N(B+2r) - N(B+r) at d and the same slope at 2d must
/// agree, else InconclusiveBound is thrown.
int endo_ring_degree(const DrinfeldModule& rho, int B, int d);

} // namespace drinfeld

#endif
