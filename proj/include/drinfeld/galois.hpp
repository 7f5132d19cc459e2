#ifndef DRINFELD_GALOIS_HPP
#define DRINFELD_GALOIS_HPP

#include <vector>

#include "drinfeld/poly.hpp"

namespace drinfeld {

using GaloisMatrix = std::vector<std::vector<RationalFn>>;

/// Identity and scalar matrices over F_q(t).
GaloisMatrix galois_identity(const FieldPtr& fld, int r);
GaloisMatrix galois_scalar(const RationalFn& c, int r);

/// Dimension over F_q(t) of the common centralizer
///   {X in Mat_r(F_q(t)) : Xg = gX for every generator g}.
/// By the double-centralizer property this equals the dimension of the
/// difference-equation Galois group when the generators span the motive's
/// endomorphism image. ShapeMismatch unless all generators are r x r.
int centralizer_dim(const std::vector<GaloisMatrix>& gens, int r);

/// Predicted transcendence degree of the period field: r^2 / s where s is the
/// endomorphism-algebra degree. BadDivisibility when s does not divide r.
int predicted_trdeg_periods(int r, int s);

/// Predicted transcendence degree with n independent algebraic logarithm
/// classes adjoined: r (r/s + n). BadDivisibility when s does not divide r.
int predicted_trdeg_logs(int r, int s, int n);

} // namespace drinfeld

#endif
