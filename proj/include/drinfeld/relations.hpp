#ifndef DRINFELD_RELATIONS_HPP
#define DRINFELD_RELATIONS_HPP

#include <vector>

#include "drinfeld/poly.hpp"
#include "drinfeld/puiseux.hpp"

namespace drinfeld {

/// A bounded-height F_q[theta]-linear relation sum c_i v_i = 0 to precision.
struct RelationCertificate {
    std::vector<Poly> coeffs;     // c_i in F_q[theta], deg <= D, not all zero
    bool residual_infinite = false;  // direct sum is exactly/indistinguishably 0
    std::int64_t residual_num = 0;   // attained val(sum c_i v_i) as num/den
    std::int64_t residual_den = 1;
    std::int64_t cutoff_num = 0;     // detection threshold used, as num/den
    std::int64_t cutoff_den = 1;
};

/// All F_q[theta]-relations of coefficient degree <= D among the values,
/// detected on the shared digit grid below a cutoff (min precision cap minus
/// a 4-slot safety margin) and re-verified by direct summation.
/// Throws InsufficientPrecision when the joint window is too short for D.
std::vector<RelationCertificate> find_relations(const std::vector<Puiseux>& values, int D);

/// Dimension of the span at height <= D: m minus the number of independent
/// relation certificates.
int kspan_dim(const std::vector<Puiseux>& values, int D);

} // namespace drinfeld

#endif
