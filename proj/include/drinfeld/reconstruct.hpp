#ifndef DRINFELD_RECONSTRUCT_HPP
#define DRINFELD_RECONSTRUCT_HPP

#include <optional>
#include <vector>

#include "drinfeld/poly.hpp"

namespace drinfeld {

/// Reconstruct a rational function n/d (deg n, deg d <= max_deg, d(0) != 0)
/// from the first coefficients of its power-series expansion around 0.
/// Requires at least 2*max_deg + 1 coefficients; returns nullopt when no
/// such function matches the whole sequence.
std::optional<RationalFn> rational_reconstruct(Var v,
                                               const std::vector<FieldElem>& seq,
                                               int max_deg);

} // namespace drinfeld

#endif
