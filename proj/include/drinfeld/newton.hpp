#ifndef DRINFELD_NEWTON_HPP
#define DRINFELD_NEWTON_HPP

#include <vector>

#include "drinfeld/puiseux.hpp"

namespace drinfeld {

struct NewtonRoot {
    Puiseux value;
    int multiplicity = 1;
};

struct NewtonOptions {
    /// Cap on d'*e' for the tame extension a root may live in.
    int max_de = 12;
    /// Exhaustive residue search refuses fields larger than this.
    std::uint64_t max_field_size = std::uint64_t(1) << 20;
    /// Collect tame roots and report wild slopes in `wild_deficit` instead of
    /// throwing WildRamification.
    bool skip_wild = false;
    /// Working precision (whole-theta slots) for Newton refinement.
    int target_slots = 64;
};

struct NewtonResult {
    std::vector<NewtonRoot> roots;      // sorted by branch_less on values
    int wild_deficit = 0;               // root count lost to wild slopes
};

/// All roots of P(x) = sum coeffs[i] x^i lying in tame extensions
/// F_{q^{d'}}((theta^{-1/e'})), by Newton-polygon dissection, residue-equation
/// solving over F_{q^{d'}}, and Newton refinement.
NewtonResult newton_roots(const std::vector<Puiseux>& coeffs,
                          const NewtonOptions& opts = {});

} // namespace drinfeld

#endif
