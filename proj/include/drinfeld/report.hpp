#ifndef DRINFELD_REPORT_HPP
#define DRINFELD_REPORT_HPP

#include <string>

#include "json.hpp"

namespace drinfeld {

using Json = nlohmann::ordered_json;

/// Execute one CLI job. `config` holds the command name, the module
/// descriptor, and optional overrides:
///   {
///     "command": "exp" | "log" | "period" | "agf" | "quasiperiod" |
///                "period-matrix" | "verify-triv" | "ext" | "endos" |
///                "galois-dim" | "relations" | "full-report",
///     "module": {"q": int, "d": int (default 1), "rank": int,
///                 "kappa": [puiseux literals]},
///     "precision": int,  // tower depth for periods (default 4)
///     "t_trunc": int,    // Tate-series truncation N (default 48)
///     "deg_cap": int,    // relation-finder theta-degree bound (default 3)
///     "branch": int,     // torsion branch selector (default 0)
///     "B": int, "endo_d": int,  // endomorphism caps (defaults 4, 2)
///     "max_de": int,     // tame extension cap for root finding (default 12)
///     ... command-specific inputs ("z", "u", "j", "values")
///   }
/// The returned report echoes the fully defaulted inputs, carries a version
/// stamp (including the irreducible-modulus table hash), all computed values
/// as Puiseux literals, residual/certificate tables, and a top-level "pass".
/// Timings live only under "timings"; everything else is deterministic.
Json run(const Json& config);

/// Plain-text rendering of a report (derived from the JSON form).
std::string render_text(const Json& report);

} // namespace drinfeld

#endif
