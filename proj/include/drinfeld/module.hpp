#ifndef DRINFELD_MODULE_HPP
#define DRINFELD_MODULE_HPP

#include <vector>

#include "drinfeld/poly.hpp"
#include "drinfeld/tate.hpp"
#include "drinfeld/twisted.hpp"

namespace drinfeld {

/// Drinfeld F_q[t]-module rho_t = theta + kappa_1 tau + ... + kappa_r tau^r.
/// exp/log coefficient tables are cached and grow monotonically; fill them
/// single-threaded (queries after that are read-only and safely concurrent).
class DrinfeldModule {
public:
    DrinfeldModule() = default;
    /// kappa = (kappa_1, ..., kappa_r); kappa_r must be nonzero.
    DrinfeldModule(FieldPtr fld, std::vector<Puiseux> kappa);

    const FieldPtr& field() const { return fld_; }
    int rank() const { return int(kappa_.size()); }
    /// kappa_j for 1 <= j <= rank().
    const Puiseux& kappa(int j) const { return kappa_.at(std::size_t(j) - 1); }
    /// Whether kappa_r = 1 exactly (the standing normalization).
    bool normalized() const { return normalized_; }

    TwistedPoly rho_t() const;
    /// Image of a(t) (coefficients in F_q) under the module map.
    TwistedPoly rho_a(const Poly& a) const;

    /// Exponential coefficients alpha_0..alpha_I:
    ///   alpha_0 = 1,  alpha_i (theta^{q^i} - theta) = sum_j kappa_j alpha_{i-j}^{q^j}.
    const std::vector<Puiseux>& exp_coeffs(int I) const;
    /// Logarithm coefficients beta_0..beta_I:
    ///   beta_0 = 1,  beta_i (theta - theta^{q^i}) = sum_j beta_{i-j} kappa_j^{q^{i-j}}.
    const std::vector<Puiseux>& log_coeffs(int I) const;

    /// exp_rho(z): always converges; partial sum to the certified tail bound.
    Puiseux exp_eval(const Puiseux& z) const;
    /// log_rho(z): requires strictly increasing term valuations over the
    /// first `window` steps (LogDivergence otherwise).
    Puiseux log_eval(const Puiseux& z, int window = 5) const;

    /// Compatible t-power torsion sequence x_0..x_depth with rho_t(x_0) = 0,
    /// rho_t(x_{m+1}) = x_m; `branch` selects the seed among the nonzero
    /// torsion roots in the deterministic root order. `max_de` bounds the
    /// tame extension d'*e' the root search may enter.
    std::vector<Puiseux> torsion_tower(int depth, int branch, int max_de = 12) const;
    /// omega = theta^{m+1} log(x_m) from the first convergent tower level,
    /// cross-checked for stability across later levels.
    Puiseux period_from_tower(const std::vector<Puiseux>& tower) const;
    /// Convenience: tower at `branch` to depth `depth`, then the period.
    Puiseux period(int branch = 0, int depth = 4, int max_de = 12) const;

    /// Anderson generating function f_u = sum_{m<N} exp(u/theta^{m+1}) t^m.
    TateSeries agf(const Puiseux& u, int N) const;

    /// Quasi-periodic coefficients c_1..c_I for the biderivation
    /// delta: t -> sum_{j>=1} b_j tau^j (zero constant term required):
    ///   c_m (theta^{q^m} - theta) = sum_j b_j alpha_{m-j}^{q^j}.
    std::vector<Puiseux> quasi_coeffs(const TwistedPoly& delta_t, int I) const;
    /// F_delta(u) by the telescoped series sum_m theta^m delta_t(exp(u/theta^{m+1})).
    Puiseux quasi_period(const TwistedPoly& delta_t, const Puiseux& u) const;
    /// F_{tau^j}(u) via the twisted generating function: eval_at_theta(f_u^{(j)}).
    Puiseux quasi_period_via_agf(int j, const Puiseux& u, int N) const;

    /// P_rho: row i is (F_{delta_1}(omega_i), ..., F_{delta_r}(omega_i)) with
    /// delta_1 the inner biderivation (first column = omega_i) and
    /// delta_{j+1}: t -> tau^j. Throws DependentPeriods when the relation
    /// finder sees a bounded-height relation among the omega_i.
    std::vector<std::vector<Puiseux>> period_matrix(const std::vector<Puiseux>& periods) const;

private:
    FieldPtr fld_;
    std::vector<Puiseux> kappa_;
    bool normalized_ = false;
    mutable std::vector<Puiseux> alpha_, beta_;
};

/// Independent Carlitz period oracle: the product formula
///   pi = (-theta)^{q/(q-1)} prod_{i>=1} (1 - theta^{1-q^i})^{-1},
/// with the (q-1)-th root of -theta fixed by `branch` in the deterministic
/// root order. Agrees with the tower route up to a scalar in F_q^*.
Puiseux carlitz_period_product(const FieldPtr& fld, int branch = 0);

/// Conjugating scalar c (c^{q^r - 1} = 1/kappa_r, branch-selected) and the
/// isomorphic module with kappa_r = 1.
DrinfeldModule normalize_module(const DrinfeldModule& rho, Puiseux* scalar_out = nullptr,
                                int branch = 0);

} // namespace drinfeld

#endif
