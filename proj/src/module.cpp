#include "drinfeld/module.hpp"

#include <algorithm>

#include "drinfeld/errors.hpp"
#include "drinfeld/newton.hpp"
#include "drinfeld/relations.hpp"

namespace drinfeld {

namespace {

using i64 = std::int64_t;

// q^i with an overflow guard; the stop rules below fire long before this
i64 q_pow(std::uint64_t q, int i) {
    i64 r = 1;
    for (int k = 0; k < i; ++k) {
        if (r > (i64(1) << 50) / i64(q))
            throw InsufficientPrecision("Frobenius exponent exceeds the representable range");
        r *= i64(q);
    }
    return r;
}

struct RVal {
    bool finite = false;
    i64 num = 0;
    i64 den = 1;
};

RVal value_bound(const Puiseux& x) {
    RVal v;
    if (x.is_exact_zero()) return v;  // +infinity
    v.finite = true;
    v.num = x.val_or_cap_num();
    v.den = x.ram();
    return v;
}

RVal cap_bound(const Puiseux& x) {
    RVal v;
    if (x.exact()) return v;  // +infinity
    v.finite = true;
    v.num = x.cap_num();
    v.den = x.ram();
    return v;
}

// a >= b with (!finite == +infinity)
bool rv_geq(const RVal& a, const RVal& b) {
    if (!a.finite) return true;
    if (!b.finite) return false;
    return __int128(a.num) * b.den >= __int128(b.num) * a.den;
}

bool rv_gt(const RVal& a, const RVal& b) {
    if (!a.finite) return b.finite;
    if (!b.finite) return false;
    return __int128(a.num) * b.den > __int128(b.num) * a.den;
}

constexpr int kMaxTerms = 96;
constexpr int kMaxTelescope = 512;

// restrict x so that digits at or beyond `bound` are declared unknown;
// used when a summation stops before its terms clear the accumulated cap
Puiseux truncate_at(const Puiseux& x, const RVal& bound) {
    if (!bound.finite) return x;
    i64 cap = (bound.num * x.ram() + bound.den - 1) / bound.den;  // ceil
    return x.truncate(cap);
}

} // namespace

DrinfeldModule::DrinfeldModule(FieldPtr fld, std::vector<Puiseux> kappa)
    : fld_(std::move(fld)), kappa_(std::move(kappa)) {
    if (kappa_.empty()) throw ShapeMismatch("rank must be at least 1");
    if (kappa_.back().is_exact_zero() || kappa_.back().is_zero_to_prec())
        throw ShapeMismatch("kappa_r must be nonzero");
    Puiseux one = Puiseux::from_elem(FieldElem::one(fld_));
    normalized_ = kappa_.back().exact() && (kappa_.back() - one).is_exact_zero();
    alpha_.push_back(one);
    beta_.push_back(one);
}

TwistedPoly DrinfeldModule::rho_t() const {
    std::vector<Puiseux> c;
    c.push_back(Puiseux::theta(fld_));
    for (const auto& k : kappa_) c.push_back(k);
    return TwistedPoly(fld_, std::move(c));
}

TwistedPoly DrinfeldModule::rho_a(const Poly& a) const {
    TwistedPoly rt = rho_t();
    TwistedPoly acc = TwistedPoly::zero(fld_);
    TwistedPoly power = TwistedPoly::one(fld_);
    for (int k = 0; k <= a.degree(); ++k) {
        FieldElem c = a.coeff(k);
        if (!c.is_zero()) acc = acc + power * Puiseux::from_elem(c.lift_to(fld_));
        if (k < a.degree()) power = power * rt;
    }
    return acc;
}

const std::vector<Puiseux>& DrinfeldModule::exp_coeffs(int I) const {
    const int r = rank();
    while (int(alpha_.size()) <= I) {
        int i = int(alpha_.size());
        Puiseux rhs = Puiseux::exact_zero(fld_);
        for (int j = 1; j <= std::min(i, r); ++j)
            rhs = rhs + kappa_[std::size_t(j) - 1] * alpha_[std::size_t(i - j)].frob_power(j);
        Puiseux denom = Puiseux::theta_power(fld_, q_pow(fld_->q, i)) - Puiseux::theta(fld_);
        alpha_.push_back(rhs * denom.inv());
    }
    return alpha_;
}

const std::vector<Puiseux>& DrinfeldModule::log_coeffs(int I) const {
    const int r = rank();
    while (int(beta_.size()) <= I) {
        int i = int(beta_.size());
        Puiseux rhs = Puiseux::exact_zero(fld_);
        for (int j = 1; j <= std::min(i, r); ++j)
            rhs = rhs + beta_[std::size_t(i - j)] * kappa_[std::size_t(j) - 1].frob_power(i - j);
        Puiseux denom = Puiseux::theta(fld_) - Puiseux::theta_power(fld_, q_pow(fld_->q, i));
        beta_.push_back(rhs * denom.inv());
    }
    return beta_;
}

Puiseux DrinfeldModule::exp_eval(const Puiseux& z) const {
    if (z.is_exact_zero()) return z;
    Puiseux acc = z;  // alpha_0 = 1
    int hits = 0;
    RVal last;
    for (int i = 1; i <= kMaxTerms; ++i) {
        const Puiseux& ai = exp_coeffs(i)[std::size_t(i)];
        Puiseux term = ai * z.frob_power(i);
        acc = acc + term;
        last = value_bound(term);
        // once terms sit beyond the accumulated cap they can no longer
        // change any known digit; two consecutive confirmations end the sum
        if (rv_geq(last, cap_bound(acc))) {
            if (++hits >= 2) return acc;
        } else {
            hits = 0;
        }
    }
    // term budget exhausted: the unsummed tail starts at the last term's
    // valuation scale, so the known digits end there
    return truncate_at(acc, last);
}

Puiseux DrinfeldModule::log_eval(const Puiseux& z, int window) const {
    if (z.is_exact_zero()) return z;
    Puiseux acc = z;  // beta_0 = 1
    RVal prev = value_bound(z);
    for (int i = 1; i <= kMaxTerms; ++i) {
        const Puiseux& bi = log_coeffs(i)[std::size_t(i)];
        if (bi.is_exact_zero()) continue;  // vanishing coefficient, no evidence
        Puiseux term = bi * z.frob_power(i);
        RVal v = value_bound(term);
        if (v.finite || prev.finite) {
            if (!rv_gt(v, prev))
                throw LogDivergence("logarithm term valuations not strictly increasing");
        }
        acc = acc + term;
        prev = v;
        if (i >= window && rv_geq(v, cap_bound(acc))) return acc;
    }
    throw LogDivergence("logarithm did not stabilize within the term budget");
}

std::vector<Puiseux> DrinfeldModule::torsion_tower(int depth, int branch, int max_de) const {
    const int r = rank();
    i64 Q = q_pow(fld_->q, r);
    std::vector<Puiseux> coeffs(std::size_t(Q) + 1, Puiseux::exact_zero(fld_));
    coeffs[1] = Puiseux::theta(fld_);
    for (int j = 1; j <= r; ++j)
        coeffs[std::size_t(q_pow(fld_->q, j))] = kappa_[std::size_t(j) - 1];

    NewtonOptions opts;
    opts.max_de = max_de;
    NewtonResult res = newton_roots(coeffs, opts);
    std::vector<Puiseux> nonzero;
    for (const auto& rt : res.roots)
        if (!rt.value.is_exact_zero() && !rt.value.is_zero_to_prec())
            for (int c = 0; c < rt.multiplicity; ++c) nonzero.push_back(rt.value);
    if (nonzero.empty()) throw TowerDead("only x = 0 solves rho_t(x) = 0 in the tame closure");
    if (branch < 0 || branch >= int(nonzero.size()))
        throw ShapeMismatch("torsion branch index out of range");

    std::vector<Puiseux> tower{nonzero[std::size_t(branch)]};
    for (int m = 1; m <= depth; ++m) {
        coeffs[0] = -tower.back();
        NewtonResult lift = newton_roots(coeffs, opts);
        if (lift.roots.empty()) throw TowerDead("no tame lift for the next tower level");
        // the principal (maximum-valuation) lift continues the compatible
        // system; torsion translates all sit at strictly lower valuation
        tower.push_back(lift.roots.back().value);
    }
    return tower;
}

Puiseux DrinfeldModule::period_from_tower(const std::vector<Puiseux>& tower) const {
    Puiseux omega;
    bool have = false;
    for (int m = 0; m < int(tower.size()); ++m) {
        Puiseux L;
        try {
            L = log_eval(tower[std::size_t(m)]);
        } catch (const LogDivergence&) {
            continue;
        }
        Puiseux w = L * Puiseux::theta_power(fld_, m + 1);
        if (have && !w.eq_to_prec(omega))
            throw InsufficientPrecision("tower levels disagree on the period");
        omega = w;
        have = true;
    }
    if (!have) throw LogDivergence("no tower level lies in the logarithm domain");
    return omega;
}

Puiseux DrinfeldModule::period(int branch, int depth, int max_de) const {
    return period_from_tower(torsion_tower(depth, branch, max_de));
}

TateSeries DrinfeldModule::agf(const Puiseux& u, int N) const {
    std::vector<Puiseux> c;
    c.reserve(std::size_t(std::max(N, 0)));
    for (int m = 0; m < N; ++m)
        c.push_back(exp_eval(u * Puiseux::theta_power(fld_, -(m + 1))));
    return TateSeries::series(fld_, std::move(c));
}

std::vector<Puiseux> DrinfeldModule::quasi_coeffs(const TwistedPoly& delta_t, int I) const {
    if (!delta_t.coeff(0).is_exact_zero() && !delta_t.coeff(0).is_zero_to_prec())
        throw ShapeMismatch("biderivation image must have zero constant term");
    exp_coeffs(std::max(I - 1, 0));
    std::vector<Puiseux> c;
    for (int m = 1; m <= I; ++m) {
        Puiseux rhs = Puiseux::exact_zero(fld_);
        for (int j = 1; j <= std::min(m, delta_t.deg()); ++j)
            rhs = rhs + delta_t.coeff(j) * alpha_[std::size_t(m - j)].frob_power(j);
        Puiseux denom = Puiseux::theta_power(fld_, q_pow(fld_->q, m)) - Puiseux::theta(fld_);
        c.push_back(rhs * denom.inv());
    }
    return c;
}

Puiseux DrinfeldModule::quasi_period(const TwistedPoly& delta_t, const Puiseux& u) const {
    if (!delta_t.coeff(0).is_exact_zero() && !delta_t.coeff(0).is_zero_to_prec())
        throw ShapeMismatch("biderivation image must have zero constant term");
    Puiseux acc = Puiseux::exact_zero(fld_);
    int hits = 0;
    RVal last;
    for (int m = 0; m <= kMaxTelescope; ++m) {
        Puiseux x = exp_eval(u * Puiseux::theta_power(fld_, -(m + 1)));
        Puiseux term = delta_t.apply(x) * Puiseux::theta_power(fld_, m);
        acc = acc + term;
        last = value_bound(term);
        if (rv_geq(last, cap_bound(acc))) {
            if (++hits >= 2) return acc;
        } else {
            hits = 0;
        }
    }
    return truncate_at(acc, last);
}

Puiseux DrinfeldModule::quasi_period_via_agf(int j, const Puiseux& u, int N) const {
    return agf(u, N).twist(j).eval_at_theta();
}

std::vector<std::vector<Puiseux>> DrinfeldModule::period_matrix(
    const std::vector<Puiseux>& periods) const {
    if (int(periods.size()) != rank())
        throw ShapeMismatch("period matrix needs exactly rank() lattice generators");
    if (!find_relations(periods, 3).empty())
        throw DependentPeriods("bounded-height relation found among the proposed periods");
    // basis biderivations: delta_1 = delta^{(1)} (t -> theta - rho_t),
    // delta_{j+1}: t -> tau^j
    std::vector<TwistedPoly> basis;
    {
        std::vector<Puiseux> c{Puiseux::exact_zero(fld_)};
        for (const auto& k : kappa_) c.push_back(-k);
        basis.emplace_back(fld_, std::move(c));
    }
    for (int j = 1; j < rank(); ++j) basis.push_back(TwistedPoly::tau(fld_, j));

    std::vector<std::vector<Puiseux>> P;
    for (const auto& w : periods) {
        std::vector<Puiseux> row;
        for (const auto& d : basis) row.push_back(quasi_period(d, w));
        P.push_back(std::move(row));
    }
    return P;
}

Puiseux carlitz_period_product(const FieldPtr& fld, int branch) {
    const i64 q = i64(fld->q);
    // seed: x with x^{q-1} = -theta, then pi = x^q * prod (1 - theta^{1-q^i})^{-1}
    std::vector<Puiseux> coeffs(std::size_t(q), Puiseux::exact_zero(fld));
    coeffs[0] = Puiseux::theta(fld);
    coeffs[std::size_t(q - 1)] = Puiseux::from_elem(FieldElem::one(fld));
    NewtonOptions opts;
    NewtonResult res = newton_roots(coeffs, opts);
    if (branch < 0 || branch >= int(res.roots.size()))
        throw ShapeMismatch("root branch index out of range");
    Puiseux pi = res.roots[std::size_t(branch)].value.frob_power(1);
    Puiseux one = Puiseux::from_elem(FieldElem::one(fld));
    i64 qi = q;
    // factors with q^i - 1 beyond the working width are 1 to precision
    while (qi - 1 <= i64(Puiseux::default_slots) + 2) {
        pi = pi * (one - Puiseux::theta_power(fld, 1 - qi)).inv();
        if (qi > (i64(1) << 50) / q) break;
        qi *= q;
    }
    return pi;
}

DrinfeldModule normalize_module(const DrinfeldModule& rho, Puiseux* scalar_out, int branch) {
    const FieldPtr& F = rho.field();
    const int r = rho.rank();
    if (rho.normalized()) {
        if (scalar_out) *scalar_out = Puiseux::from_elem(FieldElem::one(F));
        return rho;
    }
    i64 Q = q_pow(F->q, r);
    // c^{q^r - 1} = 1/kappa_r; conjugation by c sends kappa_j to kappa_j c^{q^j - 1}
    std::vector<Puiseux> coeffs(std::size_t(Q), Puiseux::exact_zero(F));
    coeffs[0] = -rho.kappa(r).inv();
    coeffs[std::size_t(Q - 1)] = Puiseux::from_elem(FieldElem::one(F));
    NewtonOptions opts;
    NewtonResult res = newton_roots(coeffs, opts);
    if (branch < 0 || branch >= int(res.roots.size()))
        throw ShapeMismatch("root branch index out of range");
    Puiseux c = res.roots[std::size_t(branch)].value;
    std::vector<Puiseux> kp;
    for (int j = 1; j <= r; ++j)
        kp.push_back(rho.kappa(j) * c.frob_power(j) * c.inv());
    if (scalar_out) *scalar_out = c;
    return DrinfeldModule(F, std::move(kp));
}

} // namespace drinfeld
