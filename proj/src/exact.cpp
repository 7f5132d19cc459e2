#include "drinfeld/exact.hpp"

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

using i64 = std::int64_t;

i64 q_to(std::uint64_t q, int i) {
    i64 v = 1;
    for (int k = 0; k < i; ++k) {
        if (v > (i64(1) << 50)) throw InsufficientData("q^i exponent overflow");
        v *= i64(q);
    }
    return v;
}

SparsePoly from_poly(const FieldPtr& fld, const Poly& p) {
    SparsePoly s(fld);
    for (int i = 0; i <= p.degree(); ++i) {
        FieldElem c = p.coeff(i);
        if (!c.is_zero()) s.add_term(i, c.lift_to(fld));
    }
    return s;
}

/// (theta^{q^m} - theta)^{q^{i-m}} collapsed in characteristic p:
/// theta^{q^i} - theta^{q^{i-m}}.
SparsePoly collapsed_factor(const FieldPtr& fld, std::uint64_t q, int i, int m) {
    SparsePoly s(fld);
    s.add_term(q_to(q, i), FieldElem::one(fld));
    s.add_term(q_to(q, i - m), -FieldElem::one(fld));
    return s;
}

/// prod_{m=lo}^{hi} (theta^{q^i} - theta^{q^{i-m}}).
SparsePoly collapsed_product(const FieldPtr& fld, std::uint64_t q, int i, int lo, int hi) {
    SparsePoly acc = SparsePoly::term(FieldElem::one(fld), 0);
    for (int m = lo; m <= hi; ++m) acc = acc * collapsed_factor(fld, q, i, m);
    return acc;
}

} // namespace

std::vector<SparsePoly> exp_numerators(const FieldPtr& fld,
                                       const std::vector<Poly>& kappa, int I) {
    const int r = int(kappa.size());
    if (r == 0) throw ShapeMismatch("module must have positive rank");
    std::vector<SparsePoly> K;
    K.reserve(kappa.size());
    for (const auto& k : kappa) K.push_back(from_poly(fld, k));
    if (K.back().is_zero()) throw ShapeMismatch("leading coefficient kappa_r must be nonzero");

    std::vector<SparsePoly> A;
    A.push_back(SparsePoly::term(FieldElem::one(fld), 0));
    for (int i = 1; i <= I; ++i) {
        SparsePoly Ai(fld);
        for (int j = 1; j <= std::min(i, r); ++j) {
            SparsePoly t = K[std::size_t(j - 1)] * A[std::size_t(i - j)].frobenius_power(j);
            Ai = Ai + t * collapsed_product(fld, fld->q, i, i - j + 1, i - 1);
        }
        A.push_back(std::move(Ai));
    }
    return A;
}

bool verify_exp_functional_equation(const FieldPtr& fld,
                                    const std::vector<Poly>& kappa, int I) {
    const int r = int(kappa.size());
    auto A = exp_numerators(fld, kappa, I);
    std::vector<SparsePoly> K;
    for (const auto& k : kappa) K.push_back(from_poly(fld, k));
    const SparsePoly theta = SparsePoly::term(FieldElem::one(fld), 1);

    // Denominators Delta_i built by the independent recurrence
    // Delta_i = (theta^{q^i} - theta) Delta_{i-1}^{q}; used to certify that
    // the products R'_{i,j} really clear the denominators:
    // Delta_{i-j}^{q^j} R'_{i,j} = Delta_i.
    std::vector<SparsePoly> Delta;
    Delta.push_back(SparsePoly::term(FieldElem::one(fld), 0));
    for (int i = 1; i <= I; ++i) {
        SparsePoly d(fld);
        d.add_term(q_to(fld->q, i), FieldElem::one(fld));
        d.add_term(1, -FieldElem::one(fld));
        Delta.push_back(d * Delta.back().frobenius_power(1));
    }

    for (int i = 1; i <= I; ++i) {
        SparsePoly theta_qi = SparsePoly::term(FieldElem::one(fld), q_to(fld->q, i));
        SparsePoly res = A[std::size_t(i)] * theta_qi - theta * A[std::size_t(i)];
        for (int j = 1; j <= std::min(i, r); ++j) {
            SparsePoly rp = collapsed_product(fld, fld->q, i, i - j + 1, i);
            if (!(Delta[std::size_t(i - j)].frobenius_power(j) * rp == Delta[std::size_t(i)]))
                return false;
            SparsePoly t = K[std::size_t(j - 1)] * A[std::size_t(i - j)].frobenius_power(j);
            res = res - t * rp;
        }
        if (!res.is_zero()) return false;
    }
    return true;
}

} // namespace drinfeld
