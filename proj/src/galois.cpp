#include "drinfeld/galois.hpp"

#include "drinfeld/errors.hpp"
#include "drinfeld/linalg.hpp"

namespace drinfeld {

GaloisMatrix galois_identity(const FieldPtr& fld, int r) {
    GaloisMatrix m(std::size_t(r),
                   std::vector<RationalFn>(std::size_t(r), RationalFn::zero(Var::T, fld)));
    RationalFn one = RationalFn::from_poly(Poly::monomial(Var::T, FieldElem::one(fld), 0));
    for (int i = 0; i < r; ++i) m[std::size_t(i)][std::size_t(i)] = one;
    return m;
}

GaloisMatrix galois_scalar(const RationalFn& c, int r) {
    const FieldPtr& fld = c.num().field();
    GaloisMatrix m(std::size_t(r),
                   std::vector<RationalFn>(std::size_t(r), RationalFn::zero(Var::T, fld)));
    for (int i = 0; i < r; ++i) m[std::size_t(i)][std::size_t(i)] = c;
    return m;
}

int centralizer_dim(const std::vector<GaloisMatrix>& gens, int r) {
    if (gens.empty()) throw ShapeMismatch("centralizer needs at least one generator");
    const FieldPtr& fld = gens[0][0][0].num().field();
    RationalFn zero = RationalFn::zero(Var::T, fld);
    RationalFn one = RationalFn::from_poly(Poly::monomial(Var::T, FieldElem::one(fld), 0));

    // One equation per generator g and position (i, j): (Xg - gX)_{ij} = 0.
    // The coefficient of the unknown X_{ab} is delta_{ai} g_{bj} - g_{ia} delta_{bj}.
    Matrix<RationalFn> A;
    for (const auto& g : gens) {
        if (int(g.size()) != r) throw ShapeMismatch("generator has the wrong size");
        for (const auto& row : g)
            if (int(row.size()) != r) throw ShapeMismatch("generator has the wrong size");
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                std::vector<RationalFn> eq(std::size_t(r) * std::size_t(r), zero);
                for (int a = 0; a < r; ++a)
                    for (int b = 0; b < r; ++b) {
                        RationalFn c = zero;
                        if (a == i) c = c + g[std::size_t(b)][std::size_t(j)];
                        if (b == j) c = c - g[std::size_t(i)][std::size_t(a)];
                        eq[std::size_t(a) * std::size_t(r) + std::size_t(b)] = c;
                    }
                A.push_back(std::move(eq));
            }
    }
    return int(nullspace(A, zero, one).size());
}

int predicted_trdeg_periods(int r, int s) {
    if (s <= 0 || r % s != 0)
        throw BadDivisibility("endomorphism degree must divide the rank");
    return (r * r) / s;
}

int predicted_trdeg_logs(int r, int s, int n) {
    if (s <= 0 || r % s != 0)
        throw BadDivisibility("endomorphism degree must divide the rank");
    if (n < 0) throw ShapeMismatch("log class count must be non-negative");
    return r * (r / s + n);
}

} // namespace drinfeld
