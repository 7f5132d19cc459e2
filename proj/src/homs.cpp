#include "drinfeld/homs.hpp"

#include <numeric>

#include "drinfeld/errors.hpp"
#include "drinfeld/linalg.hpp"

namespace drinfeld {

namespace {

/// Exact Puiseux value -> polynomial in theta (ShapeMismatch when the value
/// is not an exact integer-grid polynomial).
Poly poly_from_puiseux(const Puiseux& x) {
    if (x.is_exact_zero()) return Poly::zero(Var::Theta, x.field());
    if (!x.exact() || x.ram() != 1 || x.val_num() > 0 || x.support_end_num() > 1)
        throw ShapeMismatch("module coefficient is not a polynomial in theta");
    int deg = int(-x.val_num());
    std::vector<FieldElem> c(std::size_t(deg) + 1, FieldElem::zero(x.field()));
    for (int k = 0; k <= deg; ++k) c[std::size_t(k)] = x.coeff_at(-k);
    return Poly(Var::Theta, std::move(c));
}

Poly lift_poly(const Poly& p, const FieldPtr& F) {
    std::vector<FieldElem> c;
    c.reserve(std::size_t(p.degree()) + 1);
    for (int i = 0; i <= p.degree(); ++i) c.push_back(p.coeff(i).lift_to(F));
    return Poly(Var::Theta, std::move(c));
}

Puiseux puiseux_from_poly(const Poly& p, const FieldPtr& F) {
    Puiseux x = Puiseux::exact_zero(F);
    for (int i = 0; i <= p.degree(); ++i) {
        FieldElem c = p.coeff(i);
        if (!c.is_zero()) x = x + Puiseux::monomial(c.lift_to(F), -i, 1);
    }
    return x;
}

} // namespace

std::vector<TwistedPoly> hom_solver(const DrinfeldModule& rho, const DrinfeldModule& rhop,
                                    int B, int d, int theta_cap) {
    if (B < 0 || d < 1) throw ShapeMismatch("hom_solver caps must be positive");
    int W = theta_cap;
    if (W < 0) {
        // Coefficients of rho_{t^m} (m = floor(B/r)) reach theta-degree about
        // D1 * q^{r(m-1)}; cap the search there so A-multiples up to the
        // tau-degree bound are not silently missed.
        int D1 = 1;
        for (int j = 1; j <= rho.rank(); ++j) {
            const Puiseux& k = rho.kappa(j);
            if (!k.is_exact_zero() && k.exact() && k.ram() == 1)
                D1 = std::max(D1, int(-std::min<std::int64_t>(k.val_num(), 0)));
        }
        int m = B / rho.rank();
        std::int64_t g = 1;
        for (int j = 0; j < rho.rank() * std::max(0, m - 1); ++j) {
            g *= std::int64_t(rho.field()->q);
            if (g > (1 << 20)) throw InsufficientData("theta-degree cap overflow; pass theta_cap");
        }
        W = std::max<std::int64_t>(B, std::int64_t(D1) * g);
    }
    FieldPtr F0 = common_field(rho.field(), rhop.field());
    FieldPtr F = FqField::get(F0->p, F0->e, int(std::lcm(F0->d, d)));
    FieldPtr Fq = FqField::get(F0->p, F0->e, 1);
    const int dd = F->d;
    const int r = rho.rank(), rp = rhop.rank();

    std::vector<Poly> kap, kapp;
    for (int j = 1; j <= r; ++j) kap.push_back(lift_poly(poly_from_puiseux(rho.kappa(j)), F));
    for (int j = 1; j <= rp; ++j) kapp.push_back(lift_poly(poly_from_puiseux(rhop.kappa(j)), F));

    // F_q-basis of F_{q^dd}
    std::vector<FieldElem> basis;
    for (int s = 0; s < dd; ++s) {
        std::vector<std::uint64_t> coords(std::size_t(dd), 0);
        coords[std::size_t(s)] = Fq->one();
        basis.emplace_back(F, F->compose_over_q(coords));
    }

    // tau-coefficient polynomials of b rho_t - rho'_t b for each unknown
    // digit c_i = g_s theta^m of b = sum c_i tau^i
    const int K = B + std::max(r, rp);
    const int U = (B + 1) * (W + 1) * dd;
    std::vector<std::vector<Poly>> contrib(std::size_t(U),
                                           std::vector<Poly>(std::size_t(K) + 1,
                                                             Poly::zero(Var::Theta, F)));
    int maxdeg = 0;
    int u = 0;
    for (int i = 0; i <= B; ++i) {
        for (int m = 0; m <= W; ++m) {
            for (int s = 0; s < dd; ++s, ++u) {
                auto& row = contrib[std::size_t(u)];
                // c_i tau^i * theta  and  -theta * c_i tau^i
                int qi = 1;
                for (int k = 0; k < i; ++k) {
                    if (qi > (1 << 24)) throw InsufficientData("q^i exponent overflow");
                    qi *= int(F->q);
                }
                Poly diag = Poly::monomial(Var::Theta, basis[std::size_t(s)], m + qi) -
                            Poly::monomial(Var::Theta, basis[std::size_t(s)], m + 1);
                row[std::size_t(i)] = row[std::size_t(i)] + diag;
                // c_i tau^i * kappa_j tau^j = c_i kappa_j^{q^i} tau^{i+j}
                for (int j = 1; j <= r; ++j) {
                    Poly t = kap[std::size_t(j - 1)].frobenius_power(i) *
                             Poly::monomial(Var::Theta, basis[std::size_t(s)], m);
                    row[std::size_t(i + j)] = row[std::size_t(i + j)] + t;
                }
                // -kappa'_j (c_i)^{q^j} tau^{j+i}
                for (int j = 1; j <= rp; ++j) {
                    Poly cq = Poly::monomial(Var::Theta, basis[std::size_t(s)], m)
                                  .frobenius_power(j);
                    row[std::size_t(i + j)] = row[std::size_t(i + j)] -
                                              kapp[std::size_t(j - 1)] * cq;
                }
                for (const auto& p : row) maxdeg = std::max(maxdeg, p.degree());
            }
        }
    }

    Matrix<FieldElem> A;
    A.reserve(std::size_t(K + 1) * std::size_t(maxdeg + 1) * std::size_t(dd));
    std::vector<std::vector<std::uint64_t>> comps;
    comps.resize(std::size_t(U));
    for (int k = 0; k <= K; ++k) {
        for (int M = 0; M <= maxdeg; ++M) {
            for (int v = 0; v < U; ++v)
                comps[std::size_t(v)] = F->decompose_over_q(contrib[std::size_t(v)][std::size_t(k)]
                                                                .coeff(M)
                                                                .idx());
            bool any = false;
            for (const auto& co : comps)
                for (auto x : co)
                    if (x) { any = true; break; }
            if (!any) continue;
            for (int t = 0; t < dd; ++t) {
                std::vector<FieldElem> arow;
                arow.reserve(std::size_t(U));
                for (int v = 0; v < U; ++v)
                    arow.emplace_back(Fq, comps[std::size_t(v)][std::size_t(t)]);
                A.push_back(std::move(arow));
            }
        }
    }

    std::vector<TwistedPoly> out;
    if (A.empty()) {
        // no constraints: every candidate digit is free; return monomial basis
        for (int i = 0; i <= B; ++i)
            for (int m = 0; m <= W; ++m)
                for (int s = 0; s < dd; ++s) {
                    std::vector<Puiseux> c(std::size_t(i) + 1, Puiseux::exact_zero(F));
                    c[std::size_t(i)] = Puiseux::monomial(basis[std::size_t(s)], -m, 1);
                    out.emplace_back(F, std::move(c));
                }
        return out;
    }

    auto null_basis = nullspace(A, FieldElem::zero(Fq), FieldElem::one(Fq));
    for (const auto& sol : null_basis) {
        std::vector<Poly> ci(std::size_t(B) + 1, Poly::zero(Var::Theta, F));
        int v = 0;
        for (int i = 0; i <= B; ++i)
            for (int m = 0; m <= W; ++m)
                for (int s = 0; s < dd; ++s, ++v) {
                    if (sol[std::size_t(v)].is_zero()) continue;
                    FieldElem c = sol[std::size_t(v)].lift_to(F) * basis[std::size_t(s)];
                    ci[std::size_t(i)] = ci[std::size_t(i)] + Poly::monomial(Var::Theta, c, m);
                }
        std::vector<Puiseux> coeffs;
        coeffs.reserve(ci.size());
        for (const auto& p : ci) coeffs.push_back(puiseux_from_poly(p, F));
        out.emplace_back(F, std::move(coeffs));
    }
    return out;
}

int endo_ring_degree(const DrinfeldModule& rho, int B, int d) {
    const int r = rho.rank();
    auto count = [&](int cap, int dext) {
        return int(hom_solver(rho, rho, cap, dext).size());
    };
    int s = count(B + r, d) - count(B, d);
    int s2 = count(B + r, 2 * d) - count(B, 2 * d);
    if (s != s2)
        throw InconclusiveBound("endomorphism count slope unstable under the (B, d) probes");
    if (s <= 0) throw InconclusiveBound("endomorphism count did not grow with the degree cap");
    return s;
}

} // namespace drinfeld
