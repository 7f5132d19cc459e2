#include "drinfeld/tmotive.hpp"

#include <algorithm>

#include "drinfeld/errors.hpp"
#include "drinfeld/reconstruct.hpp"

namespace drinfeld {

namespace {

using i64 = std::int64_t;

TateSeries zero_entry(const FieldPtr& F) {
    return TateSeries::poly(F, {Puiseux::exact_zero(F)});
}

TateSeries one_entry(const FieldPtr& F) {
    return TateSeries::poly(F, {Puiseux::from_elem(FieldElem::one(F))});
}

TateSeries t_minus_theta(const FieldPtr& F) {
    return TateSeries::poly(F, {-Puiseux::theta(F), Puiseux::from_elem(FieldElem::one(F))});
}

bool tmat_exactly_zero(const TateMatrix& a) {
    for (const auto& row : a)
        for (const auto& e : row)
            for (int m = 0; m < e.trunc(); ++m)
                if (!e.coeff(m).is_exact_zero()) return false;
    return true;
}

/// Minimum precision cap over all non-exact coefficients; false when every
/// coefficient is exact (no cap applies).
bool tmat_min_cap(const TateMatrix& a, i64& num, i64& den) {
    bool found = false;
    for (const auto& row : a)
        for (const auto& e : row)
            for (int m = 0; m < e.trunc(); ++m) {
                const Puiseux& c = e.coeff(m);
                if (c.exact()) continue;
                if (!found || __int128(c.cap_num()) * den < __int128(num) * c.ram()) {
                    num = c.cap_num();
                    den = c.ram();
                    found = true;
                }
            }
    return found;
}

ResidualReport make_report(std::string name, const TateMatrix& diff, i64 tnum, i64 tden) {
    ResidualReport rep;
    rep.identity = std::move(name);
    rep.target_num = tnum;
    rep.target_den = tden;
    i64 vn = 0, vd = 1;
    bool any = false;
    for (const auto& row : diff)
        for (const auto& e : row) {
            i64 n, d;
            if (!e.min_coeff_val(n, d)) continue;
            if (!any || __int128(n) * vd < __int128(vn) * d) { vn = n; vd = d; any = true; }
        }
    if (!any) {
        rep.infinite = true;
        rep.pass = true;
        return rep;
    }
    rep.num = vn;
    rep.den = vd;
    rep.pass = __int128(vn) * tden >= __int128(tnum) * vd;
    return rep;
}

/// Exact inverse of a square matrix of exact Puiseux values.
std::vector<std::vector<Puiseux>> pmat_inv(std::vector<std::vector<Puiseux>> m,
                                           const FieldPtr& F) {
    const int n = int(m.size());
    for (int i = 0; i < n; ++i) {
        m[std::size_t(i)].resize(std::size_t(2 * n), Puiseux::exact_zero(F));
        m[std::size_t(i)][std::size_t(n + i)] = Puiseux::from_elem(FieldElem::one(F));
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!m[std::size_t(i)][std::size_t(c)].is_exact_zero() &&
                !m[std::size_t(i)][std::size_t(c)].is_zero_to_prec()) { piv = i; break; }
        if (piv < 0) throw DivisionByZero("singular exact matrix");
        std::swap(m[std::size_t(piv)], m[std::size_t(c)]);
        Puiseux inv = m[std::size_t(c)][std::size_t(c)].inv();
        for (int j = 0; j < 2 * n; ++j)
            m[std::size_t(c)][std::size_t(j)] = m[std::size_t(c)][std::size_t(j)] * inv;
        for (int i = 0; i < n; ++i) {
            if (i == c) continue;
            Puiseux f = m[std::size_t(i)][std::size_t(c)];
            if (f.is_exact_zero()) continue;
            for (int j = 0; j < 2 * n; ++j)
                m[std::size_t(i)][std::size_t(j)] =
                    m[std::size_t(i)][std::size_t(j)] - f * m[std::size_t(c)][std::size_t(j)];
        }
    }
    std::vector<std::vector<Puiseux>> out;
    out.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i)
        out.emplace_back(m[std::size_t(i)].begin() + n, m[std::size_t(i)].end());
    return out;
}

TateSeries det(const TateMatrix& a) {
    const int n = int(a.size());
    if (n == 1) return a[0][0];
    TateSeries acc = a[0][0] - a[0][0];  // zero at the right truncation
    for (int j = 0; j < n; ++j) {
        TateMatrix minor;
        for (int i = 1; i < n; ++i) {
            std::vector<TateSeries> row;
            for (int k = 0; k < n; ++k)
                if (k != j) row.push_back(a[std::size_t(i)][std::size_t(k)]);
            minor.push_back(std::move(row));
        }
        TateSeries term = a[0][std::size_t(j)] * det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

TateMatrix build_phi(const DrinfeldModule& rho) {
    if (!rho.normalized()) throw NotNormalized("companion matrix requires kappa_r = 1");
    const FieldPtr& F = rho.field();
    const int r = rho.rank();
    TateMatrix Phi(std::size_t(r), std::vector<TateSeries>(std::size_t(r), zero_entry(F)));
    for (int i = 0; i + 1 < r; ++i) Phi[std::size_t(i)][std::size_t(i) + 1] = one_entry(F);
    Phi[std::size_t(r) - 1][0] = t_minus_theta(F);
    for (int j = 1; j <= r - 1; ++j)
        Phi[std::size_t(r) - 1][std::size_t(j)] =
            TateSeries::poly(F, {-rho.kappa(j).frob_power(-j)});
    return Phi;
}

TateMatrix build_theta(const DrinfeldModule& rho) {
    const FieldPtr& F = rho.field();
    const int r = rho.rank();
    TateMatrix Th(std::size_t(r), std::vector<TateSeries>(std::size_t(r), zero_entry(F)));
    Th[0][std::size_t(r) - 1] = t_minus_theta(F);
    for (int i = 1; i < r; ++i) {
        Th[std::size_t(i)][std::size_t(i) - 1] = one_entry(F);
        Th[std::size_t(i)][std::size_t(r) - 1] = TateSeries::poly(F, {-rho.kappa(i)});
    }
    return Th;
}

TateMatrix build_v(const DrinfeldModule& rho) {
    if (!rho.normalized()) throw NotNormalized("V requires kappa_r = 1");
    const FieldPtr& F = rho.field();
    const int r = rho.rank();
    TateMatrix V(std::size_t(r), std::vector<TateSeries>(std::size_t(r), zero_entry(F)));
    for (int i = 1; i <= r; ++i)
        for (int j = 1; i + j - 1 <= r; ++j)
            V[std::size_t(i) - 1][std::size_t(j) - 1] =
                TateSeries::poly(F, {rho.kappa(i + j - 1).frob_power(-(j - 1))});
    return V;
}

TateMatrix build_upsilon(const DrinfeldModule& rho, const std::vector<Puiseux>& periods,
                         int N) {
    const int r = rho.rank();
    if (int(periods.size()) != r) throw ShapeMismatch("need one period per unit of rank");
    TateMatrix U;
    for (int i = 0; i < r; ++i) {
        TateSeries f = rho.agf(periods[std::size_t(i)], N);
        std::vector<TateSeries> row;
        for (int j = 0; j < r; ++j) row.push_back(f.twist(j));
        U.push_back(std::move(row));
    }
    if (det(U).is_zero_to_prec())
        throw SingularUpsilon("generating-function matrix is singular to precision");
    return U;
}

TMotiveData build_psi(const DrinfeldModule& rho, const std::vector<Puiseux>& periods, int N) {
    TMotiveData td;
    td.fld = rho.field();
    td.r = rho.rank();
    td.N = N;
    td.periods = periods;
    td.Phi = build_phi(rho);
    td.Theta = build_theta(rho);
    td.V = build_v(rho);
    td.Upsilon = build_upsilon(rho, periods, N);

    // V^{(-1)} Phi = Theta V, checked forward-twisted: V Phi^{(1)} = Theta^{(1)} V^{(1)}
    {
        TateMatrix diff = tmat_sub(tmat_mul(td.V, tmat_twist(td.Phi, 1)),
                                   tmat_mul(tmat_twist(td.Theta, 1), tmat_twist(td.V, 1)));
        ResidualReport rep;
        rep.identity = "V^(-1)*Phi = Theta*V";
        rep.infinite = rep.pass = tmat_exactly_zero(diff);
        td.reports.push_back(std::move(rep));
    }

    TateMatrix U1 = tmat_twist(td.Upsilon, 1);
    {
        TateMatrix diff = tmat_sub(U1, tmat_mul(td.Upsilon, td.Theta));
        i64 cn = 0, cd = 1;
        if (!tmat_min_cap(diff, cn, cd)) { cn = N; cd = 1; }
        td.reports.push_back(make_report("Upsilon^(1) = Upsilon*Theta", diff,
                                         cn - 4 * cd, cd));
    }

    try {
        TateMatrix U1inv = tmat_inv(U1);
        // exact inverse of the constant matrix V
        std::vector<std::vector<Puiseux>> vconst;
        for (const auto& row : td.V) {
            std::vector<Puiseux> prow;
            for (const auto& e : row) prow.push_back(e.coeff_or_zero(0));
            vconst.push_back(std::move(prow));
        }
        auto vinv = pmat_inv(std::move(vconst), td.fld);
        TateMatrix Vinv;
        for (const auto& row : vinv) {
            std::vector<TateSeries> trow;
            for (const auto& e : row) trow.push_back(TateSeries::poly(td.fld, {e}));
            Vinv.push_back(std::move(trow));
        }
        td.Psi = tmat_mul(Vinv, U1inv);
        // Psi^{(-1)} = Phi Psi, checked forward-twisted: Psi = Phi^{(1)} Psi^{(1)}
        TateMatrix diff = tmat_sub(td.Psi, tmat_mul(tmat_twist(td.Phi, 1), tmat_twist(td.Psi, 1)));
        i64 cn = 0, cd = 1;
        if (!tmat_min_cap(diff, cn, cd)) { cn = N; cd = 1; }
        td.reports.push_back(make_report("Psi^(-1) = Phi*Psi", diff, cn - 4 * cd, cd));
    } catch (const NonUnitConstantTerm&) {
        td.psi_fallback = true;
    }
    return td;
}

std::vector<Puiseux> independent_periods(const DrinfeldModule& rho, int depth, int max_de,
                                         int N) {
    const int r = rho.rank();
    std::vector<Puiseux> pool;
    auto fetch = [&](int b) -> const Puiseux& {
        while (int(pool.size()) <= b) pool.push_back(rho.period(int(pool.size()), depth, max_de));
        return pool[std::size_t(b)];
    };
    // lexicographically first branch combination with invertible Upsilon
    std::vector<int> pick;
    for (int i = 0; i < r; ++i) pick.push_back(i);
    const int limit = r + 4;
    while (true) {
        bool ok = true;
        std::vector<Puiseux> cand;
        try {
            for (int b : pick) cand.push_back(fetch(b));
            build_upsilon(rho, cand, N);
        } catch (const SingularUpsilon&) {
            ok = false;
        } catch (const ShapeMismatch&) {
            ok = false;
        }
        if (ok) return cand;
        // advance the combination
        int i = r - 1;
        while (i >= 0 && pick[std::size_t(i)] == limit - (r - i)) --i;
        if (i < 0) throw SingularUpsilon("no independent period combination found");
        ++pick[std::size_t(i)];
        for (int j = i + 1; j < r; ++j) pick[std::size_t(j)] = pick[std::size_t(j) - 1] + 1;
    }
}

ExtBlock build_ext(const DrinfeldModule& rho, const TMotiveData& td, const Puiseux& u) {
    const FieldPtr& F = rho.field();
    const int r = rho.rank();
    const int N = td.N;
    ExtBlock eb;
    eb.u = u;
    eb.alpha = rho.exp_eval(u);
    eb.h.assign(std::size_t(r), Puiseux::exact_zero(F));
    eb.h[0] = eb.alpha;

    TateSeries f = rho.agf(u, N);
    eb.g.assign(std::size_t(r), TateSeries::zero(F, N));
    eb.g[0] = -(t_minus_theta(F) * f) - TateSeries::constant(eb.alpha);
    for (int k = 2; k <= r; ++k) {
        TateSeries acc = TateSeries::zero(F, N);
        for (int j = 1; j <= r - k + 1; ++j)
            acc = acc + f.twist(j) * rho.kappa(j + k - 1).frob_power(-(k - 1));
        eb.g[std::size_t(k) - 1] = -acc;
    }

    // Phi_alpha = [[Phi, 0], [h^T, 1]]
    eb.Phi_alpha = td.Phi;
    for (auto& row : eb.Phi_alpha) row.push_back(zero_entry(F));
    {
        std::vector<TateSeries> bottom;
        for (int j = 0; j < r; ++j) bottom.push_back(TateSeries::poly(F, {eb.h[std::size_t(j)]}));
        bottom.push_back(one_entry(F));
        eb.Phi_alpha.push_back(std::move(bottom));
    }

    // Phi^T g^{(-1)} = g + h, forward-twisted: Phi^{(1)T} g = g^{(1)} + h^{(1)}
    {
        TateMatrix gcol;
        for (const auto& e : eb.g) gcol.push_back({e});
        TateMatrix lhs = tmat_mul(tmat_twist(tmat_transpose(td.Phi), 1), gcol);
        TateMatrix rhs = tmat_twist(gcol, 1);
        for (int i = 0; i < r; ++i)
            rhs[std::size_t(i)][0] =
                rhs[std::size_t(i)][0] +
                TateSeries::constant(eb.h[std::size_t(i)].frob_power(1));
        TateMatrix diff = tmat_sub(lhs, rhs);
        i64 cn = 0, cd = 1;
        if (!tmat_min_cap(diff, cn, cd)) { cn = N; cd = 1; }
        eb.reports.push_back(make_report("Phi^T*g^(-1) = g + h", diff, cn - 4 * cd, cd));
    }

    if (!td.psi_fallback) {
        // Psi_alpha = [[Psi, 0], [g^T Psi, 1]]
        TateMatrix grow{eb.g};
        TateMatrix gpsi = tmat_mul(grow, td.Psi);
        eb.Psi_alpha = td.Psi;
        for (auto& row : eb.Psi_alpha) row.push_back(zero_entry(F));
        {
            std::vector<TateSeries> bottom = gpsi[0];
            bottom.push_back(one_entry(F));
            eb.Psi_alpha.push_back(std::move(bottom));
        }
        TateMatrix diff = tmat_sub(eb.Psi_alpha, tmat_mul(tmat_twist(eb.Phi_alpha, 1),
                                                          tmat_twist(eb.Psi_alpha, 1)));
        i64 cn = 0, cd = 1;
        if (!tmat_min_cap(diff, cn, cd)) { cn = N; cd = 1; }
        eb.reports.push_back(make_report("Psi_alpha^(-1) = Phi_alpha*Psi_alpha", diff,
                                         cn - 4 * cd, cd));
    }

    // first entry of g at t = theta equals u - alpha
    {
        Puiseux d = eb.g[0].eval_at_theta() - (u - eb.alpha);
        ResidualReport rep;
        rep.identity = "g[1](theta) = u - alpha";
        if (d.is_exact_zero()) {
            rep.infinite = rep.pass = true;
        } else {
            rep.pass = d.is_zero_to_prec();
            rep.infinite = rep.pass;
            rep.num = d.val_or_cap_num();
            rep.den = d.ram();
        }
        eb.reports.push_back(std::move(rep));
    }
    return eb;
}

std::vector<TateSeries> pushout_row(const std::vector<TateSeries>& row, const TateMatrix& E) {
    if (E.empty() || row.size() != E.size()) throw ShapeMismatch("push-out row/matrix sizes");
    TateMatrix r{row};
    return tmat_mul(r, E)[0];
}

std::vector<TateSeries> baer_sum(const std::vector<TateSeries>& a,
                                 const std::vector<TateSeries>& b) {
    if (a.size() != b.size()) throw ShapeMismatch("Baer sum of different lengths");
    std::vector<TateSeries> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

EtaResult eta_of_endo(const DrinfeldModule& rho, const TMotiveData& td, const TwistedPoly& b,
                      std::vector<Puiseux> kbasis, int recon_deg) {
    const FieldPtr& F = rho.field();
    const int r = rho.rank();
    if (recon_deg < 0) recon_deg = 2 * r;
    if (td.psi_fallback) throw NonUnitConstantTerm("eta needs Psi; trivialization unavailable");
    EtaResult res;

    // sigma(sum f_j m_j) = sum_j f_j^{(-1)} sum_k Phi_{jk} m_k
    auto sigma_vec = [&](const std::vector<TateSeries>& v) {
        std::vector<TateSeries> out(std::size_t(r), zero_entry(F));
        for (int j = 0; j < r; ++j) {
            TateSeries tv = v[std::size_t(j)].twist(-1);
            for (int k = 0; k < r; ++k)
                out[std::size_t(k)] = out[std::size_t(k)] + tv * td.Phi[std::size_t(j)][std::size_t(k)];
        }
        return out;
    };

    // e(m_1) = b^* m_1 = sum_i c_i^{(-i)} sigma^i m_1
    std::vector<TateSeries> sv(std::size_t(r), zero_entry(F));
    sv[0] = one_entry(F);
    std::vector<TateSeries> em1(std::size_t(r), zero_entry(F));
    for (int i = 0; i <= b.deg(); ++i) {
        Puiseux ci = b.coeff(i);
        if (!ci.is_exact_zero()) {
            Puiseux cit = ci.frob_power(-i);
            for (int k = 0; k < r; ++k)
                em1[std::size_t(k)] = em1[std::size_t(k)] + sv[std::size_t(k)] * cit;
        }
        if (i < b.deg()) sv = sigma_vec(sv);
    }

    // rows of E: e(m_1), then e(m_{i+1}) = sigma e(m_i)
    res.E.push_back(em1);
    for (int i = 1; i < r; ++i) res.E.push_back(sigma_vec(res.E.back()));

    // eta = Psi^{-1} E Psi with Psi^{-1} = Upsilon^{(1)} V
    TateMatrix psinv = tmat_mul(tmat_twist(td.Upsilon, 1), td.V);
    res.eta = tmat_mul(tmat_mul(psinv, res.E), td.Psi);

    // (i) eta^{(-1)} = eta, forward-twisted as eta = eta^{(1)}
    {
        TateMatrix diff = tmat_sub(res.eta, tmat_twist(res.eta, 1));
        i64 cn = 0, cd = 1;
        if (!tmat_min_cap(diff, cn, cd)) { cn = td.N; cd = 1; }
        res.reports.push_back(make_report("eta^(-1) = eta", diff, cn - 4 * cd, cd));
    }

    // (ii) rational reconstruction of every eta entry over F_q in t
    FieldPtr Fq = FqField::get(F->p, F->e, 1);
    {
        ResidualReport rep;
        rep.identity = "eta entries rational over F_q(t)";
        rep.pass = true;
        rep.infinite = true;
        for (int i = 0; i < r; ++i) {
            std::vector<RationalFn> rrow;
            for (int j = 0; j < r; ++j) {
                const TateSeries& e = res.eta[std::size_t(i)][std::size_t(j)];
                std::vector<FieldElem> seq;
                for (int m = 0; m < e.trunc(); ++m) {
                    const Puiseux& c = e.coeff(m);
                    FieldElem digit = FieldElem::zero(F);
                    if (!c.is_exact_zero() && !c.is_zero_to_prec()) {
                        if (c.val_num() < 0)
                            throw ReconstructFailed("eta coefficient not regular at t = 0 scale");
                        digit = c.coeff_at(0);
                    }
                    auto coords = F->decompose_over_q(digit.idx());
                    for (std::size_t t = 1; t < coords.size(); ++t)
                        if (coords[t]) throw ReconstructFailed("eta coefficient outside F_q");
                    seq.emplace_back(Fq, coords[0]);
                }
                auto rec = rational_reconstruct(Var::T, seq, recon_deg);
                if (!rec) throw ReconstructFailed("eta entry does not fit deg <= " +
                                                  std::to_string(recon_deg));
                rrow.push_back(*rec);
            }
            res.eta_rational.push_back(std::move(rrow));
        }
        res.reports.push_back(std::move(rep));
    }

    // (iii) E column 1 at t = theta
    {
        ResidualReport rep;
        rep.identity = "E_{i1}(theta) = 0 for i >= 2 and E_{11}(theta) in K_rho";
        rep.pass = true;
        rep.infinite = true;
        for (int i = 0; i < r; ++i)
            res.E_first_col_at_theta.push_back(res.E[std::size_t(i)][0].eval_at_theta());
        for (int i = 1; i < r; ++i) {
            const Puiseux& v = res.E_first_col_at_theta[std::size_t(i)];
            if (!v.is_exact_zero() && !v.is_zero_to_prec()) rep.pass = false;
        }
        if (kbasis.empty()) kbasis.push_back(Puiseux::from_elem(FieldElem::one(F)));
        std::vector<Puiseux> vals{res.E_first_col_at_theta[0]};
        for (const auto& k : kbasis) vals.push_back(k);
        res.k_certificate = find_relations(vals, std::max(1, recon_deg));
        bool involved = false;
        for (const auto& c : res.k_certificate)
            if (!c.coeffs[0].is_zero()) involved = true;
        if (!involved) rep.pass = false;
        rep.infinite = rep.pass;
        res.reports.push_back(std::move(rep));
    }
    return res;
}

} // namespace drinfeld
