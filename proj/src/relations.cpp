#include "drinfeld/relations.hpp"

#include <numeric>

#include "drinfeld/errors.hpp"
#include "drinfeld/linalg.hpp"

namespace drinfeld {

namespace {

using i64 = std::int64_t;

constexpr i64 kBig = i64(1) << 59;  // "effectively infinite" grid index

bool effectively_exact(const Puiseux& x) { return x.exact(); }

} // namespace

std::vector<RelationCertificate> find_relations(const std::vector<Puiseux>& values, int D) {
    const int m = int(values.size());
    if (m == 0 || D < 0) return {};
    FieldPtr F = values[0].field();
    int E = values[0].ram();
    for (const auto& v : values) {
        F = common_field(F, v.field());
        E = int(std::lcm(E, v.ram()));
    }
    FieldPtr Fq = FqField::get(F->p, F->e, 1);
    const int d = F->d;

    // items w_{ij} = theta^j * v_i on the common grid
    std::vector<Puiseux> items;
    items.reserve(std::size_t(m) * std::size_t(D + 1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= D; ++j)
            items.push_back((values[std::size_t(i)] * Puiseux::theta_power(values[std::size_t(i)].field(), j)).lift(E, F));

    // digit window [k_min, cutoff) on the 1/E grid
    i64 k_min = kBig, cap_min = kBig;
    for (const auto& w : items) {
        if (w.is_exact_zero()) continue;
        i64 v = w.val_or_cap_num();
        if (v < kBig) k_min = std::min(k_min, v);
        if (!effectively_exact(w)) cap_min = std::min(cap_min, w.cap_num());
    }
    if (k_min >= kBig) {
        // every value is exactly zero: each unit vector is a relation
        std::vector<RelationCertificate> certs;
        for (int i = 0; i < m; ++i) {
            RelationCertificate c;
            c.coeffs.assign(std::size_t(m), Poly::zero(Var::Theta, Fq));
            c.coeffs[std::size_t(i)] = Poly::constant(Var::Theta, FieldElem::one(Fq));
            c.residual_infinite = true;
            certs.push_back(std::move(c));
        }
        return certs;
    }

    const int unknowns = m * (D + 1);
    i64 cutoff;
    if (cap_min >= kBig) {
        // all inputs exact: cover the whole support so that vanishing in the
        // window is the same as vanishing exactly
        i64 support_end = k_min + 1;
        for (const auto& w : items)
            if (!w.is_exact_zero()) support_end = std::max(support_end, w.support_end_num());
        cutoff = support_end;
    } else {
        cutoff = cap_min - 4 * i64(E);  // 4-slot safety margin below the joint cap
    }
    i64 rows_idx = cutoff - k_min;
    // exact inputs need no safety margin: the window covers the full support
    if (rows_idx <= 0 || (cap_min < kBig && rows_idx * d < i64(unknowns) + 4))
        throw InsufficientPrecision("precision window too short for the requested relation degree");

    // F_q digit grid: one row per (grid index, F_q-component of F_{q^d})
    Matrix<FieldElem> A;
    A.reserve(std::size_t(rows_idx) * std::size_t(d));
    for (i64 k = k_min; k < cutoff; ++k) {
        std::vector<std::vector<std::uint64_t>> comps;
        comps.reserve(items.size());
        for (const auto& w : items) {
            FieldElem c = w.is_exact_zero() ? FieldElem::zero(F) : w.coeff_at(k);
            comps.push_back(F->decompose_over_q(c.idx()));
        }
        for (int t = 0; t < d; ++t) {
            std::vector<FieldElem> row;
            row.reserve(items.size());
            for (const auto& co : comps) row.emplace_back(Fq, co[std::size_t(t)]);
            A.push_back(std::move(row));
        }
    }

    auto null_basis = nullspace(A, FieldElem::zero(Fq), FieldElem::one(Fq));

    std::vector<RelationCertificate> certs;
    for (const auto& sol : null_basis) {
        RelationCertificate cert;
        cert.cutoff_num = cutoff;
        cert.cutoff_den = E;
        for (int i = 0; i < m; ++i) {
            std::vector<FieldElem> pc(sol.begin() + i * (D + 1), sol.begin() + (i + 1) * (D + 1));
            cert.coeffs.emplace_back(Var::Theta, std::move(pc));
        }
        // independent re-verification by direct summation over the originals
        Puiseux S = Puiseux::exact_zero(F);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j <= D; ++j) {
                FieldElem c = cert.coeffs[std::size_t(i)].coeff(j);
                if (c.is_zero()) continue;
                S = S + values[std::size_t(i)] * Puiseux::theta_power(values[std::size_t(i)].field(), j) * c.lift_to(F);
            }
        if (S.is_exact_zero() || S.is_zero_to_prec()) {
            cert.residual_infinite = true;
            if (S.is_zero_to_prec() && !S.is_exact_zero()) {
                cert.residual_num = S.cap_num();
                cert.residual_den = S.ram();
            }
        } else {
            cert.residual_num = S.val_num();
            cert.residual_den = S.ram();
            // exact inputs give an exact residual: nonzero means no relation
            if (cap_min >= kBig) continue;
            // must meet the detection cutoff, else it was truncation noise
            if (__int128(cert.residual_num) * E < __int128(cutoff) * cert.residual_den) continue;
        }
        certs.push_back(std::move(cert));
    }
    return certs;
}

int kspan_dim(const std::vector<Puiseux>& values, int D) {
    return int(values.size()) - int(find_relations(values, D).size());
}

} // namespace drinfeld
