#include "drinfeld/newton.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "drinfeld/poly.hpp"

namespace drinfeld {

namespace {

using i64 = std::int64_t;

struct Frac {
    i64 num = 0;
    i64 den = 1;  // > 0
    Frac() = default;
    Frac(i64 n, i64 d) {
        if (d < 0) { n = -n; d = -d; }
        i64 g = std::gcd(std::abs(n), d);
        if (g == 0) g = 1;
        num = n / g;
        den = d / g;
    }
    bool operator>(const Frac& o) const {
        return __int128(num) * o.den > __int128(o.num) * den;
    }
};

template <class Fn>
void for_each_elem(const FieldPtr& f, Fn&& fn) {
    std::vector<int> digits(std::size_t(f->n), 0);
    while (true) {
        fn(FieldElem(f, f->pack(digits)));
        int i = 0;
        while (i < f->n && ++digits[std::size_t(i)] == f->p) {
            digits[std::size_t(i)] = 0;
            ++i;
        }
        if (i == f->n) break;
    }
}

/// Roots of R over tame extensions of its coefficient field, with
/// multiplicities, found by exhaustive search in ascending extensions.
std::vector<std::pair<FieldElem, int>> residue_roots(const Poly& R, int e_prime,
                                                     const NewtonOptions& opts) {
    const FieldPtr& F = R.field();
    std::vector<std::pair<FieldElem, int>> out;
    int found = 0;
    for (int m = 1;; ++m) {
        int d_prime = F->d * m;
        if (d_prime * e_prime > opts.max_de) break;
        double bits = double(F->e) * d_prime * std::log2(double(F->p));
        if (bits > std::log2(double(opts.max_field_size))) break;
        auto Fm = FqField::get(F->p, F->e, d_prime);
        Poly Rm(R.var(), Fm);
        {
            std::vector<FieldElem> cs;
            for (int i = 0; i <= R.degree(); ++i) cs.push_back(R.coeff(i).lift_to(Fm));
            Rm = Poly(R.var(), cs);
        }
        for_each_elem(Fm, [&](const FieldElem& y) {
            if (y.is_zero()) return;
            // skip elements of proper subfields already scanned
            for (int mp = 1; mp < m; ++mp)
                if (m % mp == 0 && y.pow_q(F->d * mp) == y) return;
            if (!Rm.eval(y).is_zero()) return;
            int mult = 0;
            Poly lin(R.var(), {-y, FieldElem::one(Fm)});
            Poly rest = Rm;
            while (true) {
                auto [q, r] = rest.divmod(lin);
                if (!r.is_zero()) break;
                ++mult;
                rest = q;
            }
            out.emplace_back(y, mult);
            found += mult;
        });
        if (found == R.degree()) break;
    }
    if (found < R.degree())
        throw ResidueFieldTooLarge("residue roots beyond the configured extension cap");
    return out;
}

Puiseux eval_poly(const std::vector<Puiseux>& a, const Puiseux& x) {
    Puiseux acc = Puiseux::exact_zero(x.field());
    for (int i = int(a.size()) - 1; i >= 0; --i) acc = acc * x + a[std::size_t(i)];
    return acc;
}

std::vector<Puiseux> derivative(const std::vector<Puiseux>& a, const FieldPtr& F) {
    std::vector<Puiseux> d;
    for (std::size_t i = 1; i < a.size(); ++i)
        d.push_back(a[i] * FieldElem::from_int(F, long(i)));
    return d;
}

Puiseux refine_root(const std::vector<Puiseux>& a, Puiseux x, const FieldPtr& F,
                    int target_slots) {
    auto ap = derivative(a, F);
    auto ceil_div = [](i64 n, i64 d) { return n >= 0 ? (n + d - 1) / d : -((-n) / d); };
    std::optional<Frac> last_val;
    for (int iter = 0; iter < 128; ++iter) {
        Puiseux fx = eval_poly(a, x);
        if (fx.is_zero_to_prec() || fx.is_exact_zero()) break;
        Frac v(fx.val_num(), fx.ram());
        if (last_val && !(v > *last_val)) break;  // no further progress
        last_val = v;
        Puiseux fpx = eval_poly(ap, x);
        if (fpx.is_zero_to_prec() || fpx.is_exact_zero()) break;
        Puiseux step = fx / fpx;
        if (step.is_zero_to_prec() || step.is_exact_zero()) break;
        // stop once the correction falls target_slots whole-theta slots below
        // the root's own valuation; digits below the correction are final
        __int128 sv = __int128(step.val_num()) * x.ram();
        __int128 xv = __int128(x.val_num()) * step.ram();
        bool done = sv >= xv + __int128(target_slots) * x.ram() * step.ram();
        i64 step_num = step.val_num();
        i64 step_den = step.ram();
        x = x - step;
        if (done) {
            x = x.truncate(ceil_div(step_num * x.ram(), step_den));
            break;
        }
    }
    return x;
}

void collect(std::vector<Puiseux> a, const NewtonOptions& opts, int depth,
             std::optional<Frac> min_val, std::vector<NewtonRoot>& out, int& wild) {
    while (!a.empty() && a.back().is_exact_zero()) a.pop_back();
    if (!a.empty() && a.back().is_zero_to_prec())
        throw InsufficientPrecision("leading coefficient indistinguishable from zero");
    if (a.size() <= 1) return;
    // common grid and field
    int E = 1;
    FieldPtr F;
    for (auto& c : a) {
        if (!c.field()) throw TowerMismatch("coefficient without a field");
        E = int(std::lcm(i64(E), i64(c.ram())));
        F = F ? common_field(F, c.field()) : c.field();
    }
    for (auto& c : a) c = c.lift(E, F);

    int n = int(a.size()) - 1;
    int i0 = 0;
    while (i0 <= n && a[std::size_t(i0)].is_zero_to_prec()) ++i0;
    if (i0 > 0) {
        bool all_exact = true;
        i64 min_cap = 0;
        bool have_cap = false;
        for (int i = 0; i < i0; ++i) {
            if (!a[std::size_t(i)].is_exact_zero()) {
                all_exact = false;
                i64 c = a[std::size_t(i)].cap_num();
                if (!have_cap || c < min_cap) { min_cap = c; have_cap = true; }
            }
        }
        // val(0) = +inf exceeds any threshold, so the zero root always passes
        if (all_exact)
            out.push_back({Puiseux::exact_zero(F), i0});
        else
            out.push_back({Puiseux::zero_to_prec(F, E, min_cap), i0});
    }
    if (i0 >= n) return;

    // Newton polygon: lower hull of (i, E*val(a_i)) for known-nonzero a_i,
    // ordinates in 1/E units
    std::vector<std::pair<i64, i64>> pts;  // (i, v)
    for (int i = i0; i <= n; ++i)
        if (!a[std::size_t(i)].is_zero_to_prec())
            pts.emplace_back(i, a[std::size_t(i)].val_num());
    std::vector<std::pair<i64, i64>> hull;
    for (auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& p1 = hull[hull.size() - 2];
            auto& p2 = hull[hull.size() - 1];
            // drop p2 if it lies on or above segment p1->pt
            __int128 lhs = __int128(p2.second - p1.second) * (pt.first - p1.first);
            __int128 rhs = __int128(pt.second - p1.second) * (p2.first - p1.first);
            if (lhs >= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    // precision sanity: no unknown coefficient may dip below the hull
    for (int i = i0; i <= n; ++i) {
        if (!a[std::size_t(i)].is_zero_to_prec() || a[std::size_t(i)].is_exact_zero()) continue;
        i64 cap = a[std::size_t(i)].cap_num();
        for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
            auto [x1, v1] = hull[s];
            auto [x2, v2] = hull[s + 1];
            if (i < x1 || i > x2) continue;
            // hull ordinate at i: v1 + (v2-v1)*(i-x1)/(x2-x1)
            __int128 lhs = __int128(cap) * (x2 - x1);
            __int128 rhs = __int128(v1) * (x2 - x1) + __int128(v2 - v1) * (i - x1);
            if (lhs < rhs)
                throw InsufficientPrecision("coefficient cap dips below the Newton polygon");
        }
    }

    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        auto [i1, v1] = hull[s];
        auto [i2, v2] = hull[s + 1];
        Frac mu(v1 - v2, (i2 - i1) * E);  // root valuation on this edge
        if (min_val && !(mu > *min_val)) continue;
        if (mu.den % F->p == 0) {
            if (!opts.skip_wild)
                throw WildRamification("Newton polygon slope with denominator divisible by p");
            wild += int(i2 - i1);
            continue;
        }
        int e_prime = int(std::lcm(i64(E), mu.den));
        // residue polynomial over F
        std::vector<FieldElem> rc(std::size_t(i2 - i1) + 1, FieldElem::zero(F));
        for (i64 i = i1; i <= i2; ++i) {
            // ordinate of the edge at abscissa i, in 1/E units
            i64 dnum = (v2 - v1) * (i - i1);
            if (dnum % (i2 - i1) != 0) continue;  // off the 1/E grid: coefficient 0
            i64 Li = v1 + dnum / (i2 - i1);
            const Puiseux& ai = a[std::size_t(i)];
            if (ai.is_zero_to_prec()) continue;  // cap checked above
            if (!ai.exact() && Li >= ai.cap_num())
                throw InsufficientPrecision("edge coefficient beyond precision cap");
            rc[std::size_t(i - i1)] = ai.coeff_at(Li);
        }
        Poly R(Var::T, rc);
        auto yroots = residue_roots(R, e_prime, opts);
        for (auto& [y0, m0] : yroots) {
            Puiseux x0 = Puiseux::monomial(y0, mu.num * (e_prime / int(mu.den)), e_prime);
            if (m0 == 1) {
                out.push_back({refine_root(a, x0, F, opts.target_slots), 1});
            } else if (depth >= 48) {
                Puiseux fuzz = Puiseux::zero_to_prec(
                    y0.field(), e_prime, mu.num * (e_prime / int(mu.den)) + 1);
                out.push_back({x0 + fuzz, m0});
            } else {
                // shift x -> x0 + x and recurse on roots of higher valuation
                std::vector<Puiseux> b = a;
                for (int j = 0; j < n; ++j)
                    for (int i = n - 1; i >= j; --i)
                        b[std::size_t(i)] = b[std::size_t(i)] + b[std::size_t(i) + 1] * x0;
                std::vector<NewtonRoot> sub;
                collect(b, opts, depth + 1, mu, sub, wild);
                for (auto& rt : sub) out.push_back({x0 + rt.value, rt.multiplicity});
            }
        }
    }
}

} // namespace

NewtonResult newton_roots(const std::vector<Puiseux>& coeffs, const NewtonOptions& opts) {
    int saved = Puiseux::default_slots;
    Puiseux::default_slots = opts.target_slots;
    NewtonResult res;
    try {
        collect(coeffs, opts, 0, std::nullopt, res.roots, res.wild_deficit);
    } catch (...) {
        Puiseux::default_slots = saved;
        throw;
    }
    Puiseux::default_slots = saved;
    std::sort(res.roots.begin(), res.roots.end(),
              [](const NewtonRoot& x, const NewtonRoot& y) {
                  return branch_less(x.value, y.value);
              });
    return res;
}

} // namespace drinfeld
