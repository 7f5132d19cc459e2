#include "drinfeld/reconstruct.hpp"

namespace drinfeld {

std::optional<RationalFn> rational_reconstruct(Var v,
                                               const std::vector<FieldElem>& seq,
                                               int max_deg) {
    int len = int(seq.size());
    if (len < 2 * max_deg + 2)
        throw InsufficientData("rational_reconstruct needs >= 2*max_deg + 2 coefficients");
    FieldPtr f;
    for (const auto& c : seq)
        if (c.field()) { f = c.field(); break; }
    if (!f) return std::nullopt;

    Poly s(v, seq);
    if (s.is_zero())
        return RationalFn::zero(v, f);

    // Extended Euclid on (x^len, s): maintain r = a*x^len + b*s and stop when
    // deg r drops below len - max_deg - 1; then s == r/b mod x^len.
    Poly r0 = Poly::monomial(v, FieldElem::one(f), len);
    Poly r1 = s;
    Poly b0 = Poly::zero(v, f);
    Poly b1 = Poly::constant(v, FieldElem::one(f));
    while (r1.degree() >= len - max_deg - 1 && !r1.is_zero()) {
        auto [q, rem] = r0.divmod(r1);
        Poly b2 = b0 - q * b1;
        r0 = std::move(r1);
        r1 = std::move(rem);
        b0 = std::move(b1);
        b1 = std::move(b2);
    }
    if (b1.is_zero() || b1.coeff(0).is_zero()) return std::nullopt;
    RationalFn cand(r1, b1);
    if (cand.num().degree() > max_deg || cand.den().degree() > max_deg)
        return std::nullopt;
    // verify against the full sequence
    auto back = cand.series(len);
    for (int i = 0; i < len; ++i) {
        FieldElem want = seq[i].field() ? seq[i] : FieldElem::zero(f);
        if (back[i] != want) return std::nullopt;
    }
    return cand;
}

} // namespace drinfeld
