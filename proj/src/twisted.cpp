#include "drinfeld/twisted.hpp"

#include <sstream>

#include "drinfeld/errors.hpp"

namespace drinfeld {

TwistedPoly::TwistedPoly(FieldPtr fld, std::vector<Puiseux> coeffs)
    : fld_(std::move(fld)), c_(std::move(coeffs)) {
    for (auto& c : c_)
        if (!c.field()) c = Puiseux::exact_zero(fld_);
    trim();
}

void TwistedPoly::trim() {
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

TwistedPoly TwistedPoly::one(FieldPtr fld) {
    Puiseux u = Puiseux::from_elem(FieldElem::one(fld));
    return TwistedPoly(std::move(fld), {u});
}

TwistedPoly TwistedPoly::constant(const Puiseux& c) {
    return TwistedPoly(c.field(), {c});
}

TwistedPoly TwistedPoly::tau(FieldPtr fld, int i) {
    std::vector<Puiseux> c(std::size_t(i) + 1, Puiseux::exact_zero(fld));
    c.back() = Puiseux::from_elem(FieldElem::one(fld));
    return TwistedPoly(std::move(fld), std::move(c));
}

Puiseux TwistedPoly::coeff(int i) const {
    if (i < 0 || i >= int(c_.size())) return Puiseux::exact_zero(fld_);
    return c_[std::size_t(i)];
}

TwistedPoly TwistedPoly::operator+(const TwistedPoly& o) const {
    FieldPtr F = fld_ ? fld_ : o.fld_;
    std::vector<Puiseux> c(std::size_t(std::max(deg(), o.deg()) + 1), Puiseux::exact_zero(F));
    for (int i = 0; i < int(c.size()); ++i) c[std::size_t(i)] = coeff(i) + o.coeff(i);
    return TwistedPoly(F, std::move(c));
}

TwistedPoly TwistedPoly::operator-() const {
    TwistedPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

TwistedPoly TwistedPoly::operator-(const TwistedPoly& o) const { return *this + (-o); }

TwistedPoly TwistedPoly::operator*(const TwistedPoly& o) const {
    FieldPtr F = fld_ ? fld_ : o.fld_;
    if (c_.empty() || o.c_.empty()) return zero(F);
    std::vector<Puiseux> c(std::size_t(deg() + o.deg() + 1), Puiseux::exact_zero(F));
    for (int i = 0; i <= deg(); ++i) {
        const Puiseux& a = c_[std::size_t(i)];
        if (a.is_exact_zero()) continue;
        for (int j = 0; j <= o.deg(); ++j) {
            const Puiseux& b = o.c_[std::size_t(j)];
            if (b.is_exact_zero()) continue;
            // (a tau^i)(b tau^j) = a b^{q^i} tau^{i+j}
            c[std::size_t(i + j)] = c[std::size_t(i + j)] + a * b.frob_power(i);
        }
    }
    return TwistedPoly(F, std::move(c));
}

TwistedPoly TwistedPoly::operator*(const Puiseux& s) const {
    TwistedPoly r = *this;
    for (auto& c : r.c_) c = s * c;
    r.trim();
    return r;
}

TwistedPoly TwistedPoly::pow(int n) const {
    if (n < 0) throw ShapeMismatch("negative twisted-polynomial power");
    TwistedPoly r = one(fld_);
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
}

Puiseux TwistedPoly::apply(const Puiseux& z) const {
    Puiseux acc = Puiseux::exact_zero(fld_);
    for (int i = 0; i <= deg(); ++i) {
        if (c_[std::size_t(i)].is_exact_zero()) continue;
        acc = acc + c_[std::size_t(i)] * z.frob_power(i);
    }
    return acc;
}

bool TwistedPoly::eq_to_prec(const TwistedPoly& o) const {
    int d = std::max(deg(), o.deg());
    for (int i = 0; i <= d; ++i)
        if (!coeff(i).eq_to_prec(o.coeff(i))) return false;
    return true;
}

std::string TwistedPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= deg(); ++i) {
        if (c_[std::size_t(i)].is_exact_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[std::size_t(i)].str() << ")";
        if (i == 1) os << "*tau";
        else if (i > 1) os << "*tau^" << i;
    }
    if (first) return "0";
    return os.str();
}

} // namespace drinfeld
