#include "drinfeld/poly.hpp"

#include <sstream>

namespace drinfeld {

std::string var_name(Var v) { return v == Var::Theta ? "th" : "t"; }

Poly::Poly(Var v, std::vector<FieldElem> coeffs) : var_(v), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (c.field()) { fld_ = c.field(); break; }
    if (fld_) {
        for (auto& c : c_)
            if (!c.field()) c = FieldElem::zero(fld_);
    }
    trim();
}

Poly Poly::constant(Var v, const FieldElem& c) {
    Poly p(v, c.field());
    if (!c.is_zero()) p.c_ = {c};
    return p;
}

Poly Poly::monomial(Var v, const FieldElem& c, int deg) {
    Poly p(v, c.field());
    if (!c.is_zero()) {
        p.c_.assign(deg + 1, FieldElem::zero(c.field()));
        p.c_[deg] = c;
    }
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElem Poly::coeff(int i) const {
    if (i < 0 || i >= int(c_.size())) return FieldElem::zero(fld_);
    return c_[i];
}

FieldElem Poly::leading() const {
    if (c_.empty()) return FieldElem::zero(fld_);
    return c_.back();
}

namespace {
void check_var(const Poly& a, const Poly& b) {
    if (a.var() != b.var())
        throw ShapeMismatch("polynomial variable mismatch");
}
} // namespace

Poly Poly::operator+(const Poly& o) const {
    check_var(*this, o);
    auto f = fld_ && o.fld_ ? common_field(fld_, o.fld_) : (fld_ ? fld_ : o.fld_);
    std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), FieldElem::zero(f));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return Poly(var_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    check_var(*this, o);
    if (is_zero() || o.is_zero())
        return Poly::zero(var_, fld_ ? fld_ : o.fld_);
    auto f = common_field(fld_, o.fld_);
    std::vector<FieldElem> r(c_.size() + o.c_.size() - 1, FieldElem::zero(f));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (!o.c_[j].is_zero()) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(var_, std::move(r));
}

Poly Poly::operator*(const FieldElem& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    check_var(*this, d);
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    auto f = common_field(fld_ ? fld_ : d.fld_, d.fld_);
    Poly q = Poly::zero(var_, f);
    Poly r = *this;
    FieldElem lcinv = d.leading().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        FieldElem c = r.leading() * lcinv;
        q = q + Poly::monomial(var_, c, k);
        r = r - d * Poly::monomial(var_, c, k);
    }
    return {q, r};
}

FieldElem Poly::eval(const FieldElem& x) const {
    FieldElem acc = FieldElem::zero(fld_ ? fld_ : x.field());
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inv();
}

Poly Poly::frobenius_power(long m) const {
    if (m < 0) throw std::invalid_argument("frobenius_power needs m >= 0");
    if (is_zero() || m == 0) return *this;
    std::int64_t scale = 1;
    for (long i = 0; i < m; ++i) scale *= std::int64_t(fld_->q);
    std::vector<FieldElem> r(std::size_t(degree()) * scale + 1, FieldElem::zero(fld_));
    for (int i = 0; i <= degree(); ++i)
        if (!c_[i].is_zero()) r[std::size_t(i) * scale] = c_[i].pow_q(m);
    return Poly(var_, std::move(r));
}

Poly Poly::coeff_frobenius(long m) const {
    Poly r = *this;
    for (auto& c : r.c_) c = c.pow_q(m);
    return r;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << "+";
        first = false;
        std::string cs = c_[i].str();
        bool needs_paren = cs.find('+') != std::string::npos;
        if (i == 0) {
            os << cs;
        } else {
            if (!c_[i].is_one()) {
                if (needs_paren) os << "(" << cs << ")";
                else os << cs;
                os << "*";
            }
            os << var_name(var_);
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// ---- RationalFn ----

RationalFn::RationalFn(Poly num, Poly den) {
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = num;
        den_ = Poly::constant(num.var(), FieldElem::one(den.field()));
        return;
    }
    Poly g = gcd(num, den);
    num = num / g;
    den = den / g;
    FieldElem lcinv = den.leading().inv();
    num_ = num * lcinv;
    den_ = den * lcinv;
}

RationalFn RationalFn::from_poly(Poly p) {
    Var v = p.var();
    auto f = p.field();
    if (!f) f = FqField::get(2, 1, 1);
    return RationalFn(std::move(p), Poly::constant(v, FieldElem::one(f)));
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
    return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
    return RationalFn(num_ * o.num_, den_ * o.den_);
}

RationalFn RationalFn::operator/(const RationalFn& o) const {
    if (o.is_zero()) throw DivisionByZero("division by zero rational function");
    return RationalFn(num_ * o.den_, den_ * o.num_);
}

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFn RationalFn::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    return RationalFn(den_, num_);
}

bool RationalFn::operator==(const RationalFn& o) const {
    return (num_ * o.den_) == (o.num_ * den_);
}

std::vector<FieldElem> RationalFn::series(int len) const {
    FieldElem d0 = den_.coeff(0);
    if (d0.is_zero())
        throw NonUnitConstantTerm("denominator has no unit constant term");
    auto f = den_.field();
    FieldElem d0inv = d0.inv();
    std::vector<FieldElem> out(len, FieldElem::zero(f));
    for (int k = 0; k < len; ++k) {
        FieldElem acc = num_.coeff(k);
        for (int j = 1; j <= k && j <= den_.degree(); ++j)
            acc = acc - den_.coeff(j) * out[k - j];
        out[k] = acc * d0inv;
    }
    return out;
}

std::string RationalFn::str() const {
    if (den_.degree() == 0 && den_.coeff(0).is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---- SparsePoly ----

SparsePoly SparsePoly::term(const FieldElem& c, std::int64_t exp) {
    SparsePoly p(c.field());
    if (!c.is_zero()) p.t_[exp] = c;
    return p;
}

void SparsePoly::add_term(std::int64_t exp, const FieldElem& c) {
    if (c.is_zero()) return;
    if (!fld_) fld_ = c.field();
    auto it = t_.find(exp);
    if (it == t_.end()) {
        t_[exp] = c;
    } else {
        FieldElem s = it->second + c;
        if (s.is_zero()) t_.erase(it);
        else it->second = s;
    }
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
    SparsePoly r = *this;
    if (!r.fld_) r.fld_ = o.fld_;
    for (const auto& [e, c] : o.t_) r.add_term(e, c);
    return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
    SparsePoly r = *this;
    if (!r.fld_) r.fld_ = o.fld_;
    for (const auto& [e, c] : o.t_) r.add_term(e, -c);
    return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
    SparsePoly r(fld_ ? fld_ : o.fld_);
    for (const auto& [e1, c1] : t_)
        for (const auto& [e2, c2] : o.t_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
    if (t_.size() != o.t_.size()) return false;
    auto it = t_.begin();
    auto jt = o.t_.begin();
    for (; it != t_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second != jt->second) return false;
    return true;
}

SparsePoly SparsePoly::frobenius_power(long m) const {
    if (m < 0) throw std::invalid_argument("frobenius_power needs m >= 0");
    if (m == 0) return *this;
    std::int64_t scale = 1;
    for (long i = 0; i < m; ++i) scale *= std::int64_t(fld_->q);
    SparsePoly r(fld_);
    for (const auto& [e, c] : t_) r.t_[e * scale] = c.pow_q(m);
    return r;
}

} // namespace drinfeld
