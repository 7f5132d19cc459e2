#include "drinfeld/puiseux.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace drinfeld {

int Puiseux::default_slots = 64;

namespace {
constexpr std::int64_t kInf = std::int64_t(1) << 60;

std::int64_t cap_add(std::int64_t cap, std::int64_t shift) {
    return cap >= kInf ? kInf : cap + shift;
}
} // namespace

Puiseux Puiseux::exact_zero(FieldPtr f) {
    Puiseux x;
    x.fld_ = std::move(f);
    x.e_ = 1;
    x.lead_ = 0;
    x.cap_ = kInf;
    x.exact_ = true;
    return x;
}

Puiseux Puiseux::zero_to_prec(FieldPtr f, int e, i64 cap) {
    Puiseux x;
    x.fld_ = std::move(f);
    x.e_ = e;
    x.lead_ = cap;
    x.cap_ = cap;
    x.exact_ = false;
    x.normalize();
    return x;
}

Puiseux Puiseux::from_elem(const FieldElem& c) { return monomial(c, 0, 1); }

Puiseux Puiseux::monomial(const FieldElem& c, i64 val_num, int val_den) {
    if (val_den <= 0) throw ShapeMismatch("ramification index must be positive");
    if (c.is_zero()) return exact_zero(c.field());
    Puiseux x;
    x.fld_ = c.field();
    x.e_ = val_den;
    x.lead_ = val_num;
    x.c_ = {c};
    x.cap_ = kInf;
    x.exact_ = true;
    x.normalize();
    return x;
}

Puiseux Puiseux::theta(FieldPtr f) {
    return monomial(FieldElem::one(std::move(f)), -1, 1);
}

Puiseux Puiseux::theta_power(FieldPtr f, i64 a, int e) {
    return monomial(FieldElem::one(std::move(f)), -a, e);
}

void Puiseux::normalize(bool reduce_grid) {
    if (exact_) cap_ = kInf;
    if (!exact_) {
        if (lead_ >= cap_) c_.clear();
        else if (lead_ + i64(c_.size()) > cap_) c_.resize(std::size_t(cap_ - lead_), FieldElem::zero(fld_));
    }
    std::size_t s = 0;
    while (s < c_.size() && c_[s].is_zero()) ++s;
    if (s) {
        c_.erase(c_.begin(), c_.begin() + s);
        lead_ += i64(s);
    }
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) {
        lead_ = exact_ ? 0 : cap_;
        // exact zero canonicalizes to the trivial grid, but never when the
        // caller asked to keep the grid (unify relies on the shared lcm grid)
        if (exact_ && reduce_grid) e_ = 1;
    }
    if (!reduce_grid) return;
    // reduce the grid when every known datum sits on a coarser subgrid
    i64 g = e_;
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) g = std::gcd(g, std::abs(lead_ + i64(k)));
    if (!exact_) g = std::gcd(g, std::abs(cap_));
    else if (!c_.empty()) g = std::gcd(g, std::abs(lead_));
    if (g > 1) {
        std::vector<FieldElem> nc;
        if (!c_.empty()) {
            nc.reserve(c_.size() / std::size_t(g) + 1);
            for (std::size_t k = 0; k < c_.size(); k += std::size_t(g))
                nc.push_back(c_[k]);
        }
        c_ = std::move(nc);
        lead_ /= g;
        if (!exact_) cap_ /= g;
        e_ = int(e_ / g);
        if (e_ < 1) e_ = 1;
    }
}

Puiseux Puiseux::lift(int new_e, const FieldPtr& new_fld) const {
    if (new_e % e_ != 0) throw ShapeMismatch("grid refinement must be an integer multiple");
    i64 m = new_e / e_;
    Puiseux r;
    r.fld_ = new_fld;
    r.e_ = new_e;
    r.exact_ = exact_;
    r.cap_ = exact_ ? kInf : cap_ * m;
    r.lead_ = lead_ * m;
    if (!c_.empty()) {
        r.c_.assign(std::size_t((i64(c_.size()) - 1) * m + 1), FieldElem::zero(new_fld));
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) r.c_[k * std::size_t(m)] = c_[k].lift_to(new_fld);
    } else if (!exact_) {
        r.lead_ = r.cap_;
    }
    // keep the requested grid: callers rely on all operands sharing it
    r.normalize(false);
    return r;
}

void Puiseux::unify(Puiseux& a, Puiseux& b) {
    if (!a.fld_ || !b.fld_) throw TowerMismatch("value without a field");
    int E = int(std::lcm(i64(a.e_), i64(b.e_)));
    FieldPtr F = common_field(a.fld_, b.fld_);
    if (a.e_ != E || a.fld_.get() != F.get()) a = a.lift(E, F);
    if (b.e_ != E || b.fld_.get() != F.get()) b = b.lift(E, F);
}

Puiseux Puiseux::operator+(const Puiseux& o) const {
    Puiseux a = *this, b = o;
    unify(a, b);
    i64 cap = std::min(a.cap_, b.cap_);
    i64 start = kInf, end = -kInf;
    if (!a.c_.empty()) {
        start = std::min(start, a.lead_);
        end = std::max(end, a.lead_ + i64(a.c_.size()));
    }
    if (!b.c_.empty()) {
        start = std::min(start, b.lead_);
        end = std::max(end, b.lead_ + i64(b.c_.size()));
    }
    Puiseux r;
    r.fld_ = a.fld_;
    r.e_ = a.e_;
    r.cap_ = cap;
    r.exact_ = cap >= kInf;
    if (start >= kInf || start >= cap) {
        r.lead_ = r.exact_ ? 0 : cap;
        r.normalize();
        return r;
    }
    end = std::min(end, cap);
    r.lead_ = start;
    r.c_.assign(std::size_t(end - start), FieldElem::zero(a.fld_));
    for (std::size_t k = 0; k < a.c_.size(); ++k) {
        i64 idx = a.lead_ + i64(k) - start;
        if (idx < i64(r.c_.size())) r.c_[std::size_t(idx)] = r.c_[std::size_t(idx)] + a.c_[k];
    }
    for (std::size_t k = 0; k < b.c_.size(); ++k) {
        i64 idx = b.lead_ + i64(k) - start;
        if (idx < i64(r.c_.size())) r.c_[std::size_t(idx)] = r.c_[std::size_t(idx)] + b.c_[k];
    }
    r.normalize();
    return r;
}

Puiseux Puiseux::operator-() const {
    Puiseux r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Puiseux Puiseux::operator-(const Puiseux& o) const { return *this + (-o); }

Puiseux Puiseux::operator*(const Puiseux& o) const {
    Puiseux a = *this, b = o;
    unify(a, b);
    if (a.is_exact_zero() || b.is_exact_zero()) return exact_zero(a.fld_);
    i64 va = a.c_.empty() ? a.cap_ : a.lead_;
    i64 vb = b.c_.empty() ? b.cap_ : b.lead_;
    i64 cap = std::min(cap_add(a.cap_, vb), cap_add(b.cap_, va));
    if (a.c_.empty() || b.c_.empty()) return zero_to_prec(a.fld_, a.e_, cap);
    Puiseux r;
    r.fld_ = a.fld_;
    r.e_ = a.e_;
    r.cap_ = cap;
    r.exact_ = cap >= kInf;
    r.lead_ = a.lead_ + b.lead_;
    i64 full = i64(a.c_.size()) + i64(b.c_.size()) - 1;
    i64 w = r.exact_ ? full : std::min(full, cap - r.lead_);
    if (w <= 0) return zero_to_prec(a.fld_, a.e_, cap);
    r.c_.assign(std::size_t(w), FieldElem::zero(a.fld_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (i + j >= std::size_t(w)) break;
            if (!b.c_[j].is_zero()) r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
    }
    r.normalize();
    return r;
}

Puiseux Puiseux::operator*(const FieldElem& s) const {
    if (s.is_zero()) return exact_zero(common_field(fld_, s.field()));
    Puiseux r = *this;
    r.fld_ = common_field(fld_, s.field());
    for (auto& x : r.c_) x = x * s;
    r.normalize();
    return r;
}

Puiseux Puiseux::inv() const {
    if (c_.empty()) {
        if (exact_) throw DivisionByZero("inverse of exact zero");
        throw ZeroToPrec("inverse of a value indistinguishable from zero");
    }
    FieldElem c0inv = c_[0].inv();
    if (c_.size() == 1) {
        Puiseux r = monomial(c0inv, -lead_ * (exact_ ? 1 : 1), e_);
        if (!exact_) {
            // rebuild on the original grid with the propagated cap
            r = r.lift(int(std::lcm(i64(r.e_), i64(e_))), fld_);
            r.exact_ = false;
            r.cap_ = (cap_ - 2 * lead_) * (r.e_ / e_);
            r.normalize();
        }
        return r;
    }
    i64 w = exact_ ? i64(default_slots) * e_ : cap_ - lead_;
    if (w <= 0) throw ZeroToPrec("no known width to invert");
    std::vector<FieldElem> v(std::size_t(w), FieldElem::zero(fld_));
    v[0] = FieldElem::one(fld_);
    for (i64 k = 1; k < w; ++k) {
        FieldElem acc = FieldElem::zero(fld_);
        i64 jmax = std::min<i64>(k, i64(c_.size()) - 1);
        for (i64 j = 1; j <= jmax; ++j)
            if (!c_[std::size_t(j)].is_zero())
                acc = acc - (c_[std::size_t(j)] * c0inv) * v[std::size_t(k - j)];
        v[std::size_t(k)] = acc;
    }
    Puiseux r;
    r.fld_ = fld_;
    r.e_ = e_;
    r.lead_ = -lead_;
    r.exact_ = false;
    r.cap_ = -lead_ + w;
    r.c_.resize(std::size_t(w));
    for (i64 k = 0; k < w; ++k) r.c_[std::size_t(k)] = c0inv * v[std::size_t(k)];
    r.normalize();
    return r;
}

Puiseux Puiseux::pow_int(long n) const {
    if (n < 0) return inv().pow_int(-n);
    Puiseux acc = from_elem(FieldElem::one(fld_));
    Puiseux base = *this;
    unsigned long k = (unsigned long)n;
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Puiseux Puiseux::frob_power(long n) const {
    if (n == 0 || is_exact_zero()) return *this;
    if (n > 0) {
        i64 scale = 1;
        for (long i = 0; i < n; ++i) scale *= i64(fld_->q);
        Puiseux r;
        r.fld_ = fld_;
        r.e_ = e_;
        r.exact_ = exact_;
        r.cap_ = exact_ ? kInf : cap_ * scale;
        r.lead_ = lead_ * scale;
        if (!c_.empty()) {
            r.c_.assign(std::size_t((i64(c_.size()) - 1) * scale + 1), FieldElem::zero(fld_));
            for (std::size_t k = 0; k < c_.size(); ++k)
                if (!c_[k].is_zero()) r.c_[k * std::size_t(scale)] = c_[k].pow_q(n);
        } else if (!exact_) {
            r.lead_ = r.cap_;
        }
        r.normalize();
        return r;
    }
    long m = -n;
    i64 scale = 1;
    for (long i = 0; i < m; ++i) scale *= i64(fld_->q);
    Puiseux r;
    r.fld_ = fld_;
    r.e_ = e_;
    r.exact_ = exact_;
    if (!exact_) {
        r.cap_ = cap_ >= 0 ? (cap_ + scale - 1) / scale : cap_ / scale;
    } else {
        r.cap_ = kInf;
    }
    if (!c_.empty()) {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero() && (lead_ + i64(k)) % scale != 0)
                throw WildRamification("q-th root leaves the tame Puiseux field");
        r.lead_ = lead_ / scale;
        r.c_.assign(std::size_t((i64(c_.size()) - 1) / scale + 1), FieldElem::zero(fld_));
        for (std::size_t k = 0; k < c_.size(); k += std::size_t(scale))
            r.c_[k / std::size_t(scale)] = c_[k].pow_q(n);
    } else {
        r.lead_ = r.cap_;
    }
    r.normalize();
    return r;
}

Puiseux Puiseux::truncate(i64 new_cap) const {
    Puiseux r = *this;
    if (r.is_exact_zero()) {
        r.exact_ = false;
        r.e_ = e_;
        r.cap_ = new_cap;
        r.lead_ = new_cap;
        return r;
    }
    if (!r.exact_ && new_cap >= r.cap_) return r;
    r.exact_ = false;
    r.cap_ = new_cap;
    r.normalize();
    return r;
}

Puiseux::i64 Puiseux::val_num() const {
    if (c_.empty()) throw ZeroToPrec("valuation of a value with no known digits");
    return lead_;
}

Puiseux::i64 Puiseux::val_or_cap_num() const { return c_.empty() ? cap_ : lead_; }

bool Puiseux::has_val(i64 num, i64 den) const {
    return !c_.empty() && lead_ * den == num * i64(e_);
}

FieldElem Puiseux::leading() const {
    if (c_.empty()) throw ZeroToPrec("leading coefficient of a zero-to-precision value");
    return c_[0];
}

FieldElem Puiseux::coeff_at(i64 k) const {
    if (!exact_ && k >= cap_)
        throw InsufficientPrecision("digit beyond the precision cap");
    if (k < lead_ || k >= lead_ + i64(c_.size())) return FieldElem::zero(fld_);
    return c_[std::size_t(k - lead_)];
}

namespace {
std::string exp_str(std::int64_t k, int e) {
    // exponent of theta is -k/e
    std::int64_t num = -k;
    std::int64_t g = std::gcd(std::abs(num), std::int64_t(e));
    std::int64_t n = num / g, d = e / g;
    std::ostringstream os;
    if (d == 1) {
        if (n < 0) os << "(" << n << ")";
        else os << n;
    } else {
        os << "(" << n << "/" << d << ")";
    }
    return os.str();
}
} // namespace

std::string Puiseux::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        i64 idx = lead_ + i64(k);
        std::string cs = c_[k].str();
        bool paren = cs.find('+') != std::string::npos;
        if (idx == 0) {
            os << cs;
        } else {
            if (paren) os << "(" << cs << ")";
            else os << cs;
            os << "*th^" << exp_str(idx, e_);
        }
    }
    if (first && exact_) return "0";
    if (!exact_) {
        if (!first) os << " + ";
        os << "O(th^" << exp_str(cap_, e_) << ")";
    }
    return os.str();
}

bool branch_less(const Puiseux& a, const Puiseux& b) {
    bool az = a.is_zero_to_prec(), bz = b.is_zero_to_prec();
    if (az != bz) return bz;  // nonzero values sort before zeros
    if (az && bz) return false;
    __int128 va = __int128(a.val_num()) * b.ram();
    __int128 vb = __int128(b.val_num()) * a.ram();
    if (va != vb) return va < vb;
    auto F = common_field(a.field(), b.field());
    return a.leading().lift_to(F).idx() < b.leading().lift_to(F).idx();
}

} // namespace drinfeld
