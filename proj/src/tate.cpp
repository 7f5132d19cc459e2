#include "drinfeld/tate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace drinfeld {

namespace {

using i64 = std::int64_t;

struct TailVal {
    bool finite = false;
    i64 num = 0;
    i64 den = 1;
};

// val(c_m * theta^m) = val(c_m) - m, as a rational; infinite for exact zeros
TailVal term_val(const Puiseux& c, int m) {
    TailVal v;
    if (c.is_exact_zero()) return v;
    v.finite = true;
    v.num = c.val_or_cap_num() - i64(m) * c.ram();
    v.den = c.ram();
    return v;
}

bool tail_less_eq(const TailVal& a, const TailVal& b) {
    // a <= b with infinity handling (!finite == +inf)
    if (!a.finite) return !b.finite ? true : false;
    if (!b.finite) return true;
    return __int128(a.num) * b.den <= __int128(b.num) * a.den;
}

} // namespace

TateSeries::TateSeries(FieldPtr fld, int N) : fld_(std::move(fld)) {
    c_.assign(std::size_t(std::max(N, 0)), Puiseux::exact_zero(fld_));
}

TateSeries TateSeries::poly(FieldPtr fld, std::vector<Puiseux> coeffs) {
    TateSeries s;
    s.fld_ = std::move(fld);
    s.c_ = std::move(coeffs);
    for (auto& c : s.c_)
        if (!c.field()) c = Puiseux::exact_zero(s.fld_);
    while (!s.c_.empty() && s.c_.back().is_exact_zero()) s.c_.pop_back();
    s.entire_ = true;
    return s;
}

TateSeries TateSeries::t_var(FieldPtr fld) {
    Puiseux one = Puiseux::from_elem(FieldElem::one(fld));
    return poly(fld, {Puiseux::exact_zero(fld), one});
}

TateSeries TateSeries::series(FieldPtr fld, std::vector<Puiseux> coeffs) {
    TateSeries s;
    s.fld_ = std::move(fld);
    s.c_ = std::move(coeffs);
    for (auto& c : s.c_)
        if (!c.field()) c = Puiseux::exact_zero(s.fld_);
    s.entire_ = false;
    return s;
}

bool TateSeries::is_zero_to_prec() const {
    for (const auto& c : c_)
        if (!c.is_zero_to_prec() && !c.is_exact_zero()) return false;
    return true;
}

const Puiseux& TateSeries::coeff(int m) const {
    if (m < 0 || m >= int(c_.size()))
        throw ShapeMismatch("coefficient index outside the truncation window");
    return c_[std::size_t(m)];
}

Puiseux TateSeries::coeff_or_zero(int m) const {
    if (m >= 0 && m < int(c_.size())) return c_[std::size_t(m)];
    if (entire_) return Puiseux::exact_zero(fld_);
    throw InsufficientTruncation("coefficient beyond the truncation order");
}

namespace {
int combined_trunc(const TateSeries& a, const TateSeries& b) {
    if (a.entire() && b.entire()) return -1;  // sentinel: fully known
    if (a.entire()) return b.trunc();
    if (b.entire()) return a.trunc();
    return std::min(a.trunc(), b.trunc());
}
} // namespace

TateSeries TateSeries::operator+(const TateSeries& o) const {
    FieldPtr F = fld_ ? fld_ : o.fld_;
    int N = combined_trunc(*this, o);
    int len = N < 0 ? std::max(trunc(), o.trunc()) : N;
    std::vector<Puiseux> c;
    c.resize(std::size_t(len));
    for (int m = 0; m < len; ++m) c[std::size_t(m)] = coeff_or_zero(m) + o.coeff_or_zero(m);
    TateSeries r = N < 0 ? poly(F, std::move(c)) : series(F, std::move(c));
    return r;
}

TateSeries TateSeries::operator-() const {
    TateSeries r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

TateSeries TateSeries::operator-(const TateSeries& o) const { return *this + (-o); }

TateSeries TateSeries::operator*(const TateSeries& o) const {
    FieldPtr F = fld_ ? fld_ : o.fld_;
    int N = combined_trunc(*this, o);
    int len;
    if (N < 0) {
        len = trunc() + o.trunc() - 1;
        if (trunc() == 0 || o.trunc() == 0) len = 0;  // exact zero factor
    } else {
        len = N;
    }
    std::vector<Puiseux> c(std::size_t(std::max(len, 0)), Puiseux::exact_zero(F));
    for (int i = 0; i < trunc(); ++i) {
        const Puiseux& ai = c_[std::size_t(i)];
        if (ai.is_exact_zero()) continue;
        for (int j = 0; j < o.trunc() && i + j < len; ++j) {
            const Puiseux& bj = o.c_[std::size_t(j)];
            if (bj.is_exact_zero()) continue;
            c[std::size_t(i + j)] = c[std::size_t(i + j)] + ai * bj;
        }
    }
    return N < 0 ? poly(F, std::move(c)) : series(F, std::move(c));
}

TateSeries TateSeries::operator*(const Puiseux& s) const {
    TateSeries r = *this;
    for (auto& c : r.c_) c = c * s;
    if (r.entire_ && !s.exact()) r.entire_ = false;
    return r;
}

TateSeries TateSeries::twist(long n) const {
    TateSeries r = *this;
    for (auto& c : r.c_) c = c.frob_power(n);
    return r;
}

TateSeries TateSeries::inv() const {
    if (c_.empty())
        throw NonUnitConstantTerm("inverse of a series with no known coefficients");
    const Puiseux& c0 = c_[0];
    if (c0.is_zero_to_prec() || c0.is_exact_zero())
        throw NonUnitConstantTerm("t-constant coefficient singular to precision");
    Puiseux i0 = c0.inv();
    if (entire_ && c_.size() == 1) return poly(fld_, {i0});
    int N = int(c_.size());
    std::vector<Puiseux> r(std::size_t(N), Puiseux::exact_zero(fld_));
    r[0] = i0;
    for (int k = 1; k < N; ++k) {
        Puiseux acc = Puiseux::exact_zero(fld_);
        for (int j = 1; j <= k && j < int(c_.size()); ++j)
            acc = acc + c_[std::size_t(j)] * r[std::size_t(k - j)];
        r[std::size_t(k)] = -(i0 * acc);
    }
    return series(fld_, std::move(r));
}

TateSeries TateSeries::truncate(int N) const {
    TateSeries r = *this;
    if (int(r.c_.size()) > N) {
        r.c_.resize(std::size_t(std::max(N, 0)), Puiseux::exact_zero(fld_));
        r.entire_ = false;  // dropped coefficients were nonzero
    } else if (entire_) {
        // padding an exact polynomial with exact zeros loses nothing
        while (int(r.c_.size()) < N) r.c_.push_back(Puiseux::exact_zero(fld_));
    }
    return r;
}

Puiseux TateSeries::eval_at_theta(int window) const {
    Puiseux acc = Puiseux::exact_zero(fld_);
    for (int m = 0; m < int(c_.size()); ++m) {
        if (c_[std::size_t(m)].is_exact_zero()) continue;
        acc = acc + c_[std::size_t(m)] * Puiseux::theta_power(fld_, m);
    }
    if (entire_) return acc;
    int N = int(c_.size());
    if (N < window + 1)
        throw InsufficientTruncation("series too short for the tail certificate");
    TailVal bound;  // starts at +infinity
    for (int m = N - window; m < N; ++m) {
        TailVal v = term_val(c_[std::size_t(m)], m);
        TailVal prev = term_val(c_[std::size_t(m - 1)], m - 1);
        // must be trending upward: v > prev unless both are infinite
        if (v.finite || prev.finite) {
            if (tail_less_eq(v, prev))
                throw InsufficientTruncation("tail valuations not increasing at t = theta");
        }
        if (tail_less_eq(v, bound)) bound = v;
    }
    if (!bound.finite) return acc;  // tail certified exactly zero by trend
    // truncate at the certified tail bound
    int e = acc.ram();
    i64 g = std::lcm(i64(e), bound.den);
    Puiseux fuzz = Puiseux::zero_to_prec(fld_, int(g), bound.num * (g / bound.den));
    return acc + fuzz;
}

bool TateSeries::min_coeff_val(i64& num, i64& den) const {
    bool found = false;
    for (const auto& c : c_) {
        if (c.is_exact_zero()) continue;
        i64 n = c.val_or_cap_num(), d = c.ram();
        if (!found || __int128(n) * den < __int128(num) * d) {
            num = n;
            den = d;
            found = true;
        }
    }
    return found;
}

std::string TateSeries::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t m = 0; m < c_.size(); ++m) {
        if (m) os << "; ";
        os << c_[m].str();
    }
    os << (entire_ ? "]" : "] + O(t^N)");
    return os.str();
}

// ---- matrices ----

TateMatrix tmat_zero(FieldPtr fld, int rows, int cols, int N) {
    return TateMatrix(std::size_t(rows),
                      std::vector<TateSeries>(std::size_t(cols), TateSeries::zero(fld, N)));
}

TateMatrix tmat_id(FieldPtr fld, int n, int N) {
    auto m = tmat_zero(fld, n, n, N);
    for (int i = 0; i < n; ++i)
        m[std::size_t(i)][std::size_t(i)] =
            TateSeries::poly(fld, {Puiseux::from_elem(FieldElem::one(fld))});
    return m;
}

TateMatrix tmat_add(const TateMatrix& a, const TateMatrix& b) {
    if (a.size() != b.size() || (a.size() && a[0].size() != b[0].size()))
        throw ShapeMismatch("matrix addition shape mismatch");
    TateMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

TateMatrix tmat_sub(const TateMatrix& a, const TateMatrix& b) {
    if (a.size() != b.size() || (a.size() && a[0].size() != b[0].size()))
        throw ShapeMismatch("matrix subtraction shape mismatch");
    TateMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

TateMatrix tmat_mul(const TateMatrix& a, const TateMatrix& b) {
    if (a.empty() || b.empty() || a[0].size() != b.size())
        throw ShapeMismatch("matrix multiplication shape mismatch");
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    TateMatrix r(n, std::vector<TateSeries>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            TateSeries acc = a[i][0] * b[0][j];
            for (std::size_t l = 1; l < k; ++l) acc = acc + a[i][l] * b[l][j];
            r[i][j] = acc;
        }
    return r;
}

TateMatrix tmat_twist(const TateMatrix& a, long n) {
    TateMatrix r = a;
    for (auto& row : r)
        for (auto& x : row) x = x.twist(n);
    return r;
}

TateMatrix tmat_transpose(const TateMatrix& a) {
    if (a.empty()) return a;
    TateMatrix r(a[0].size(), std::vector<TateSeries>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

TateMatrix tmat_inv(const TateMatrix& a) {
    std::size_t n = a.size();
    if (n == 0 || a[0].size() != n) throw ShapeMismatch("matrix inverse needs a square matrix");
    const FieldPtr& F = a[0][0].field();
    // working truncation: the tightest non-entire entry, else the longest poly
    int N = 0;
    bool any_series = false;
    for (auto& row : a)
        for (auto& x : row) {
            if (!x.entire()) {
                N = any_series ? std::min(N, x.trunc()) : x.trunc();
                any_series = true;
            }
        }
    if (!any_series)
        for (auto& row : a)
            for (auto& x : row) N = std::max(N, x.trunc());
    if (N <= 0) N = 1;

    TateMatrix w = a;
    TateMatrix inv = tmat_id(F, int(n), N);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t i = col; i < n; ++i) {
            const TateSeries& x = w[i][col];
            if (x.trunc() > 0) {
                Puiseux c0 = x.coeff_or_zero(0);
                if (!c0.is_zero_to_prec() && !c0.is_exact_zero()) { piv = i; break; }
            }
        }
        if (piv == n)
            throw NonUnitConstantTerm("constant-term matrix singular to precision");
        std::swap(w[piv], w[col]);
        std::swap(inv[piv], inv[col]);
        TateSeries pi = (any_series ? w[col][col].truncate(N) : w[col][col]).inv();
        for (std::size_t j = 0; j < n; ++j) {
            w[col][j] = pi * w[col][j];
            inv[col][j] = pi * inv[col][j];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            TateSeries f = w[i][col];
            if (f.is_zero_to_prec()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w[i][j] = w[i][j] - f * w[col][j];
                inv[i][j] = inv[i][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

bool tmat_min_val(const TateMatrix& a, std::int64_t& num, std::int64_t& den) {
    bool found = false;
    for (auto& row : a)
        for (auto& x : row) {
            std::int64_t n2 = 0, d2 = 1;
            if (!x.min_coeff_val(n2, d2)) continue;
            if (!found || __int128(n2) * den < __int128(num) * d2) {
                num = n2;
                den = d2;
                found = true;
            }
        }
    return found;
}

} // namespace drinfeld
