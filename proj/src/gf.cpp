#include "drinfeld/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace drinfeld {

namespace {

constexpr std::uint64_t kMaxFieldSize = 1ull << 40;
constexpr std::uint64_t kMaxLogTable = 1ull << 20;

// --- dense polynomial helpers over F_p (coeff vectors, c[0] constant) ---

using PPoly = std::vector<int>;

void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmul(const PPoly& a, const PPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = int((r[i + j] + (long long)a[i] * b[j]) % p);
    }
    ptrim(r);
    return r;
}

PPoly pmod(PPoly a, const PPoly& f, int p) {
    ptrim(a);
    int df = int(f.size()) - 1;
    int lc_inv = 1;
    {   // f monic in our usage, but stay general
        int lc = f.back();
        for (int t = 1; t < p; ++t)
            if (lc * t % p == 1) { lc_inv = t; break; }
    }
    while (int(a.size()) - 1 >= df) {
        int k = int(a.size()) - 1 - df;
        int c = int((long long)a.back() * lc_inv % p);
        for (int i = 0; i <= df; ++i)
            a[k + i] = int(((a[k + i] - (long long)c * f[i]) % p + p) % p);
        ptrim(a);
    }
    return a;
}

PPoly ppowmod(PPoly base, unsigned long long k, const PPoly& f, int p) {
    PPoly r = {1};
    base = pmod(std::move(base), f, p);
    while (k) {
        if (k & 1) r = pmod(pmul(r, base, p), f, p);
        base = pmod(pmul(base, base, p), f, p);
        k >>= 1;
    }
    return r;
}

PPoly pgcd(PPoly a, PPoly b, int p) {
    ptrim(a); ptrim(b);
    while (!b.empty()) {
        PPoly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_irreducible(const PPoly& f, int p) {
    int nn = int(f.size()) - 1;
    if (nn <= 0) return false;
    if (nn == 1) return true;
    // x^{p^n} == x mod f
    PPoly x = {0, 1};
    PPoly acc = x;
    for (int i = 0; i < nn; ++i) acc = ppowmod(acc, p, f, p);
    PPoly diff = acc;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    ptrim(diff);
    if (!diff.empty()) return false;
    // gcd(x^{p^{n/l}} - x, f) == 1 for prime l | n
    std::vector<int> primes;
    int t = nn;
    for (int l = 2; l * l <= t; ++l)
        if (t % l == 0) { primes.push_back(l); while (t % l == 0) t /= l; }
    if (t > 1) primes.push_back(t);
    for (int l : primes) {
        int k = nn / l;
        PPoly a = x;
        for (int i = 0; i < k; ++i) a = ppowmod(a, p, f, p);
        PPoly diff2 = a;
        if (diff2.size() < 2) diff2.resize(2, 0);
        diff2[1] = ((diff2[1] - 1) % p + p) % p;
        ptrim(diff2);
        PPoly g = pgcd(diff2, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

/// Lowest-lexicographic monic irreducible of degree n over F_p: smallest
/// value of sum c_i p^i over the non-leading coefficients.
PPoly canonical_modulus(int p, int n) {
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) {
        count *= std::uint64_t(p);
        if (count > (1ull << 26)) break;
    }
    PPoly f(n + 1, 0);
    f[n] = 1;
    for (std::uint64_t idx = 0;; ++idx) {
        std::uint64_t v = idx;
        for (int i = 0; i < n; ++i) { f[i] = int(v % p); v /= p; }
        if (v) throw std::runtime_error("no irreducible found (degree too large)");
        if (is_irreducible(f, p)) return f;
    }
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int i = 2; (long long)i * i <= p; ++i)
        if (p % i == 0) return false;
    return true;
}

std::recursive_mutex g_registry_mutex;

// n x n matrix inversion over F_p; returns false when singular.
bool invert_fp(std::vector<std::vector<int>> m, int p,
               std::vector<std::vector<int>>& out) {
    int nn = int(m.size());
    out.assign(nn, std::vector<int>(nn, 0));
    for (int i = 0; i < nn; ++i) out[i][i] = 1;
    for (int col = 0; col < nn; ++col) {
        int piv = -1;
        for (int r = col; r < nn; ++r)
            if (m[r][col]) { piv = r; break; }
        if (piv < 0) return false;
        std::swap(m[piv], m[col]);
        std::swap(out[piv], out[col]);
        int c = m[col][col], ci = 1;
        for (int t2 = 1; t2 < p; ++t2)
            if (c * t2 % p == 1) { ci = t2; break; }
        for (int j = 0; j < nn; ++j) {
            m[col][j] = int((long long)m[col][j] * ci % p);
            out[col][j] = int((long long)out[col][j] * ci % p);
        }
        for (int r = 0; r < nn; ++r) {
            if (r == col || !m[r][col]) continue;
            int fct = m[r][col];
            for (int j = 0; j < nn; ++j) {
                m[r][j] = int(((m[r][j] - (long long)fct * m[col][j]) % p + p) % p);
                out[r][j] = int(((out[r][j] - (long long)fct * out[col][j]) % p + p) % p);
            }
        }
    }
    return true;
}

} // namespace

struct FqFieldFactory {
    static std::shared_ptr<FqField> make(int p, int e, int d) {
        auto f = std::shared_ptr<FqField>(new FqField());
        f->p = p;
        f->e = e;
        f->d = d;
        f->n = e * d;
        f->q = 1;
        for (int i = 0; i < e; ++i) f->q *= std::uint64_t(p);
        f->size = 1;
        for (int i = 0; i < f->n; ++i) {
            f->size *= std::uint64_t(p);
            if (f->size > kMaxFieldSize)
                throw ResidueFieldTooLarge("field F_{p^" + std::to_string(f->n) +
                                           "} exceeds the configured size cap");
        }
        f->modulus = canonical_modulus(p, f->n);
        f->build_tables();
        return f;
    }
};

FieldPtr FqField::get(int p, int e, int d) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (e < 1 || d < 1) throw std::invalid_argument("e, d must be positive");
    long long qv = 1;
    for (int i = 0; i < e; ++i) {
        qv *= p;
        if (qv > 256) throw std::invalid_argument("q = p^e must be <= 256");
    }
    static std::map<std::tuple<int, int, int>, std::shared_ptr<FqField>> registry;
    std::lock_guard<std::recursive_mutex> lock(g_registry_mutex);
    auto key = std::make_tuple(p, e, d);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    auto f = FqFieldFactory::make(p, e, d);
    registry[key] = f;
    return f;
}

std::uint64_t FqField::gen() const { return n >= 2 ? std::uint64_t(p) : 1; }

std::vector<int> FqField::unpack(std::uint64_t a) const {
    std::vector<int> c(n, 0);
    for (int i = 0; i < n && a; ++i) { c[i] = int(a % p); a /= p; }
    return c;
}

std::uint64_t FqField::pack(const std::vector<int>& digits) const {
    std::uint64_t a = 0;
    for (int i = int(digits.size()) - 1; i >= 0; --i)
        a = a * p + std::uint64_t(((digits[i] % p) + p) % p);
    return a;
}

std::uint64_t FqField::add(std::uint64_t a, std::uint64_t b) const {
    if (p == 2) return a ^ b;
    std::uint64_t r = 0, mult = 1;
    for (int i = 0; i < n; ++i) {
        r += mult * ((a % p + b % p) % p);
        a /= p; b /= p; mult *= p;
    }
    return r;
}

std::uint64_t FqField::neg(std::uint64_t a) const {
    if (p == 2) return a;
    std::uint64_t r = 0, mult = 1;
    for (int i = 0; i < n; ++i) {
        r += mult * ((p - a % p) % p);
        a /= p; mult *= p;
    }
    return r;
}

std::uint64_t FqField::sub(std::uint64_t a, std::uint64_t b) const {
    return add(a, neg(b));
}

std::uint64_t FqField::mul_poly(std::uint64_t a, std::uint64_t b) const {
    PPoly pa = unpack(a), pb = unpack(b);
    PPoly r = pmod(pmul(pa, pb, p), modulus, p);
    r.resize(n, 0);
    return pack(r);
}

std::uint64_t FqField::mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (has_log_) return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
}

std::uint64_t FqField::inv(std::uint64_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero field element");
    if (has_log_) return exp_[(size - 1) - log_[a]];
    return pow(a, (unsigned long long)(size - 2));
}

std::uint64_t FqField::pow(std::uint64_t a, unsigned long long k) const {
    if (a == 0) return k == 0 ? 1 : 0;
    if (has_log_) {
        unsigned long long lg = ((unsigned long long)log_[a] * (k % (size - 1))) % (size - 1);
        return exp_[lg];
    }
    std::uint64_t r = 1, base = a;
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

std::uint64_t FqField::pow_q(std::uint64_t a, long m) const {
    if (a == 0 || a == 1) return a;
    long mm = ((m % frob_order_) + frob_order_) % frob_order_;
    std::uint64_t r = a;
    // exponent q^mm mod (size-1)
    unsigned long long exp = 1;
    for (long i = 0; i < mm; ++i)
        exp = (unsigned long long)((__uint128_t)exp * q % (size - 1));
    return pow(a, exp);
}

void FqField::build_tables() {
    frob_order_ = n / std::gcd(e, n);
    if (size <= kMaxLogTable) {
        // find a primitive element by scanning element order
        std::uint64_t order = size - 1;
        std::vector<std::uint64_t> prime_factors;
        std::uint64_t t = order;
        for (std::uint64_t l = 2; l * l <= t; ++l)
            if (t % l == 0) { prime_factors.push_back(l); while (t % l == 0) t /= l; }
        if (t > 1) prime_factors.push_back(t);
        auto pow_nolog = [&](std::uint64_t a, std::uint64_t k) {
            std::uint64_t r = 1;
            while (k) {
                if (k & 1) r = mul_poly(r, a);
                a = mul_poly(a, a);
                k >>= 1;
            }
            return r;
        };
        for (std::uint64_t cand = 1; cand < size; ++cand) {
            bool prim = true;
            for (std::uint64_t l : prime_factors)
                if (pow_nolog(cand, order / l) == 1) { prim = false; break; }
            if (prim) { primitive_ = cand; break; }
        }
        log_.assign(size, 0);
        exp_.assign(2 * (size - 1), 0);
        std::uint64_t cur = 1;
        for (std::uint64_t k = 0; k < order; ++k) {
            exp_[k] = cur;
            exp_[k + order] = cur;
            log_[cur] = std::uint32_t(k);
            cur = mul_poly(cur, primitive_);
        }
        has_log_ = true;
    }
    if (d >= 1) {
        // F_q-basis of F_{q^d}: {s^a x^b : a < e, b < d}, s the embedded
        // canonical generator of F_q.
        std::uint64_t s = 1;
        if (e >= 2) {
            if (n == e) {
                s = gen();
            } else {
                auto small = FqField::get(p, e, 1);
                s = embed_from(*small, small->gen());
            }
        }
        subq_basis_.clear();
        std::uint64_t sa = 1;
        for (int a = 0; a < e; ++a) {
            subq_basis_.push_back(sa);
            sa = mul(sa, s);
        }
        std::vector<std::vector<int>> cols(n, std::vector<int>(n, 0));
        std::uint64_t xb = 1;
        for (int b = 0; b < d; ++b) {
            for (int a = 0; a < e; ++a) {
                std::uint64_t el = mul(subq_basis_[a], xb);
                auto digits = unpack(el);
                for (int i = 0; i < n; ++i) cols[i][b * e + a] = digits[i];
            }
            xb = mul(xb, gen());
        }
        if (!invert_fp(cols, p, decomp_))
            throw std::runtime_error("subfield basis is degenerate");
    }
}

std::uint64_t FqField::embed_from(const FqField& src, std::uint64_t a) const {
    if (src.p != p) throw TowerMismatch("incompatible characteristic");
    if (n % src.n != 0) throw TowerMismatch("no embedding: degree does not divide");
    if (src.n == n) return a;  // identical canonical modulus
    // cached root of src.modulus in this field
    static std::map<std::tuple<int, int, int>, std::uint64_t> root_cache;
    std::uint64_t root = 0;
    {
        std::lock_guard<std::recursive_mutex> lock(g_registry_mutex);
        auto key = std::make_tuple(p, src.n, n);
        auto it = root_cache.find(key);
        if (it != root_cache.end()) {
            root = it->second;
        } else {
            bool found = false;
            for (std::uint64_t cand = 0; cand < size; ++cand) {
                std::uint64_t acc = 0, powc = 1;
                for (int i = 0; i <= src.n; ++i) {
                    if (src.modulus[i])
                        acc = add(acc, mul(powc, std::uint64_t(src.modulus[i])));
                    powc = mul(powc, cand);
                }
                if (acc == 0) { root = cand; found = true; break; }
            }
            if (!found) throw TowerMismatch("embedding root not found");
            root_cache[key] = root;
        }
    }
    auto digits = src.unpack(a);
    std::uint64_t acc = 0, powr = 1;
    for (int i = 0; i < src.n; ++i) {
        if (digits[i]) acc = add(acc, mul(powr, std::uint64_t(digits[i])));
        powr = mul(powr, root);
    }
    return acc;
}

std::vector<std::uint64_t> FqField::decompose_over_q(std::uint64_t a) const {
    auto digits = unpack(a);
    std::vector<int> coords(n, 0);
    for (int i = 0; i < n; ++i) {
        long long acc = 0;
        for (int j = 0; j < n; ++j) acc += (long long)decomp_[i][j] * digits[j];
        coords[i] = int(acc % p);
    }
    auto small = FqField::get(p, e, 1);
    std::vector<std::uint64_t> out(d, 0);
    for (int b = 0; b < d; ++b) {
        std::vector<int> cd(coords.begin() + b * e, coords.begin() + (b + 1) * e);
        out[b] = small->pack(cd);
    }
    return out;
}

std::uint64_t FqField::compose_over_q(const std::vector<std::uint64_t>& coords) const {
    auto small = FqField::get(p, e, 1);
    std::uint64_t acc = 0;
    std::uint64_t xb = 1;
    for (int b = 0; b < d && b < int(coords.size()); ++b) {
        auto cd = small->unpack(coords[b]);
        for (int a = 0; a < e; ++a)
            if (cd[a]) acc = add(acc, mul(mul(subq_basis_[a], xb), std::uint64_t(cd[a])));
        xb = mul(xb, gen());
    }
    return acc;
}

std::string FqField::elem_to_string(std::uint64_t a) const {
    if (a == 0) return "0";
    auto digits = unpack(a);
    std::ostringstream os;
    bool first = true;
    for (int i = n - 1; i >= 0; --i) {
        if (!digits[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || digits[i] != 1) os << digits[i];
        if (i >= 1) {
            if (digits[i] != 1) os << "*";
            os << "g";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::uint64_t FqField::modulus_table_hash() {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (int p : {2, 3, 5, 7}) {
        for (int nn = 1; nn <= 8; ++nn) {
            PPoly f = canonical_modulus(p, nn);
            for (int c : f) mix(std::uint64_t(c + 1));
        }
    }
    return h;
}

// ---- FieldElem ----

FieldElem FieldElem::from_int(FieldPtr f, long v) {
    long m = ((v % f->p) + f->p) % f->p;
    return FieldElem(std::move(f), std::uint64_t(m));
}

namespace {
void require_same(const FieldPtr& a, const FieldPtr& b) {
    if (!a || !b) throw TowerMismatch("field element without a field");
}
} // namespace

FieldElem FieldElem::lift_to(const FieldPtr& target) const {
    if (!fld_) throw TowerMismatch("cannot lift an empty element");
    if (fld_.get() == target.get()) return *this;
    if (fld_->p != target->p || target->n % fld_->n != 0)
        throw TowerMismatch("no embedding into the requested field");
    return FieldElem(target, target->embed_from(*fld_, idx_));
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
    require_same(a, b);
    if (a.get() == b.get()) return a;
    if (!a->same_tower(*b)) throw TowerMismatch("incompatible (p, e) towers");
    int dd = a->d / std::gcd(a->d, b->d) * b->d;
    return FqField::get(a->p, a->e, dd);
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    auto f = common_field(fld_, o.fld_);
    return FieldElem(f, f->add(lift_to(f).idx_, o.lift_to(f).idx_));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    auto f = common_field(fld_, o.fld_);
    return FieldElem(f, f->sub(lift_to(f).idx_, o.lift_to(f).idx_));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    auto f = common_field(fld_, o.fld_);
    return FieldElem(f, f->mul(lift_to(f).idx_, o.lift_to(f).idx_));
}

FieldElem FieldElem::operator-() const { return FieldElem(fld_, fld_->neg(idx_)); }

FieldElem FieldElem::inv() const { return FieldElem(fld_, fld_->inv(idx_)); }

FieldElem FieldElem::pow_q(long m) const { return FieldElem(fld_, fld_->pow_q(idx_, m)); }

bool FieldElem::operator==(const FieldElem& o) const {
    if (!fld_ && !o.fld_) return idx_ == o.idx_;
    if (!fld_ || !o.fld_) return idx_ == 0 && o.idx_ == 0;
    if (fld_.get() == o.fld_.get()) return idx_ == o.idx_;
    auto f = common_field(fld_, o.fld_);
    return lift_to(f).idx_ == o.lift_to(f).idx_;
}

bool FieldElem::in_base_fq() const {
    return fld_->pow_q(idx_, 1) == idx_;
}

std::string FieldElem::str() const {
    return fld_ ? fld_->elem_to_string(idx_) : "0";
}

} // namespace drinfeld
