#ifndef DRINFELD_GF_HPP
#define DRINFELD_GF_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

class FqField;
using FieldPtr = std::shared_ptr<const FqField>;

/// The field F_{q^d}, q = p^e, realized as F_p[x]/(f) with f the
/// deterministic (lowest-lexicographic) monic irreducible of degree n = e*d.
/// Elements are packed indices: sum c_i p^i for the digit vector c.
class FqField : public std::enable_shared_from_this<FqField> {
public:
    int p;
    int e;  // q = p^e
    int d;  // extension degree over F_q
    int n;  // = e*d, degree over F_p
    std::uint64_t q;
    std::uint64_t size;               // p^n
    std::vector<int> modulus;         // coeffs c_0..c_n over F_p, monic

    /// Registry lookup; fields are interned per (p, e, d).
    static FieldPtr get(int p, int e, int d);

    bool same_tower(const FqField& o) const { return p == o.p && e == o.e; }

    std::uint64_t zero() const { return 0; }
    std::uint64_t one() const { return 1; }
    std::uint64_t gen() const;  // class of x (n >= 2), else 1

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, unsigned long long k) const;
    /// n-fold q-power Frobenius, m may be negative.
    std::uint64_t pow_q(std::uint64_t a, long m) const;

    std::vector<int> unpack(std::uint64_t a) const;
    std::uint64_t pack(const std::vector<int>& digits) const;

    /// Image of an element of `src` (same p, src.n | n) under the canonical
    /// embedding (evaluated at the first root of src.modulus in this field).
    std::uint64_t embed_from(const FqField& src, std::uint64_t a) const;

    /// Coordinates of `a` over the F_q-basis {x^0,...,x^{d-1}} of F_{q^d},
    /// each returned as a packed element of F_q = get(p, e, 1).
    std::vector<std::uint64_t> decompose_over_q(std::uint64_t a) const;
    std::uint64_t compose_over_q(const std::vector<std::uint64_t>& coords) const;

    std::string elem_to_string(std::uint64_t a) const;

    /// FNV-1a hash over the deterministic modulus table for small (p, n);
    /// pins the extension-field representations in reports.
    static std::uint64_t modulus_table_hash();

private:
    FqField() = default;
    friend struct FqFieldFactory;

    void build_tables();
    std::uint64_t mul_poly(std::uint64_t a, std::uint64_t b) const;

    // Zech-style log/exp tables when size is small enough.
    bool has_log_ = false;
    std::uint64_t primitive_ = 0;
    std::vector<std::uint32_t> log_;   // log_[a] for a != 0
    std::vector<std::uint64_t> exp_;   // exp_[k], k in [0, 2(size-1))
    int frob_order_ = 1;               // order of x -> x^q

    // decomposition matrix over F_p for the F_q-basis of F_{q^d}
    std::vector<std::vector<int>> decomp_;     // n x n, maps digits -> coords
    std::vector<std::uint64_t> subq_basis_;    // s^a (a < e), s = embedded F_q generator
};

class FieldElem {
public:
    FieldElem() : fld_(nullptr), idx_(0) {}
    FieldElem(FieldPtr f, std::uint64_t idx) : fld_(std::move(f)), idx_(idx) {}
    static FieldElem zero(FieldPtr f) { return FieldElem(std::move(f), 0); }
    static FieldElem one(FieldPtr f) { return FieldElem(std::move(f), 1); }
    /// Integer constant reduced mod p.
    static FieldElem from_int(FieldPtr f, long v);

    const FieldPtr& field() const { return fld_; }
    std::uint64_t idx() const { return idx_; }
    bool is_zero() const { return idx_ == 0; }
    bool is_one() const { return idx_ == 1; }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inv() const;
    FieldElem pow_q(long m) const;
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    /// Lift into `target` (same p, e; degree must divide).
    FieldElem lift_to(const FieldPtr& target) const;
    /// True when the element lies in the F_q-subfield.
    bool in_base_fq() const;

    std::string str() const;

private:
    FieldPtr fld_;
    std::uint64_t idx_;
};

/// Common extension field of a and b (same p, e required; lcm of degrees).
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

} // namespace drinfeld

#endif
