#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "drinfeld/gf.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/poly.hpp"
#include "drinfeld/reconstruct.hpp"

using namespace drinfeld;

namespace {

std::mt19937_64 rng(20240817);

FieldElem random_elem(const FieldPtr& f) {
    std::uniform_int_distribution<std::uint64_t> dist(0, f->size - 1);
    // indices are packed digit vectors, not contiguous; resample digits instead
    std::vector<int> digits(f->n);
    std::uniform_int_distribution<int> dd(0, f->p - 1);
    for (auto& x : digits) x = dd(rng);
    return FieldElem(f, f->pack(digits));
}

/// Brute-force multiplication table for F_4 = F_2[g]/(g^2+g+1),
/// elements encoded 0,1,g=2,g+1=3 with schoolbook reduction.
int f4_table_mul(int a, int b) {
    // polynomial multiply over F_2 then reduce by g^2 = g + 1
    int prod[3] = {0, 0, 0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            prod[i + j] ^= ((a >> i) & 1) & ((b >> j) & 1);
    int lo = prod[0] | (prod[1] << 1);
    if (prod[2]) lo ^= 3;  // g^2 -> g + 1
    return lo;
}

} // namespace

TEST_CASE("prime field arithmetic and Frobenius order") {
    auto f3 = FqField::get(3, 1, 1);
    FieldElem one = FieldElem::one(f3);
    FieldElem two = FieldElem::from_int(f3, 2);
    CHECK(one.inv() == one);
    CHECK((two * two) == one);
    CHECK((two + one).is_zero());
    CHECK(two.inv() == two);
}

TEST_CASE("F_4 multiplication matches the brute-force table") {
    auto f4 = FqField::get(2, 2, 1);
    // index encoding: sum c_i p^i = c_0 + 2 c_1, matching the test encoding
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            FieldElem ea(f4, std::uint64_t(a));
            FieldElem eb(f4, std::uint64_t(b));
            CHECK((ea * eb).idx() == std::uint64_t(f4_table_mul(a, b)));
        }
    // in particular g*g = g + 1
    FieldElem g(f4, 2);
    CHECK((g * g).idx() == 3);
}

TEST_CASE("pow_q^d is the identity on F_{q^d}") {
    for (auto [p, e, d] : {std::tuple{2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {5, 1, 2}}) {
        auto f = FqField::get(p, e, d);
        for (int trial = 0; trial < 20; ++trial) {
            FieldElem x = random_elem(f);
            CHECK(x.pow_q(d) == x);
            CHECK(x.pow_q(-d) == x);
            if (!x.is_zero()) CHECK(x.pow_q(-1).pow_q(1) == x);
        }
    }
}

TEST_CASE("Frobenius is a homomorphism fixing exactly F_q") {
    auto f = FqField::get(3, 1, 3);  // F_27 over F_3
    int fixed = 0;
    for (int trial = 0; trial < 40; ++trial) {
        FieldElem a = random_elem(f), b = random_elem(f);
        CHECK((a + b).pow_q(1) == a.pow_q(1) + b.pow_q(1));
        CHECK((a * b).pow_q(1) == a.pow_q(1) * b.pow_q(1));
    }
    // count fixed points exhaustively via digit enumeration
    for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = 0; c1 < 3; ++c1)
            for (int c2 = 0; c2 < 3; ++c2) {
                FieldElem x(f, f->pack({c0, c1, c2}));
                if (x.pow_q(1) == x) {
                    ++fixed;
                    CHECK(x.in_base_fq());
                }
            }
    CHECK(fixed == 3);
}

TEST_CASE("field axioms on random elements") {
    auto f = FqField::get(2, 2, 3);  // F_64 viewed over F_4
    for (int trial = 0; trial < 40; ++trial) {
        FieldElem a = random_elem(f), b = random_elem(f), c = random_elem(f);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK((a - b) + b == a);
        if (!a.is_zero()) CHECK(a.inv() * a == FieldElem::one(f));
    }
}

TEST_CASE("embedding and lifting between fields") {
    auto f2 = FqField::get(2, 1, 1);
    auto f4 = FqField::get(2, 2, 1);
    auto f16 = FqField::get(2, 2, 2);
    FieldElem one2 = FieldElem::one(f2);
    CHECK(one2.lift_to(f16) == FieldElem::one(f16));
    // lifting respects arithmetic
    FieldElem g(f4, 2);
    FieldElem gl = g.lift_to(f16);
    CHECK(gl * gl == (g * g).lift_to(f16));
    CHECK(gl.pow_q(1) * gl.pow_q(1) == (g * g).lift_to(f16).pow_q(1));
    // cross-field arithmetic agrees with lifting first
    CHECK(g + FieldElem::one(f16) == gl + FieldElem::one(f16));
}

TEST_CASE("decompose/compose over the F_q basis round-trips") {
    auto f = FqField::get(3, 1, 4);
    for (int trial = 0; trial < 20; ++trial) {
        FieldElem x = random_elem(f);
        auto coords = f->decompose_over_q(x.idx());
        CHECK(int(coords.size()) == f->d);
        CHECK(f->compose_over_q(coords) == x.idx());
    }
}

TEST_CASE("oversized q rejected") {
    CHECK_THROWS(FqField::get(2, 9, 1));   // q = 512 > 256
    CHECK_NOTHROW(FqField::get(2, 8, 1));  // q = 256 allowed
}

TEST_CASE("polynomial ring arithmetic and division") {
    auto f3 = FqField::get(3, 1, 1);
    auto one = FieldElem::one(f3);
    auto two = FieldElem::from_int(f3, 2);
    // (th + 1)(th + 2) = th^2 + 2 over F_3
    Poly a(Var::Theta, {one, one});
    Poly b(Var::Theta, {two, one});
    Poly prod = a * b;
    CHECK(prod == Poly(Var::Theta, {two, FieldElem::zero(f3), one}));
    auto [q, r] = prod.divmod(a);
    CHECK(q == b);
    CHECK(r.is_zero());
    CHECK(gcd(prod, a) == a.monic());
    CHECK(prod.eval(one) == (one + one) * (one + two));
    CHECK(prod.str() == "th^2+2");
}

TEST_CASE("polynomial Frobenius powers") {
    auto f9 = FqField::get(3, 1, 2);
    FieldElem g(f9, 3);  // generator class of x
    Poly p(Var::Theta, {g, FieldElem::one(f9)});
    Poly p3 = p.frobenius_power(1);
    // (th + g)^3 = th^3 + g^3 in characteristic 3
    CHECK(p3.degree() == 3);
    CHECK(p3.coeff(0) == g.pow_q(1));
    CHECK(p3.coeff(3) == FieldElem::one(f9));
    CHECK(p3.coeff(1).is_zero());
    CHECK(p.coeff_frobenius(1).coeff(0) == g.pow_q(1));
    CHECK(p.coeff_frobenius(1).degree() == 1);
}

TEST_CASE("rational functions stay in lowest terms") {
    auto f2 = FqField::get(2, 1, 1);
    auto one = FieldElem::one(f2);
    Poly t1(Var::T, {one, one});            // 1 + t
    Poly t2(Var::T, {one, one, one});       // 1 + t + t^2
    RationalFn a(t1 * t2, t2 * t2);
    CHECK(a.num() == t1);
    CHECK(a.den() == t2);
    CHECK(a * a.inv() == RationalFn::from_poly(Poly::constant(Var::T, one)));
    RationalFn diff = a - a;
    CHECK(diff.is_zero());
}

TEST_CASE("series expansion of rational functions") {
    auto f2 = FqField::get(2, 1, 1);
    auto one = FieldElem::one(f2);
    // 1/(1+t) over F_2 = 1 + t + t^2 + ...
    RationalFn geo(Poly::constant(Var::T, one), Poly(Var::T, {one, one}));
    auto s = geo.series(6);
    for (auto& c : s) CHECK(c == one);
}

TEST_CASE("nullspace oracles") {
    auto f2 = FqField::get(2, 1, 1);
    auto zero = FieldElem::zero(f2);
    auto one = FieldElem::one(f2);
    Matrix<FieldElem> id = {{one, zero}, {zero, one}};
    CHECK(nullspace(id, zero, one).empty());
    Matrix<FieldElem> zmat = {{zero, zero}, {zero, zero}};
    CHECK(nullspace(zmat, zero, one).size() == 2);
    Matrix<FieldElem> ones = {{one, one}, {one, one}};
    auto ker = nullspace(ones, zero, one);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] == one);
    CHECK(ker[0][1] == one);
}

TEST_CASE("nullspace dimension equals cols minus rank on random matrices") {
    auto f4 = FqField::get(2, 2, 1);
    auto zero = FieldElem::zero(f4);
    auto one = FieldElem::one(f4);
    for (int trial = 0; trial < 15; ++trial) {
        int rows = 2 + int(rng() % 4), cols = 2 + int(rng() % 4);
        Matrix<FieldElem> m(rows, std::vector<FieldElem>(cols, zero));
        for (auto& row : m)
            for (auto& x : row) x = random_elem(f4);
        auto ker = nullspace(m, zero, one);
        CHECK(int(ker.size()) == cols - rank(m));
        for (auto& v : ker)
            for (int i = 0; i < rows; ++i) {
                FieldElem acc = zero;
                for (int j = 0; j < cols; ++j) acc = acc + m[i][j] * v[j];
                CHECK(acc.is_zero());
            }
    }
}

TEST_CASE("matrix inverse round-trips") {
    auto f3 = FqField::get(3, 1, 2);
    auto zero = FieldElem::zero(f3);
    auto one = FieldElem::one(f3);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + int(rng() % 3);
        Matrix<FieldElem> m(n, std::vector<FieldElem>(n, zero));
        for (auto& row : m)
            for (auto& x : row) x = random_elem(f3);
        if (rank(m) < n) continue;
        auto mi = invert(m, zero, one);
        auto prod = mat_mul(m, mi, zero);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(prod[i][j] == (i == j ? one : zero));
    }
}

TEST_CASE("rational reconstruction oracles") {
    auto f2 = FqField::get(2, 1, 1);
    auto one = FieldElem::one(f2);
    auto zero = FieldElem::zero(f2);

    SUBCASE("geometric series gives 1/(1-t)") {
        std::vector<FieldElem> seq(8, one);
        auto r = rational_reconstruct(Var::T, seq, 1);
        REQUIRE(r.has_value());
        CHECK(*r == RationalFn(Poly::constant(Var::T, one), Poly(Var::T, {one, one})));
    }

    SUBCASE("the polynomial t reconstructs to itself") {
        std::vector<FieldElem> seq = {zero, one, zero, zero, zero, zero};
        auto r = rational_reconstruct(Var::T, seq, 1);
        REQUIRE(r.has_value());
        CHECK(*r == RationalFn::from_poly(Poly(Var::T, {zero, one})));
    }

    SUBCASE("(1+t)/(1+t+t^2) over F_2 from 10 terms") {
        RationalFn target(Poly(Var::T, {one, one}), Poly(Var::T, {one, one, one}));
        auto seq = target.series(10);
        auto r = rational_reconstruct(Var::T, seq, 2);
        REQUIRE(r.has_value());
        CHECK(*r == target);
    }

    SUBCASE("too-short sequence raises InsufficientData") {
        std::vector<FieldElem> seq(3, one);
        CHECK_THROWS_AS((void)rational_reconstruct(Var::T, seq, 1), InsufficientData);
    }

    SUBCASE("non-rational-looking data yields no match") {
        // sparse irregular sequence needing degree > 1
        std::vector<FieldElem> seq = {one, zero, zero, one, one, zero, one, zero};
        auto r = rational_reconstruct(Var::T, seq, 1);
        CHECK(!r.has_value());
    }
}

TEST_CASE("reconstruct inverts expansion on random rational functions") {
    auto f4 = FqField::get(2, 2, 1);
    auto one = FieldElem::one(f4);
    for (int trial = 0; trial < 20; ++trial) {
        int dn = int(rng() % 3), dd = int(rng() % 3);
        std::vector<FieldElem> nc(dn + 1), dc(dd + 1);
        for (auto& c : nc) c = random_elem(f4);
        for (auto& c : dc) c = random_elem(f4);
        dc[0] = one;  // unit constant term so a series exists
        Poly num(Var::T, nc), den(Var::T, dc);
        RationalFn target(num, den);
        int max_deg = 3;
        auto seq = target.series(2 * max_deg + 2);
        auto r = rational_reconstruct(Var::T, seq, max_deg);
        REQUIRE(r.has_value());
        CHECK(*r == target);
    }
}
