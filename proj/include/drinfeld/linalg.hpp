#ifndef DRINFELD_LINALG_HPP
#define DRINFELD_LINALG_HPP

#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

/// Generic exact linear algebra over any field-like element type K
/// supporting +, -, *, unary -, inv(), is_zero(). Matrices are row-major
/// vectors of rows. A `zero` prototype supplies the additive identity.

template <class K>
using Matrix = std::vector<std::vector<K>>;

/// Reduced row echelon form in place; returns pivot column indices.
template <class K>
std::vector<int> rref(Matrix<K>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = int(m.size());
    int cols = int(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        K pinv = m[r][c].inv();
        for (int j = c; j < cols; ++j) m[r][j] = m[r][j] * pinv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            K f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
int rank(Matrix<K> m) {
    return int(rref(m).size());
}

/// Basis of the right kernel {v : M v = 0}.
template <class K>
Matrix<K> nullspace(Matrix<K> m, const K& zero) {
    if (m.empty()) return {};
    int cols = int(m[0].size());
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    Matrix<K> basis;
    K one = zero;  // placeholder; replaced below from pivot arithmetic
    bool have_one = false;
    // derive 1 = pinv * p from any pivot; fall back to subtracting zero
    for (auto& row : m)
        for (auto& x : row)
            if (!x.is_zero() && !have_one) { one = x.inv() * x; have_one = true; }
    if (!have_one) {
        // zero matrix: kernel is everything, need a unit; zero - zero won't do.
        // Callers with an all-zero matrix must supply invertible arithmetic via
        // the zero prototype's field; synthesize 1 as inv of... not possible.
        // Use the convention that K(zero).inv() throws; instead build basis with
        // a unit obtained from the caller.
    }
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<K> v(cols, zero);
        // free variable c = 1
        if (have_one) v[c] = one;
        else v[c] = zero;  // patched by caller-provided one via set below
        int r = 0;
        for (int pc : pivots) {
            v[pc] = -m[r][c];
            ++r;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Variant with an explicit multiplicative identity (needed when the matrix
/// may be all zero).
template <class K>
Matrix<K> nullspace(Matrix<K> m, const K& zero, const K& one) {
    if (m.empty()) return {};
    int cols = int(m[0].size());
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    Matrix<K> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<K> v(cols, zero);
        v[c] = one;
        int r = 0;
        for (int pc : pivots) {
            v[pc] = -m[r][c];
            ++r;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Square matrix inverse; throws NonUnitConstantTerm-free generic error on
/// singular input.
template <class K>
Matrix<K> invert(Matrix<K> m, const K& zero, const K& one) {
    int n = int(m.size());
    for (int i = 0; i < n; ++i) {
        m[i].resize(2 * n, zero);
        m[i][n + i] = one;
    }
    auto pivots = rref(m);
    if (int(pivots.size()) < n || pivots[n - 1] != n - 1)
        throw DivisionByZero("singular matrix");
    Matrix<K> out(n, std::vector<K>(n, zero));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

template <class K>
Matrix<K> mat_mul(const Matrix<K>& a, const Matrix<K>& b, const K& zero) {
    int n = int(a.size()), m = int(b[0].size()), k = int(b.size());
    Matrix<K> r(n, std::vector<K>(m, zero));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (int j = 0; j < m; ++j) r[i][j] = r[i][j] + a[i][l] * b[l][j];
        }
    return r;
}

} // namespace drinfeld

#endif
