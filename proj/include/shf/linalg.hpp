#pragma once

#include <vector>

#include "shf/matrix.hpp"

namespace shf {

inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
inline Quadratic exact_div(const Quadratic& a, const Quadratic& b) { return a / b; }
template <class C>
Polynomial<C> exact_div(const Polynomial<C>& a, const Polynomial<C>& b) {
    return exact_divide(a, b);
}

template <class K>
struct Echelon {
    Matrix<K> reduced;        // reduced row echelon form
    std::vector<int> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan over a field; the pivot of each step is the first nonzero
// entry of the leftmost remaining column, so the output is canonical.
template <class K>
Echelon<K> rref(Matrix<K> m) {
    Echelon<K> e;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = row;
        while (p < m.rows() && is_zero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        K inv = K(1) / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            K f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

template <class K>
int rank(const Matrix<K>& m) {
    return static_cast<int>(rref(m).pivots.size());
}

// Kernel basis from an echelon form: one vector per free column, equal to 1
// there and 0 on the other free columns.
template <class K>
std::vector<std::vector<K>> kernel_from_rref(const Echelon<K>& e, int cols) {
    std::vector<bool> is_pivot(cols, false);
    for (int c : e.pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> out;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<K> v(cols, K(0));
        v[f] = K(1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(static_cast<int>(i), f);
        out.push_back(std::move(v));
    }
    return out;
}

template <class K>
std::vector<std::vector<K>> nullspace(const Matrix<K>& m) {
    return kernel_from_rref(rref(m), m.cols());
}

// Fraction-free (Bareiss) elimination on an integer-scaled copy, then exact
// back substitution; yields the same canonical kernel basis as rref.
std::vector<std::vector<Rational>> nullspace_fraction_free(const Matrix<Rational>& m);
int rank_fraction_free(const Matrix<Rational>& m);

template <class K>
Matrix<K> inverse(const Matrix<K>& m) {
    int n = m.rows();
    if (m.cols() != n) throw DomainError("inverse of a non-square matrix");
    Matrix<K> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = K(1);
    }
    auto e = rref(aug);
    if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
    Matrix<K> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

// Bareiss determinant over an integral domain with exact division
template <class R>
R determinant(Matrix<R> m) {
    int n = m.rows();
    if (m.cols() != n) throw DomainError("determinant of a non-square matrix");
    if (n == 0) return R(1);
    R prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (is_zero(m(k, k))) {
            int p = k + 1;
            while (p < n && is_zero(m(p, k))) ++p;
            if (p == n) return R(0);
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                R num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = exact_div(num, prev);
            }
            m(i, k) = R(0);
        }
        prev = m(k, k);
    }
    R d = m(n - 1, n - 1);
    return sign < 0 ? R(-d) : d;
}

template <class K>
bool is_invertible(const Matrix<K>& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

}  // namespace shf
