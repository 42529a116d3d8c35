#pragma once

#include <string>
#include <vector>

#include "shf/error.hpp"
#include "shf/polynomial.hpp"
#include "shf/quadratic.hpp"
#include "shf/rational.hpp"

namespace shf {

template <class S>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, const S& fill = S(0)) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }
    static Matrix from_columns(const std::vector<std::vector<S>>& cols, int rows) {
        Matrix m(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.c_; ++j)
            for (int i = 0; i < rows; ++i) m(i, j) = cols[j].at(i);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    std::vector<S> column(int j) const {
        std::vector<S> v(r_);
        for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<S> row(int i) const { return {a_.begin() + i * c_, a_.begin() + (i + 1) * c_}; }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    S trace() const {
        S t(0);
        for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
        return t;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (!shf::is_zero(x)) return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw DomainError("matrix shape mismatch");
        Matrix m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                if (shf::is_zero(a(i, k))) continue;
                for (int j = 0; j < b.c_; ++j) m(i, j) += a(i, k) * b(k, j);
            }
        return m;
    }
    friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& v) {
        if (static_cast<int>(v.size()) != a.c_) throw DomainError("matrix/vector shape mismatch");
        std::vector<S> out(a.r_, S(0));
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < a.c_; ++j)
                if (!shf::is_zero(v[j])) out[i] += a(i, j) * v[j];
        return out;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    Matrix scaled(const S& c) const {
        Matrix m(*this);
        for (auto& x : m.a_) x *= c;
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }

private:
    int r_ = 0, c_ = 0;
    std::vector<S> a_;
};

template <class T, class S>
Matrix<T> matrix_cast(const Matrix<S>& m) {
    Matrix<T> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = T(m(i, j));
    return r;
}

template <class S>
std::string to_string(const Matrix<S>& m) {
    std::string out = "[";
    for (int i = 0; i < m.rows(); ++i) {
        out += i ? "; " : "";
        for (int j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + to_string(m(i, j));
    }
    return out + "]";
}

}  // namespace shf
