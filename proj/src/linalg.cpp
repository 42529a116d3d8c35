#include "shf/linalg.hpp"

namespace shf {

namespace {

// integer row echelon form via Bareiss; pivots as in rref
Matrix<Integer> bareiss_echelon(const Matrix<Rational>& m, std::vector<int>& pivots) {
    int rows = m.rows(), cols = m.cols();
    Matrix<Integer> a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        Integer l = 1;
        for (int j = 0; j < cols; ++j) l = lcm(l, m(i, j).get_den());
        for (int j = 0; j < cols; ++j) a(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    Integer prev = 1;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int p = row;
        while (p < rows && sgn(a(p, col)) == 0) ++p;
        if (p == rows) continue;
        if (p != row)
            for (int j = 0; j < cols; ++j) swap(a(p, j), a(row, j));
        for (int i = row + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                Integer num = a(i, j) * a(row, col) - a(i, col) * a(row, j);
                mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, col) = 0;
        }
        prev = a(row, col);
        pivots.push_back(col);
        ++row;
    }
    return a;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace_fraction_free(const Matrix<Rational>& m) {
    std::vector<int> pivots;
    Matrix<Integer> a = bareiss_echelon(m, pivots);
    int cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> out;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        // back substitution, last pivot row first; other free entries stay 0
        for (int r = static_cast<int>(pivots.size()) - 1; r >= 0; --r) {
            int pc = pivots[r];
            Rational s = 0;
            for (int j = pc + 1; j < cols; ++j)
                if (sgn(a(r, j)) != 0 && sgn(v[j]) != 0) s += Rational(a(r, j)) * v[j];
            v[pc] = -s / Rational(a(r, pc));
        }
        out.push_back(std::move(v));
    }
    return out;
}

int rank_fraction_free(const Matrix<Rational>& m) {
    std::vector<int> pivots;
    bareiss_echelon(m, pivots);
    return static_cast<int>(pivots.size());
}

}  // namespace shf
