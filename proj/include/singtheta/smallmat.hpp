#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace singtheta {

using i64 = std::int64_t;

/// Small dense matrix, row major.  Everything in this project is tiny
/// (m <= 8 or so), so no attempt is made at being clever.
template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

using Mat64 = Mat<i64>;
using MatZ = Mat<mpz_class>;
using MatQ = Mat<mpq_class>;

template <class T>
Mat<T> transpose(const Mat<T>& m) {
    Mat<T> t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

template <class T>
Mat<T> mul(const Mat<T>& x, const Mat<T>& y) {
    assert(x.cols == y.rows);
    Mat<T> r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const T& v = x(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
        }
    return r;
}

template <class T>
bool is_symmetric(const Mat<T>& m) {
    if (m.rows != m.cols) return false;
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

MatZ to_z(const Mat64& m);
MatQ to_q(const Mat64& m);
MatQ to_q(const MatZ& m);

/// Exact determinant (Bareiss).
mpz_class det(const MatZ& m);
mpz_class det(const Mat64& m);

/// Rank over Q of an integer matrix.
int rank(const MatZ& m);

/// Exact inverse of a square rational matrix; throws input_error if singular.
MatQ inverse(const MatQ& m);

mpq_class det(const MatQ& m);

/// Clear denominators: returns the integer matrix lambda*m and sets lambda
/// to the least common denominator.
MatZ clear_denominators(const MatQ& m, mpz_class& lambda);

/// True when every entry is an integer.
bool is_integral(const MatQ& m);

/// Column-style Hermite normal form of the lattice spanned by the columns
/// of `gens` (full rank m required).  Result is m x m lower triangular with
/// positive diagonal and 0 <= H(i,j) < H(i,i) for j < i.
MatZ lattice_hnf(const MatZ& gens);

/// Elementary divisors d_1 | d_2 | ... | d_r (Smith normal form, nonzero
/// divisors only, positive).
std::vector<mpz_class> smith_divisors(MatZ m);

} // namespace singtheta
