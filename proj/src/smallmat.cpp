#include "singtheta/smallmat.hpp"

#include "singtheta/errors.hpp"

namespace singtheta {

MatZ to_z(const Mat64& m) {
    MatZ r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = mpz_class(static_cast<long>(m.a[i]));
    return r;
}

MatQ to_q(const Mat64& m) {
    MatQ r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = mpq_class(static_cast<long>(m.a[i]));
    return r;
}

MatQ to_q(const MatZ& m) {
    MatQ r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = mpq_class(m.a[i]);
    return r;
}

mpz_class det(const MatZ& m) {
    assert(m.rows == m.cols);
    const int n = m.rows;
    if (n == 0) return 1;
    MatZ w = m;
    mpz_class prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (w(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w(k, j), w(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                // Bareiss: division is exact
                mpz_divexact(w(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            w(i, k) = 0;
        }
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : mpz_class(-w(n - 1, n - 1));
}

mpz_class det(const Mat64& m) { return det(to_z(m)); }

int rank(const MatZ& m) {
    MatZ w = m;
    int r = 0;
    for (int c = 0; c < w.cols && r < w.rows; ++c) {
        int piv = -1;
        for (int i = r; i < w.rows; ++i)
            if (w(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < w.cols; ++j) std::swap(w(r, j), w(piv, j));
        for (int i = r + 1; i < w.rows; ++i) {
            if (w(i, c) == 0) continue;
            mpz_class f1 = w(r, c), f2 = w(i, c);
            for (int j = 0; j < w.cols; ++j) w(i, j) = w(i, j) * f1 - w(r, j) * f2;
        }
        ++r;
    }
    return r;
}

MatQ inverse(const MatQ& m) {
    if (m.rows != m.cols) throw input_error("inverse: matrix not square");
    const int n = m.rows;
    MatQ w = m;
    MatQ inv = MatQ::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (w(i, c) != 0) { piv = i; break; }
        if (piv < 0) throw input_error("inverse: singular matrix");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(w(c, j), w(piv, j));
                std::swap(inv(c, j), inv(piv, j));
            }
        mpq_class d = w(c, c);
        for (int j = 0; j < n; ++j) { w(c, j) /= d; inv(c, j) /= d; }
        for (int i = 0; i < n; ++i) {
            if (i == c || w(i, c) == 0) continue;
            mpq_class f = w(i, c);
            for (int j = 0; j < n; ++j) {
                w(i, j) -= f * w(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

mpq_class det(const MatQ& m) {
    assert(m.rows == m.cols);
    const int n = m.rows;
    MatQ w = m;
    mpq_class result(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (w(i, c) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(w(c, j), w(piv, j));
            result = -result;
        }
        result *= w(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (w(i, c) == 0) continue;
            mpq_class f = w(i, c) / w(c, c);
            for (int j = c; j < n; ++j) w(i, j) -= f * w(c, j);
        }
    }
    return result;
}

MatZ clear_denominators(const MatQ& m, mpz_class& lambda) {
    lambda = 1;
    for (const auto& q : m.a) lambda = lcm(lambda, mpz_class(q.get_den()));
    MatZ r(m.rows, m.cols);
    for (size_t i = 0; i < m.a.size(); ++i) {
        mpq_class v = m.a[i] * mpq_class(lambda);
        v.canonicalize();
        assert(v.get_den() == 1);
        r.a[i] = v.get_num();
    }
    return r;
}

bool is_integral(const MatQ& m) {
    for (const auto& q : m.a)
        if (q.get_den() != 1) return false;
    return true;
}

MatZ lattice_hnf(const MatZ& gens) {
    const int m = gens.rows;
    MatZ w = gens;
    // column echelon by integer column operations; pivot for row r lands
    // in column r, rows processed top down
    for (int r = 0; r < m; ++r) {
        for (;;) {
            int piv = -1;
            for (int j = r; j < w.cols; ++j)
                if (w(r, j) != 0) {
                    if (piv < 0 || abs(w(r, j)) < abs(w(r, piv))) piv = j;
                }
            if (piv < 0) throw input_error("lattice_hnf: generators not full rank");
            if (piv != r)
                for (int i = 0; i < m; ++i) std::swap(w(i, r), w(i, piv));
            bool clean = true;
            for (int j = r + 1; j < w.cols; ++j) {
                if (w(r, j) == 0) continue;
                mpz_class q = w(r, j) / w(r, r); // truncating is fine, we loop
                if (q != 0)
                    for (int i = 0; i < m; ++i) w(i, j) -= q * w(i, r);
                if (w(r, j) != 0) clean = false;
            }
            if (clean) break;
        }
    }
    MatZ h(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) h(i, j) = w(i, j);
    // normalize: positive diagonal, reduced entries left of it
    for (int i = 0; i < m; ++i) {
        if (h(i, i) < 0)
            for (int k = 0; k < m; ++k) h(k, i) = -h(k, i);
        for (int j = 0; j < i; ++j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, i).get_mpz_t());
            if (q != 0)
                for (int k = 0; k < m; ++k) h(k, j) -= q * h(k, i);
        }
    }
    return h;
}

std::vector<mpz_class> smith_divisors(MatZ m) {
    std::vector<mpz_class> div;
    int top = 0;
    const int rows = m.rows, cols = m.cols;
    while (top < rows && top < cols) {
        // find a nonzero pivot
        int pi = -1, pj = -1;
        for (int i = top; i < rows && pi < 0; ++i)
            for (int j = top; j < cols; ++j)
                if (m(i, j) != 0) { pi = i; pj = j; break; }
        if (pi < 0) break;
        for (int j = 0; j < cols; ++j) std::swap(m(top, j), m(pi, j));
        for (int i = 0; i < rows; ++i) std::swap(m(i, top), m(i, pj));
        for (;;) {
            bool again = false;
            for (int i = top + 1; i < rows; ++i) {
                while (m(i, top) != 0) {
                    mpz_class q = m(i, top) / m(top, top);
                    for (int j = 0; j < cols; ++j) m(i, j) -= q * m(top, j);
                    if (m(i, top) != 0) {
                        for (int j = 0; j < cols; ++j) std::swap(m(top, j), m(i, j));
                        again = true;
                    }
                }
            }
            for (int j = top + 1; j < cols; ++j) {
                while (m(top, j) != 0) {
                    mpz_class q = m(top, j) / m(top, top);
                    for (int i = 0; i < rows; ++i) m(i, j) -= q * m(i, top);
                    if (m(top, j) != 0) {
                        for (int i = 0; i < rows; ++i) std::swap(m(i, top), m(i, j));
                        again = true;
                    }
                }
            }
            if (!again) break;
        }
        div.push_back(abs(m(top, top)));
        ++top;
    }
    // enforce divisibility chain
    for (size_t i = 0; i + 1 < div.size(); ++i)
        for (size_t j = i + 1; j < div.size(); ++j) {
            mpz_class g = gcd(div[i], div[j]);
            mpz_class l = div[i] * div[j] / g;
            div[i] = g;
            div[j] = l;
        }
    std::sort(div.begin(), div.end());
    return div;
}

} // namespace singtheta
