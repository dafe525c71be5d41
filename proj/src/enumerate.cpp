#include "singtheta/enumerate.hpp"

#include <algorithm>

#include "singtheta/errors.hpp"

namespace singtheta {

namespace {

// nearest integer to a rational (ties toward +inf)
mpz_class nearest_int(const mpq_class& q) {
    mpq_class shifted = q + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return r;
}

} // namespace

FormEnumerator::FormEnumerator(const Mat64& q) : m_(q.rows), q_(q) {
    if (q.rows != q.cols || !is_symmetric(q))
        throw input_error("FormEnumerator: matrix must be symmetric");
    // LDL^T: Q[x] = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2
    MatQ a = to_q(q);
    d_.assign(m_, 0);
    u_ = MatQ::identity(m_);
    for (int i = 0; i < m_; ++i) {
        d_[i] = a(i, i);
        if (d_[i] <= 0)
            throw input_error("FormEnumerator: form is not positive definite");
        for (int j = i + 1; j < m_; ++j) u_(i, j) = a(i, j) / d_[i];
        for (int k = i + 1; k < m_; ++k)
            for (int l = k; l < m_; ++l) {
                a(k, l) -= a(i, k) * a(i, l) / d_[i];
                a(l, k) = a(k, l);
            }
    }
}

i64 FormEnumerator::value_of(const std::vector<i64>& x) const {
    i64 v = 0;
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) v += x[i] * q_(i, j) * x[j];
    return v;
}

// Depth-first over coordinates m-1 .. 0.  At level i the remaining budget
// and the center c_i = sum_{j>i} u_ij x_j are exact rationals.
template <class Emit>
void FormEnumerator::walk(const mpq_class& budget0, Emit&& emit) const {
    if (budget0 < 0) return;
    std::vector<i64> x(m_, 0);
    struct Frame {
        mpq_class budget;
        mpq_class center;
    };
    std::vector<Frame> fr(m_ + 1);
    fr[m_].budget = budget0;

    auto center_at = [&](int i) {
        mpq_class c = 0;
        for (int j = i + 1; j < m_; ++j) c += u_(i, j) * x[j];
        return c;
    };

    // recursive lambda, explicit because levels carry state
    auto rec = [&](auto&& self, int i) -> void {
        if (i < 0) {
            emit(x, fr[0].budget);
            return;
        }
        const mpq_class c = center_at(i);
        const mpq_class& budget = fr[i + 1].budget;
        auto admissible = [&](const mpz_class& t) {
            mpq_class y = mpq_class(t) + c;
            return d_[i] * y * y <= budget;
        };
        mpz_class t0 = nearest_int(-c);
        if (!admissible(t0)) return;
        for (mpz_class t = t0; admissible(t); ++t) {
            mpq_class y = mpq_class(t) + c;
            fr[i].budget = budget - d_[i] * y * y;
            x[i] = static_cast<i64>(t.get_si());
            self(self, i - 1);
        }
        for (mpz_class t = t0 - 1; admissible(t); --t) {
            mpq_class y = mpq_class(t) + c;
            fr[i].budget = budget - d_[i] * y * y;
            x[i] = static_cast<i64>(t.get_si());
            self(self, i - 1);
        }
        x[i] = 0;
    };
    rec(rec, m_ - 1);
}

std::vector<std::vector<i64>> FormEnumerator::with_value(i64 value) const {
    std::vector<std::vector<i64>> out;
    if (value < 0) return out;
    walk(mpq_class(static_cast<long>(value)), [&](const std::vector<i64>& x, const mpq_class& rest) {
        if (rest == 0) out.push_back(x);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<std::vector<i64>, i64>> FormEnumerator::up_to(i64 bound) const {
    std::vector<std::pair<std::vector<i64>, i64>> out;
    if (bound < 0) return out;
    const mpq_class b(static_cast<long>(bound));
    walk(b, [&](const std::vector<i64>& x, const mpq_class& rest) {
        mpq_class used = b - rest;
        assert(used.get_den() == 1);
        out.emplace_back(x, static_cast<i64>(used.get_num().get_si()));
    });
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        return l.second != r.second ? l.second < r.second : l.first < r.first;
    });
    return out;
}

} // namespace singtheta
