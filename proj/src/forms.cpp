#include "singtheta/forms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "singtheta/enumerate.hpp"
#include "singtheta/errors.hpp"

namespace singtheta {

HalfIntegralForm::HalfIntegralForm(int n, std::vector<i64> doubled_rowmajor) : n_(n) {
    if (n < 1) throw input_error("HalfIntegralForm: size must be >= 1");
    if (doubled_rowmajor.size() != static_cast<size_t>(n) * n)
        throw input_error("HalfIntegralForm: wrong number of entries");
    d_ = Mat64(n, n);
    d_.a = std::move(doubled_rowmajor);
    if (!is_symmetric(d_))
        throw input_error("HalfIntegralForm: doubled matrix must be symmetric");
    for (int i = 0; i < n; ++i)
        if (d_(i, i) % 2 != 0)
            throw input_error("HalfIntegralForm: doubled matrix must have even diagonal");
}

HalfIntegralForm HalfIntegralForm::zero(int n) {
    return HalfIntegralForm(n, std::vector<i64>(static_cast<size_t>(n) * n, 0));
}

HalfIntegralForm HalfIntegralForm::from_rows(const std::vector<std::vector<i64>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<i64> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n)
            throw input_error("HalfIntegralForm: matrix must be square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return HalfIntegralForm(n, std::move(flat));
}

i64 HalfIntegralForm::trace() const {
    i64 t = 0;
    for (int i = 0; i < n_; ++i) t += d_(i, i) / 2;
    return t;
}

bool HalfIntegralForm::is_zero() const {
    return std::all_of(d_.a.begin(), d_.a.end(), [](i64 v) { return v == 0; });
}

int HalfIntegralForm::rank() const { return singtheta::rank(to_z(d_)); }

i64 HalfIntegralForm::content() const {
    if (is_zero()) throw input_error("content undefined for the zero form");
    i64 g = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            g = std::gcd(g, i == j ? d_(i, i) / 2 : d_(i, j));
    return g;
}

i64 HalfIntegralForm::level() const {
    if (!is_positive_definite())
        throw input_error("level requires a positive definite form");
    // minimal N with N*(2T)^{-1} integral and even on the diagonal
    MatQ inv = inverse(to_q(d_));
    mpz_class n(1);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const mpq_class& q = inv(i, j);
            if (q == 0) continue;
            mpz_class den = q.get_den();
            if (i == j && mpz_odd_p(q.get_num_mpz_t())) den *= 2;
            n = lcm(n, den);
        }
    if (!n.fits_slong_p()) throw input_error("level overflow");
    return static_cast<i64>(n.get_si());
}

mpz_class HalfIntegralForm::det_doubled() const { return det(d_); }

mpq_class HalfIntegralForm::det_half() const {
    mpz_class two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n_));
    mpq_class r(det_doubled(), two_n);
    r.canonicalize();
    return r;
}

bool HalfIntegralForm::is_positive_definite() const {
    for (int k = 1; k <= n_; ++k)
        if (det(to_z(leading_block(k).doubled_matrix())) <= 0) return false;
    return true;
}

bool HalfIntegralForm::is_positive_semidefinite() const {
    // all principal minors (not just leading) must be >= 0
    for (i64 mask = 1; mask < (i64(1) << n_); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n_; ++i)
            if (mask & (i64(1) << i)) idx.push_back(i);
        MatZ sub(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j)
                sub(static_cast<int>(i), static_cast<int>(j)) =
                    mpz_class(static_cast<long>(d_(idx[i], idx[j])));
        if (det(sub) < 0) return false;
    }
    return true;
}

HalfIntegralForm HalfIntegralForm::transformed(const Mat64& u) const {
    if (u.rows != n_ || u.cols != n_)
        throw input_error("transformed: size mismatch");
    Mat64 r = mul(mul(transpose(u), d_), u);
    return HalfIntegralForm(n_, std::move(r.a));
}

HalfIntegralForm HalfIntegralForm::leading_block(int r) const {
    if (r < 1 || r > n_) throw input_error("leading_block: bad size");
    std::vector<i64> flat;
    flat.reserve(static_cast<size_t>(r) * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) flat.push_back(d_(i, j));
    return HalfIntegralForm(r, std::move(flat));
}

HalfIntegralForm HalfIntegralForm::scaled(i64 c) const {
    std::vector<i64> flat(d_.a);
    for (auto& v : flat) v *= c;
    return HalfIntegralForm(n_, std::move(flat));
}

std::string HalfIntegralForm::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < n_; ++j) os << (j ? "," : "") << d_(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

std::strong_ordering HalfIntegralForm::operator<=>(const HalfIntegralForm& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    if (auto c = trace() <=> o.trace(); c != 0) return c;
    for (size_t i = 0; i < d_.a.size(); ++i)
        if (auto c = d_.a[i] <=> o.d_.a[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

HalfIntegralForm diag_join(const HalfIntegralForm& a, const HalfIntegralForm& b) {
    const int n = a.size() + b.size();
    std::vector<i64> flat(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            flat[static_cast<size_t>(i) * n + j] = a.doubled(i, j);
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            flat[static_cast<size_t>(a.size() + i) * n + (a.size() + j)] = b.doubled(i, j);
    return HalfIntegralForm(n, std::move(flat));
}

HalfIntegralForm pad_zero(int zeros, const HalfIntegralForm& s) {
    if (zeros == 0) return s;
    return diag_join(HalfIntegralForm::zero(zeros), s);
}

UnimodularMatrix::UnimodularMatrix(Mat64 m) : u(std::move(m)) {
    if (u.rows != u.cols) throw input_error("UnimodularMatrix: not square");
    mpz_class d = det(u);
    if (d != 1 && d != -1)
        throw input_error("UnimodularMatrix: determinant must be +-1");
}

namespace {

// Backtracking search over candidate image columns: column j of X must
// have Q_S-value (2T)_jj and match the cross Gram entries against the
// columns already placed.  With det S = det T != 0 any solution is
// automatically unimodular.
template <class OnSolution>
void isometry_search(const HalfIntegralForm& s, const HalfIntegralForm& t,
                     OnSolution&& on_solution) {
    const int m = s.size(), n = t.size();
    FormEnumerator enumerator(s.doubled_matrix());
    std::vector<std::vector<std::vector<i64>>> cands(n);
    for (int j = 0; j < n; ++j) cands[j] = enumerator.with_value(t.doubled(j, j));

    std::vector<std::vector<i64>> cols(n);
    const Mat64& q = s.doubled_matrix();
    auto cross = [&](const std::vector<i64>& x, const std::vector<i64>& y) {
        i64 v = 0;
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) v += x[i] * q(i, k) * y[k];
        return v;
    };
    auto rec = [&](auto&& self, int j) -> bool {
        if (j == n) return on_solution(cols);
        for (const auto& x : cands[j]) {
            bool ok = true;
            for (int i = 0; i < j && ok; ++i)
                ok = cross(cols[i], x) == t.doubled(i, j);
            if (!ok) continue;
            cols[j] = x;
            if (self(self, j + 1)) return true;
        }
        return false;
    };
    rec(rec, 0);
}

} // namespace

std::optional<UnimodularMatrix> gl_equivalent(const HalfIntegralForm& s,
                                              const HalfIntegralForm& t) {
    if (s.size() != t.size()) throw input_error("gl_equivalent: size mismatch");
    if (!s.is_positive_definite() || !t.is_positive_definite())
        throw input_error("gl_equivalent: both forms must be positive definite");
    if (s.det_doubled() != t.det_doubled()) return std::nullopt;

    std::optional<UnimodularMatrix> found;
    isometry_search(s, t, [&](const std::vector<std::vector<i64>>& cols) {
        Mat64 u(s.size(), s.size());
        for (int j = 0; j < s.size(); ++j)
            for (int i = 0; i < s.size(); ++i) u(i, j) = cols[j][i];
        found.emplace(std::move(u));
        return true; // stop at the first witness
    });
    return found;
}

i64 automorphism_count(const HalfIntegralForm& s) {
    if (!s.is_positive_definite())
        throw input_error("automorphism_count requires a positive definite form");
    i64 count = 0;
    isometry_search(s, s, [&](const std::vector<std::vector<i64>>&) {
        ++count;
        return false; // keep going
    });
    return count;
}

bool weight_congruence_holds(i64 k, i64 r, i64 p, int m) {
    if (p < 2 || m < 1) throw input_error("weight_congruence_holds: bad modulus");
    mpz_class mod(static_cast<long>(p - 1));
    for (int i = 1; i < m; ++i) mod *= p;
    mpz_class v(static_cast<long>(2 * k - r));
    return mpz_divisible_p(v.get_mpz_t(), mod.get_mpz_t()) != 0;
}

std::vector<Mat64> gl_generators(int n) {
    std::vector<Mat64> gens;
    Mat64 flip = Mat64::identity(n);
    flip(0, 0) = -1;
    gens.push_back(flip);
    if (n >= 2) {
        Mat64 swap01 = Mat64::identity(n);
        swap01(0, 0) = swap01(1, 1) = 0;
        swap01(0, 1) = swap01(1, 0) = 1;
        gens.push_back(swap01);
        Mat64 shear = Mat64::identity(n);
        shear(0, 1) = 1;
        gens.push_back(shear);
        if (n >= 3) {
            // full cycle, so that swap+cycle generate all permutations
            Mat64 cyc(n, n);
            for (int i = 0; i < n; ++i) cyc((i + 1) % n, i) = 1;
            gens.push_back(cyc);
        }
    }
    return gens;
}

} // namespace singtheta
