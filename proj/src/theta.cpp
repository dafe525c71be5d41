#include "singtheta/theta.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "singtheta/enumerate.hpp"
#include "singtheta/errors.hpp"

namespace singtheta {

namespace {

// Count X (columns x_1..x_n) with x_j^T Q x_j = G(j,j) and
// x_i^T Q x_j = G(i,j).  Q positive definite integer symmetric, G any
// integer symmetric target.
i64 count_reps(const Mat64& q, const Mat64& g) {
    const int m = q.rows, n = g.rows;
    FormEnumerator en(q);
    std::map<i64, std::vector<std::vector<i64>>> cands;
    for (int j = 0; j < n; ++j) {
        i64 v = g(j, j);
        if (!cands.count(v)) cands[v] = en.with_value(v);
        if (cands[v].empty()) return 0;
    }
    std::vector<const std::vector<std::vector<i64>>*> col_cands(n);
    for (int j = 0; j < n; ++j) col_cands[j] = &cands[g(j, j)];

    std::vector<const std::vector<i64>*> chosen(n);
    auto cross = [&](const std::vector<i64>& x, const std::vector<i64>& y) {
        i64 v = 0;
        for (int i = 0; i < m; ++i) {
            i64 row = 0;
            for (int k = 0; k < m; ++k) row += q(i, k) * y[k];
            v += x[i] * row;
        }
        return v;
    };
    i64 count = 0;
    auto rec = [&](auto&& self, int j) -> void {
        if (j == n) {
            ++count;
            return;
        }
        for (const auto& x : *col_cands[j]) {
            bool ok = true;
            for (int i = 0; i < j && ok; ++i) ok = cross(*chosen[i], x) == g(i, j);
            if (!ok) continue;
            chosen[j] = &x;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    return count;
}

using CountMap = std::map<std::vector<i64>, i64>;

// Walk all column tuples with total value <= 2B over a precomputed
// shortlist; the packed key is the upper triangle of the doubled target.
struct TupleWalker {
    int n;
    i64 value_budget;
    int k;                          // shortlist size
    const std::vector<i64>* vals;   // ascending
    const std::vector<i64>* pairs;  // k*k cross products

    void complete(std::vector<int>& pick, int depth, i64 used, CountMap& out) const {
        if (depth == n) {
            std::vector<i64> key;
            key.reserve(static_cast<size_t>(n) * (n + 1) / 2);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    key.push_back((*pairs)[static_cast<size_t>(pick[i]) * k + pick[j]]);
            ++out[std::move(key)];
            return;
        }
        for (int c = 0; c < k; ++c) {
            if (used + (*vals)[c] > value_budget) break; // vals ascending
            pick[depth] = c;
            complete(pick, depth + 1, used + (*vals)[c], out);
        }
    }
};

FourierExpansion assemble(const HalfIntegralForm& s, int degree, i64 trace_bound,
                          const CountMap& counts) {
    FourierExpansion f(degree, trace_bound);
    for (const auto& [key, c] : counts) {
        std::vector<i64> flat(static_cast<size_t>(degree) * degree);
        size_t idx = 0;
        for (int i = 0; i < degree; ++i)
            for (int j = i; j < degree; ++j) {
                flat[static_cast<size_t>(i) * degree + j] = key[idx];
                flat[static_cast<size_t>(j) * degree + i] = key[idx];
                ++idx;
            }
        f.set_coeff(HalfIntegralForm(degree, std::move(flat)), mpq_class(static_cast<long>(c)));
    }
    if (s.size() % 2 == 0) {
        f.weight = s.size() / 2;
        f.character = theta_character(s);
    }
    f.level = s.level();
    f.gl_invariant = true;
    return f;
}

struct Shortlist {
    std::vector<std::vector<i64>> vecs;
    std::vector<i64> vals;
    std::vector<i64> pairs; // k*k
};

Shortlist build_shortlist(const Mat64& q, i64 value_budget) {
    FormEnumerator en(q);
    auto list = en.up_to(value_budget);
    Shortlist sl;
    const int k = static_cast<int>(list.size());
    sl.vecs.reserve(k);
    sl.vals.reserve(k);
    for (auto& [x, v] : list) {
        sl.vecs.push_back(std::move(x));
        sl.vals.push_back(v);
    }
    const int m = q.rows;
    sl.pairs.assign(static_cast<size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            i64 v = 0;
            for (int a = 0; a < m; ++a) {
                i64 row = 0;
                for (int b = 0; b < m; ++b) row += q(a, b) * sl.vecs[j][b];
                v += sl.vecs[i][a] * row;
            }
            sl.pairs[static_cast<size_t>(i) * k + j] = v;
            sl.pairs[static_cast<size_t>(j) * k + i] = v;
        }
    return sl;
}

void require_theta_pre(const HalfIntegralForm& s, int degree, i64 trace_bound) {
    if (!s.is_positive_definite())
        throw input_error("theta_expansion: form must be positive definite");
    if (degree < 0) throw input_error("theta_expansion: degree must be >= 0");
    if (trace_bound < 0) throw input_error("theta_expansion: trace bound must be >= 0");
}

} // namespace

i64 rep_number(const HalfIntegralForm& s, const HalfIntegralForm& t) {
    if (!s.is_positive_definite())
        throw input_error("rep_number: form must be positive definite");
    return count_reps(s.doubled_matrix(), t.doubled_matrix());
}

i64 rep_number(const LatticeBasis& lattice, const MatQ& target) {
    if (!is_symmetric(target)) throw input_error("rep_number: target must be symmetric");
    // clear denominators of both the doubled Gram and the doubled target
    MatQ gram2 = lattice.gram;
    for (auto& v : gram2.a) v *= 2;
    MatQ target2 = target;
    for (auto& v : target2.a) { v *= 2; v.canonicalize(); }
    mpz_class lam_q, lam_t;
    MatZ qz = clear_denominators(gram2, lam_q);
    MatZ tz = clear_denominators(target2, lam_t);
    // common scale: values of lam*gram2 are integers; target must become
    // integral under the same lambda or there are no representations
    mpz_class lam = lcm(lam_q, lam_t);
    Mat64 q(qz.rows, qz.cols), g(tz.rows, tz.cols);
    mpz_class fq = lam / lam_q, ft = lam / lam_t;
    for (size_t i = 0; i < qz.a.size(); ++i) {
        mpz_class v = qz.a[i] * fq;
        if (!v.fits_slong_p()) throw input_error("rep_number: scaled Gram overflow");
        q.a[i] = v.get_si();
    }
    for (size_t i = 0; i < tz.a.size(); ++i) {
        mpz_class v = tz.a[i] * ft;
        if (!v.fits_slong_p()) throw input_error("rep_number: scaled target overflow");
        g.a[i] = v.get_si();
    }
    return count_reps(q, g);
}

i64 square_rep_count(const HalfIntegralForm& s, const HalfIntegralForm& t) {
    if (s.size() != t.size()) throw input_error("square_rep_count: size mismatch");
    if (!s.is_positive_definite() || !t.is_positive_definite())
        throw input_error("square_rep_count: both forms must be positive definite");
    mpq_class ratio = t.det_half() / s.det_half();
    ratio.canonicalize();
    if (ratio.get_den() != 1 ||
        mpz_perfect_square_p(ratio.get_num_mpz_t()) == 0)
        return 0;
    // any W with S[W] = T is automatically nonsingular here
    return rep_number(s, t);
}

FourierExpansion theta_expansion_serial(const HalfIntegralForm& s, int degree,
                                        i64 trace_bound) {
    require_theta_pre(s, degree, trace_bound);
    if (degree == 0) {
        FourierExpansion f(0, trace_bound);
        f.set_constant(1);
        return f;
    }
    Shortlist sl = build_shortlist(s.doubled_matrix(), 2 * trace_bound);
    TupleWalker w{degree, 2 * trace_bound, static_cast<int>(sl.vals.size()), &sl.vals,
                  &sl.pairs};
    CountMap counts;
    std::vector<int> pick(degree, 0);
    w.complete(pick, 0, 0, counts);
    return assemble(s, degree, trace_bound, counts);
}

FourierExpansion theta_expansion(const HalfIntegralForm& s, int degree, i64 trace_bound) {
    require_theta_pre(s, degree, trace_bound);
    if (degree == 0) return theta_expansion_serial(s, degree, trace_bound);
    Shortlist sl = build_shortlist(s.doubled_matrix(), 2 * trace_bound);
    const int k = static_cast<int>(sl.vals.size());
    TupleWalker w{degree, 2 * trace_bound, k, &sl.vals, &sl.pairs};

    CountMap merged;
#ifdef _OPENMP
    #pragma omp parallel
    {
        CountMap local;
        std::vector<int> pick(degree, 0);
        #pragma omp for schedule(dynamic) nowait
        for (int c = 0; c < k; ++c) {
            if (sl.vals[c] > 2 * trace_bound) continue;
            pick[0] = c;
            w.complete(pick, 1, sl.vals[c], local);
        }
        #pragma omp critical
        for (const auto& [key, cnt] : local) merged[key] += cnt;
    }
#else
    std::vector<int> pick(degree, 0);
    w.complete(pick, 0, 0, merged);
#endif
    return assemble(s, degree, trace_bound, merged);
}

} // namespace singtheta
