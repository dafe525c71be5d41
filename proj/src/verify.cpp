#include "singtheta/verify.hpp"

#include <array>
#include <random>
#include <sstream>

#include "singtheta/binary.hpp"
#include "singtheta/chars.hpp"
#include "singtheta/kitaoka.hpp"
#include "singtheta/singular.hpp"
#include "singtheta/theta.hpp"

namespace singtheta {

namespace {

SuiteResult fail(std::string name, std::string detail) {
    return {std::move(name), false, std::move(detail)};
}

SuiteResult pass(std::string name, std::string detail = "") {
    return {std::move(name), true, std::move(detail)};
}

std::vector<i64> valid_discs(i64 dmin) {
    std::vector<i64> ds;
    for (i64 d = -3; d >= dmin; --d) {
        i64 r = ((d % 4) + 4) % 4;
        if (r == 0 || r == 1) ds.push_back(d);
    }
    return ds;
}

mpq_class random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<i64> num(-9, 9);
    const i64 dens[] = {1, 1, 2, 3, 5};
    std::uniform_int_distribution<int> den(0, 4);
    mpq_class q(static_cast<long>(num(rng)), static_cast<long>(dens[den(rng)]));
    q.canonicalize();
    return q;
}

} // namespace

SuiteResult suite_epsilon(i64 max_abs_disc, const std::vector<i64>& primes) {
    int checked = 0;
    for (i64 d : valid_discs(-max_abs_disc))
        for (const auto& f : class_reps(d)) {
            i64 eps = automorphism_count(f.form());
            ++checked;
            for (i64 p : primes)
                if (eps % p == 0)
                    return fail("epsilon", "eps(" + f.to_string() + ") = " +
                                               std::to_string(eps) + " divisible by " +
                                               std::to_string(p));
        }
    return pass("epsilon", std::to_string(checked) + " classes checked");
}

SuiteResult suite_roundtrip(int instances, i64 det_bound, std::uint64_t seed) {
    auto classes = classes_by_det(2, det_bound);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coin(0, 3);
    for (int inst = 0; inst < instances; ++inst) {
        std::vector<std::pair<ClassRep, mpq_class>> values;
        std::vector<mpq_class> expected;
        for (const auto& cls : classes) {
            mpq_class v = coin(rng) == 0 ? random_rational(rng) : mpq_class(0);
            values.emplace_back(cls, v);
            expected.push_back(v);
        }
        PrimitiveCoeffTable table = primitive_from_class_values(2, values);
        for (size_t i = 0; i < classes.size(); ++i)
            if (table.reconstruct(classes[i].form) != expected[i])
                return fail("roundtrip", "instance " + std::to_string(inst) +
                                             " mismatch at " + classes[i].form.to_string());
    }
    return pass("roundtrip", std::to_string(instances) + " random class functions, " +
                                 std::to_string(classes.size()) + " classes");
}

SuiteResult suite_freitag(int instances, std::uint64_t seed) {
    const i64 bound = 6;
    auto pool = classes_by_min_trace(2, bound);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> howmany(1, 4);
    const int degrees[] = {4, 3}; // (n, r) = (2, 2) and (1, 2)
    for (int inst = 0; inst < instances; ++inst) {
        const int degree = degrees[inst % 2];
        FourierExpansion f(degree, bound);
        f.gl_invariant = true;
        const int parts = howmany(rng);
        for (int t = 0; t < parts; ++t) {
            mpq_class c = random_rational(rng);
            if (c == 0) c = 1;
            f = add(f, scale(c, theta_expansion(pool[pick(rng)].form, degree, bound)));
        }
        if (!verify_freitag_identity(f, 2))
            return fail("freitag", "identity failed on instance " + std::to_string(inst));
        // corruption control: bump one rank-2 coefficient
        FourierExpansion g = f;
        HalfIntegralForm key = pad_zero(degree - 2, pool[pick(rng)].form);
        g.set_coeff(key, g.coeff(key) + 1);
        g.gl_invariant = true;
        if (verify_freitag_identity(g, 2))
            return fail("freitag", "corrupted coefficient not detected, instance " +
                                       std::to_string(inst));
    }
    return pass("freitag", std::to_string(instances) + " random combinations");
}

SuiteResult suite_decompose(std::uint64_t seed) {
    const i64 p = 7;
    const mpq_class det_bound(6);
    const i64 residual_bound = 6;
    const i64 build_bound = std::max<i64>(min_trace_for_det_bound(2, det_bound), residual_bound);
    std::vector<HalfIntegralForm> cls;
    for (i64 d : {-7, -23})
        for (const auto& f : class_reps(d)) cls.push_back(f.form());

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<i64> cdist(1, 60);
    for (int m = 1; m <= 2; ++m) {
        const i64 mod = pow_checked(p, m);
        std::vector<i64> c(cls.size());
        for (auto& v : c) v = cdist(rng);
        FourierExpansion f(4, build_bound);
        for (size_t i = 0; i < cls.size(); ++i)
            f = add(f, scale(mpq_class(static_cast<long>(c[i])),
                             theta_expansion(cls[i], 4, build_bound)));
        DecompositionReport rep = freitag_decompose(f, p, m, det_bound, residual_bound);
        if (rep.verdict.state != SingularityVerdict::State::Singular ||
            rep.verdict.p_rank != 2)
            return fail("decompose", "wrong singularity verdict at m=" + std::to_string(m));
        if (!rep.residual_congruent)
            return fail("decompose", "residual not congruent at m=" + std::to_string(m));
        for (size_t i = 0; i < cls.size(); ++i) {
            i64 want = c[i] % mod;
            const DecompositionTerm* found = nullptr;
            for (const auto& t : rep.terms)
                if (t.cls.form == cls[i]) found = &t;
            if (want == 0 && found != nullptr)
                return fail("decompose", "term should have been dropped at " +
                                             cls[i].to_string());
            if (want != 0 && (found == nullptr || found->c_mod != want))
                return fail("decompose", "coefficient not recovered at " + cls[i].to_string() +
                                             " m=" + std::to_string(m));
        }
        for (const auto& t : rep.terms) {
            bool known = false;
            for (const auto& s : cls) known = known || s == t.cls.form;
            if (!known)
                return fail("decompose", "spurious term at " + t.cls.form.to_string());
        }
    }
    return pass("decompose", "coefficients recovered mod 7 and mod 49");
}

SuiteResult suite_phi() {
    const i64 bound = 6;
    for (i64 p : {7, 11}) {
        FourierExpansion f = theta_expansion(BinaryForm{1, 1, 2}.form(), 3, bound);
        if (!verify_phi_congruence(f, p, 1))
            return fail("phi", "theta expansion failed at p=" + std::to_string(p));
        FourierExpansion g = f;
        HalfIntegralForm key = pad_zero(1, BinaryForm{1, 1, 2}.form());
        g.set_coeff(key, g.coeff(key) + 1);
        if (verify_phi_congruence(g, p, 1))
            return fail("phi", "corruption not detected at p=" + std::to_string(p));
    }
    return pass("phi");
}

SuiteResult suite_weber(i64 dmin, i64 prime_bound) {
    auto discs = valid_discs(dmin);
    std::vector<i64> bad;
    std::string error;
    #pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < discs.size(); ++i) {
        try {
            if (!weber_check(discs[i], prime_bound)) {
                #pragma omp critical
                bad.push_back(discs[i]);
            }
        } catch (const std::exception& e) {
            #pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) return fail("weber", error);
    if (!bad.empty())
        return fail("weber", "shared represented prime at D=" + std::to_string(bad.front()));
    return pass("weber", std::to_string(discs.size()) + " discriminants");
}

SuiteResult suite_uv(const std::vector<i64>& primes, int max_i, int max_j, i64 bound) {
    for (i64 p : primes) {
        // a d p - b^2 p^2 = p with b = 0 and with b = 1
        std::vector<std::array<i64, 3>> params = {{1, 0, 1}, {1, 1, p + 1}, {p + 1, 1, 1}};
        for (const auto& [a, b, d] : params) {
            for (int i = 1; i <= max_i; ++i)
                for (int j = 0; j <= max_j; ++j) {
                    SijForm hi(p, i, j, a, b, d), lo(p, i - 1, j, a, b, d);
                    FourierExpansion lhs = theta_expansion(hi.form, 1, bound);
                    FourierExpansion rhs = v_operator(theta_expansion(lo.form, 1, bound), p);
                    if (!equal_within(lhs, rhs, bound))
                        return fail("uv", "V(p) ladder failed at p=" + std::to_string(p) +
                                              " i=" + std::to_string(i) +
                                              " j=" + std::to_string(j));
                }
            for (int j = 1; j <= max_j; ++j) {
                SijForm top(p, 0, j, a, b, d), down(p, 1, j - 1, a, b, d);
                FourierExpansion lhs = u_operator(theta_expansion(top.form, 1, bound), p);
                FourierExpansion rhs = theta_expansion(down.form, 1, bound);
                if (!equal_within(lhs, rhs, bound / p))
                    return fail("uv", "U(p) ladder failed at p=" + std::to_string(p) +
                                          " j=" + std::to_string(j));
            }
        }
    }
    return pass("uv");
}

SuiteResult suite_independence(const std::vector<i64>& primes, i64 coeff_bound) {
    std::ostringstream detail;
    for (i64 p : primes) {
        auto res = theta_independence_mod_p(p, coeff_bound);
        if (res.rank != res.class_count)
            return fail("independence", "rank " + std::to_string(res.rank) + " != h_p " +
                                            std::to_string(res.class_count) + " at p=" +
                                            std::to_string(p));
        detail << "p=" << p << ": h_p=" << res.class_count << " ";
    }
    return pass("independence", detail.str());
}

SuiteResult suite_kitaoka(const std::vector<i64>& primes, double tol, int samples,
                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-0.4, 0.4), im(0.5, 2.0);
    std::ostringstream detail;
    for (i64 p : primes) {
        auto reps = level_p_reps(p);
        if (reps.reps.empty())
            return fail("kitaoka", "no level-p classes at p=" + std::to_string(p));
        for (const auto& bf : reps.reps) {
            HalfIntegralForm s = bf.form();
            LatticeBasis partner = kitaoka_partner(s, p);
            LocalCheck chk = partner_local_check(s, p, partner);
            if (!chk.ok) return fail("kitaoka", "local check: " + chk.detail);
            std::vector<std::complex<double>> zs;
            for (int i = 0; i < samples; ++i) zs.emplace_back(re(rng), im(rng));
            CuspMatrix m = CuspMatrix::for_level_divisor(s.level(), p);
            KitaokaResult res = verify_kitaoka_deg1(s, m, s.size() / 2, zs);
            if (res.max_deviation >= tol)
                return fail("kitaoka", "deviation " + std::to_string(res.max_deviation) +
                                           " at p=" + std::to_string(p) + " S=" +
                                           bf.to_string());
            detail << "p=" << p << " S=" << bf.to_string() << " |kappa|=" << std::abs(res.kappa)
                   << " dev=" << res.max_deviation << "; ";
        }
    }
    return pass("kitaoka", detail.str());
}

SuiteResult suite_singularity(i64 trace_bound) {
    const std::vector<BinaryForm> forms = {{1, 0, 1}, {1, 1, 1}, {1, 1, 2},
                                           {2, 1, 3}, {1, 0, 2}, {1, 1, 3}};
    for (const auto& bf : forms)
        for (int degree : {3, 4})
            for (i64 p : {5, 7, 11, 13}) {
                FourierExpansion f = theta_expansion(bf.form(), degree, trace_bound);
                SingularityVerdict v = detect_singularity(f, p, 1);
                if (v.state != SingularityVerdict::State::Singular || v.p_rank != 2)
                    return fail("singularity",
                                "wrong p-rank for " + bf.to_string() + " degree " +
                                    std::to_string(degree) + " p=" + std::to_string(p));
            }
    return pass("singularity");
}

SuiteResult suite_weight() {
    const std::vector<BinaryForm> forms = {{1, 0, 1}, {1, 1, 1}, {1, 1, 2}, {2, 1, 3}};
    for (const auto& bf : forms)
        for (int degree : {3, 4})
            for (i64 p : {5, 7, 11, 13}) {
                FourierExpansion f = theta_expansion(bf.form(), degree, 6);
                SingularityVerdict v = detect_singularity(f, p, 1);
                if (!v.p_rank) return fail("weight", "no p-rank for " + bf.to_string());
                if (!weight_congruence_holds(*f.weight, *v.p_rank, p, 1))
                    return fail("weight", "congruence failed for " + bf.to_string() +
                                              " p=" + std::to_string(p));
            }
    return pass("weight");
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
    std::vector<SuiteResult> out;
    out.push_back(suite_epsilon(100, {5, 7, 11, 13}));
    out.push_back(suite_roundtrip(100, 30, seed));
    out.push_back(suite_freitag(12, seed));
    out.push_back(suite_decompose(seed));
    out.push_back(suite_phi());
    out.push_back(suite_weber(-200, 500));
    out.push_back(suite_uv({3, 7}, 2, 2, 50));
    out.push_back(suite_independence({7, 23, 31}, 200));
    out.push_back(suite_kitaoka({7, 11, 23}, 1e-8, 5, seed));
    out.push_back(suite_singularity(6));
    out.push_back(suite_weight());
    return out;
}

} // namespace singtheta
