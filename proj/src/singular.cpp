#include "singtheta/singular.hpp"

#include <algorithm>

#include <json.hpp>

#include "singtheta/binary.hpp"
#include "singtheta/errors.hpp"
#include "singtheta/theta.hpp"

namespace singtheta {

SingularityVerdict detect_singularity(const FourierExpansion& f, i64 p, int m) {
    ResidueExpansion red = reduce_mod(f, p, m); // also checks p-integrality
    SingularityVerdict v;
    v.p = p;
    v.m = m;
    v.trace_bound = f.trace_bound();
    if (f.degree() == 0) {
        if (red.constant_term() == 0) {
            v.state = SingularityVerdict::State::Zero;
        } else if (residue_mod(f.constant_term(), p, 1) != 0) {
            v.state = SingularityVerdict::State::Singular;
            v.p_rank = 0;
        } else {
            v.state = SingularityVerdict::State::NotSingular;
        }
        return v;
    }
    int top = -1;
    for (const auto& [t, a] : red.coeffs()) {
        (void)a;
        top = std::max(top, t.rank());
    }
    if (top < 0) {
        v.state = SingularityVerdict::State::Zero;
        return v;
    }
    for (const auto& [t, a] : f.coeffs()) {
        if (t.rank() != top) continue;
        if (residue_mod(a, p, 1) != 0) {
            v.state = SingularityVerdict::State::Singular;
            v.p_rank = top;
            v.witness = t;
            return v;
        }
    }
    v.state = SingularityVerdict::State::NotSingular;
    return v;
}

mpq_class restricted_coeff(const FourierExpansion& f, const HalfIntegralForm& s) {
    if (s.size() > f.degree()) throw input_error("restricted_coeff: block too large");
    if (s.size() == f.degree()) return f.coeff(s);
    return f.coeff(pad_zero(f.degree() - s.size(), s));
}

namespace {

ClassRep make_rep(const HalfIntegralForm& form) {
    return {form, form.det_half(), automorphism_count(form)};
}

std::vector<ClassRep> sort_reps(std::vector<ClassRep> reps) {
    std::sort(reps.begin(), reps.end(), [](const ClassRep& l, const ClassRep& r) {
        if (l.det != r.det) return l.det < r.det;
        return l.form < r.form;
    });
    return reps;
}

} // namespace

std::vector<ClassRep> classes_by_det(int r, const mpq_class& det_bound) {
    std::vector<ClassRep> reps;
    if (r == 1) {
        for (i64 t = 1; mpq_class(static_cast<long>(t)) <= det_bound; ++t)
            reps.push_back(make_rep(HalfIntegralForm(1, {2 * t})));
    } else if (r == 2) {
        // reduced 0 <= b <= a <= c with (4ac - b^2)/4 <= det_bound:
        // then 3a^2 <= 4ac - b^2 <= 4 det_bound
        for (i64 a = 1; mpq_class(static_cast<long>(3 * a * a), 4) <= det_bound; ++a)
            for (i64 b = 0; b <= a; ++b)
                for (i64 c = a;; ++c) {
                    mpq_class det(static_cast<long>(4 * a * c - b * b), 4);
                    det.canonicalize();
                    if (det > det_bound) break;
                    if (det <= 0) continue;
                    reps.push_back(make_rep(BinaryForm{a, b, c}.form()));
                }
    } else {
        throw input_error("class enumeration implemented for sizes 1 and 2 only");
    }
    return sort_reps(std::move(reps));
}

std::vector<ClassRep> classes_by_min_trace(int r, i64 trace_bound) {
    std::vector<ClassRep> reps;
    if (r == 1) {
        for (i64 t = 1; t <= trace_bound; ++t)
            reps.push_back(make_rep(HalfIntegralForm(1, {2 * t})));
    } else if (r == 2) {
        for (i64 a = 1; 2 * a <= trace_bound; ++a)
            for (i64 c = a; a + c <= trace_bound; ++c)
                for (i64 b = 0; b <= a; ++b) {
                    if (4 * a * c - b * b <= 0) continue;
                    reps.push_back(make_rep(BinaryForm{a, b, c}.form()));
                }
    } else {
        throw input_error("class enumeration implemented for sizes 1 and 2 only");
    }
    return sort_reps(std::move(reps));
}

i64 min_trace_for_det_bound(int r, const mpq_class& det_bound) {
    i64 best = 0;
    for (const auto& rep : classes_by_det(r, det_bound))
        best = std::max(best, rep.form.trace());
    return best;
}

mpq_class PrimitiveCoeffTable::value(const HalfIntegralForm& reduced_rep) const {
    for (const auto& [rep, v] : entries)
        if (rep.form == reduced_rep) return v;
    throw input_error("PrimitiveCoeffTable: unknown class representative");
}

mpq_class PrimitiveCoeffTable::reconstruct(const HalfIntegralForm& t) const {
    mpq_class acc(0);
    for (const auto& [rep, v] : entries) {
        if (v == 0 || rep.det > t.det_half()) continue;
        i64 n = square_rep_count(rep.form, t);
        if (n != 0) acc += v * n / rep.eps;
    }
    return acc;
}

PrimitiveCoeffTable primitive_from_class_values(
    int r, const std::vector<std::pair<ClassRep, mpq_class>>& restricted_values) {
    PrimitiveCoeffTable table;
    table.r = r;
    std::vector<std::pair<ClassRep, mpq_class>> sorted = restricted_values;
    std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r2) {
        if (l.first.det != r2.first.det) return l.first.det < r2.first.det;
        return l.first.form < r2.first.form;
    });
    for (const auto& [rep, a_val] : sorted) {
        mpq_class star = a_val;
        for (const auto& [prev, prev_star] : table.entries) {
            if (prev.det >= rep.det || prev_star == 0) continue;
            i64 n = square_rep_count(prev.form, rep.form);
            if (n != 0) star -= prev_star * n / prev.eps;
        }
        table.entries.emplace_back(rep, star);
    }
    return table;
}

PrimitiveCoeffTable primitive_coeffs(const FourierExpansion& f, int r,
                                     const mpq_class& det_bound) {
    if (r < 1 || r > f.degree()) throw input_error("primitive_coeffs: bad block size");
    std::vector<std::pair<ClassRep, mpq_class>> values;
    for (const auto& rep : classes_by_det(r, det_bound)) {
        if (rep.form.trace() > f.trace_bound())
            throw bound_error("trace bound " + std::to_string(f.trace_bound()) +
                              " too small: representative " + rep.form.to_string() +
                              " of det " + rep.det.get_str() + " needs trace " +
                              std::to_string(rep.form.trace()));
        values.emplace_back(rep, restricted_coeff(f, rep.form));
    }
    return primitive_from_class_values(r, values);
}

DecompositionReport freitag_decompose(const FourierExpansion& f, i64 p, int m,
                                      const mpq_class& det_bound, i64 trace_bound) {
    DecompositionReport rep;
    rep.p = p;
    rep.m = m;
    rep.det_bound = det_bound;
    rep.trace_bound = std::min(trace_bound, f.trace_bound());
    rep.verdict = detect_singularity(f, p, m);
    if (rep.verdict.state == SingularityVerdict::State::Zero) {
        rep.residual_congruent = true; // vacuously
        return rep;
    }
    if (rep.verdict.state != SingularityVerdict::State::Singular)
        throw input_error("freitag_decompose: expansion is not mod p^m singular");
    const int r = *rep.verdict.p_rank;
    if (r == 0) {
        // constant expansion: nothing to decompose beyond the constant term
        throw input_error("freitag_decompose: p-rank 0 expansion has no theta part");
    }

    PrimitiveCoeffTable table = primitive_coeffs(f, r, det_bound);
    FourierExpansion combo(f.degree(), rep.trace_bound);
    for (const auto& [cls, star] : table.entries) {
        if (star == 0) continue;
        if (cls.eps % p == 0)
            throw input_error("freitag_decompose: eps(S) divisible by p at " +
                              cls.form.to_string() + " (need p > r+1)");
        mpq_class c = star / cls.eps;
        i64 res = residue_mod(c, p, m);
        if (res == 0) continue;
        DecompositionTerm term{cls, c, res, nu_p(c, p), std::nullopt};
        if (f.weight && f.character && cls.form.size() % 2 == 0) {
            term.chi_consistent = chi_eq_prime(*f.character, theta_character(cls.form),
                                               *f.weight, cls.form.size() / 2, p);
        }
        combo = add(combo, scale(c, theta_expansion(cls.form, f.degree(), rep.trace_bound)));
        rep.terms.push_back(std::move(term));
    }
    rep.residual_congruent = congruent(f, combo, p, m);
    return rep;
}

std::string report_to_json(const DecompositionReport& r) {
    nlohmann::json j;
    j["p"] = r.p;
    j["m"] = r.m;
    switch (r.verdict.state) {
        case SingularityVerdict::State::Zero: j["p_rank"] = nullptr; j["state"] = "zero"; break;
        case SingularityVerdict::State::Singular:
            j["p_rank"] = *r.verdict.p_rank;
            j["state"] = "singular";
            break;
        case SingularityVerdict::State::NotSingular:
            j["p_rank"] = nullptr;
            j["state"] = "not_singular";
            break;
    }
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : r.terms) {
        nlohmann::json entry;
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < t.cls.form.size(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < t.cls.form.size(); ++k) row.push_back(t.cls.form.doubled(i, k));
            rows.push_back(std::move(row));
        }
        entry["S"] = std::move(rows);
        entry["c"] = t.c_mod;
        entry["c_exact"] = t.c_exact.get_str();
        entry["nu"] = t.nu;
        entry["level"] = t.cls.form.level();
        if (t.chi_consistent) entry["chi_consistent"] = *t.chi_consistent;
        terms.push_back(std::move(entry));
    }
    j["terms"] = std::move(terms);
    j["residual_congruent"] = r.residual_congruent;
    j["trace_bound"] = r.trace_bound;
    j["det_bound"] = r.det_bound.get_str();
    return j.dump(2) + "\n";
}

bool verify_freitag_identity(const FourierExpansion& f, int r) {
    if (!f.gl_invariant)
        throw input_error("verify_freitag_identity: expansion must be tagged GL-invariant");
    if (r < 1 || r > f.degree()) throw input_error("verify_freitag_identity: bad rank");
    const i64 bound = f.trace_bound();

    // Classes whose reduced representative fits inside the bound; this set
    // is closed under the recursion because S represented by T has minima
    // bounded by those of T.
    std::vector<std::pair<ClassRep, mpq_class>> values;
    for (const auto& rep : classes_by_min_trace(r, bound))
        values.emplace_back(rep, restricted_coeff(f, rep.form));
    PrimitiveCoeffTable table = primitive_from_class_values(r, values);

    FourierExpansion combo(f.degree(), bound);
    for (const auto& [cls, star] : table.entries) {
        if (star == 0) continue;
        FourierExpansion th = theta_expansion(cls.form, f.degree(), bound);
        combo = add(combo, scale(star / cls.eps, rank_subseries(th, r)));
    }
    return equal_within(rank_subseries(f, r), combo, bound);
}

bool verify_phi_congruence(const FourierExpansion& f, i64 p, int m) {
    SingularityVerdict v = detect_singularity(f, p, m);
    if (v.state != SingularityVerdict::State::Singular || !v.p_rank || *v.p_rank < 1)
        throw input_error("verify_phi_congruence: expansion must be singular of p-rank >= 1");
    const int r = *v.p_rank;
    const int n = f.degree() - r;
    const i64 bound = f.trace_bound();

    std::vector<std::pair<ClassRep, mpq_class>> values;
    for (const auto& rep : classes_by_min_trace(r, bound))
        values.emplace_back(rep, restricted_coeff(f, rep.form));
    PrimitiveCoeffTable table = primitive_from_class_values(r, values);

    auto blocks = block_restrict(f, r);
    // every positive definite T of size r within the bound, not only the
    // ones that happen to appear in F
    std::vector<HalfIntegralForm> targets;
    if (r == 1) {
        for (i64 t = 1; t <= bound; ++t) targets.push_back(HalfIntegralForm(1, {2 * t}));
    } else if (r == 2) {
        for (i64 t1 = 1; t1 <= bound; ++t1)
            for (i64 t2 = 1; t1 + t2 <= bound; ++t2)
                for (i64 b = -2 * t1; b <= 2 * t1; ++b) {
                    if (4 * t1 * t2 - b * b <= 0) continue;
                    targets.push_back(HalfIntegralForm(2, {2 * t1, b, b, 2 * t2}));
                }
    } else {
        throw input_error("verify_phi_congruence: p-rank 1 or 2 only");
    }

    for (const auto& t : targets) {
        const i64 sub_bound = bound - t.trace();
        FourierExpansion rhs(n, sub_bound);
        for (const auto& [cls, star] : table.entries) {
            if (star == 0) continue;
            i64 count = rep_number(cls.form, t);
            if (count == 0) continue;
            mpq_class w = star * count / cls.eps;
            rhs = add(rhs, scale(w, theta_expansion(cls.form, n, sub_bound)));
        }
        auto it = blocks.find(t);
        FourierExpansion lhs = it != blocks.end() ? it->second : FourierExpansion(n, sub_bound);
        if (!congruent(lhs, rhs, p, m)) return false;
    }
    return true;
}

} // namespace singtheta
