#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singtheta/expansion.hpp"

namespace singtheta {

/// Outcome of scanning an expansion for mod p^m singular behavior.
/// Zero: everything vanishes mod p^m within the bound.
/// Singular: coefficients of rank > p_rank vanish mod p^m and some
///   rank-p_rank coefficient is a unit mod p (the witness).
/// NotSingular: the top surviving rank has no unit coefficient mod p.
/// Every verdict is qualified by the trace bound it was computed under.
struct SingularityVerdict {
    enum class State { Zero, Singular, NotSingular };
    i64 p = 0;
    int m = 0;
    State state = State::Zero;
    std::optional<int> p_rank;
    i64 trace_bound = 0;
    std::optional<HalfIntegralForm> witness;
};

SingularityVerdict detect_singularity(const FourierExpansion& f, i64 p, int m);

/// a(S) := a_F(diag(0, S)) for S of size r <= degree(F).
mpq_class restricted_coeff(const FourierExpansion& f, const HalfIntegralForm& s);

/// One GL-class of positive definite forms of size r, keyed by a reduced
/// representative.
struct ClassRep {
    HalfIntegralForm form;
    mpq_class det;  // det of the half-integral matrix itself
    i64 eps;        // automorphism count
};

/// GL-classes of positive definite size-r forms with det <= det_bound,
/// sorted by (det, representative).  Exact for r <= 2; larger r is out of
/// scope and throws.
std::vector<ClassRep> classes_by_det(int r, const mpq_class& det_bound);

/// GL-classes whose reduced representative has trace <= trace_bound,
/// sorted by (det, representative).  This set is closed under passing to
/// forms represented by its members.
std::vector<ClassRep> classes_by_min_trace(int r, i64 trace_bound);

/// Smallest trace bound that makes every reduced representative with
/// det <= det_bound visible as a(diag(0, S)).
i64 min_trace_for_det_bound(int r, const mpq_class& det_bound);

/// Primitive coefficients a*(S) on a set of classes, obtained from the
/// plain restricted coefficients by the determinant-increasing recursion
///   a*(T) = a(T) - sum_{det S < det T} (a*(S)/eps(S)) * N(S,T),
/// N = square_rep_count.  Classes of equal determinant never interact.
struct PrimitiveCoeffTable {
    int r = 0;
    std::vector<std::pair<ClassRep, mpq_class>> entries; // det ascending

    mpq_class value(const HalfIntegralForm& reduced_rep) const;
    /// Reconstructs a(T) = sum_S (a*(S)/eps(S)) * N(S,T).
    mpq_class reconstruct(const HalfIntegralForm& t) const;
};

PrimitiveCoeffTable primitive_from_class_values(
    int r, const std::vector<std::pair<ClassRep, mpq_class>>& restricted_values);

/// Table over all classes with det <= det_bound, reading a(S) off the
/// expansion.  Throws bound_error naming the first representative whose
/// trace exceeds the stored range.
PrimitiveCoeffTable primitive_coeffs(const FourierExpansion& f, int r,
                                     const mpq_class& det_bound);

struct DecompositionTerm {
    ClassRep cls;
    mpq_class c_exact; // a*(S)/eps(S)
    i64 c_mod;         // residue mod p^m, nonzero
    int nu;            // p-adic valuation of c_exact
    std::optional<bool> chi_consistent;
};

struct DecompositionReport {
    i64 p = 0;
    int m = 0;
    SingularityVerdict verdict;
    std::vector<DecompositionTerm> terms;
    bool residual_congruent = false;
    i64 trace_bound = 0;     // bound the residual was verified under
    mpq_class det_bound;
};

/// Decomposes a mod p^m singular expansion of p-rank r into theta series:
/// c_S = a*(S)/eps(S) mod p^m over classes with det <= det_bound, dropping
/// terms that vanish mod p^m; the residual congruence
/// F = sum c_S theta_S^(deg F) mod p^m is then verified within trace_bound.
DecompositionReport freitag_decompose(const FourierExpansion& f, i64 p, int m,
                                      const mpq_class& det_bound, i64 trace_bound);

std::string report_to_json(const DecompositionReport& r);

/// Exact identity between the rank-r subseries of F and the finite theta
/// combination with weights a*(S)/eps(S).  F must be tagged GL-invariant.
bool verify_freitag_identity(const FourierExpansion& f, int r);

/// For a mod p^m singular F of p-rank r, checks the block-restriction
/// congruence phi_T = sum_S A(S,T) (a*(S)/eps(S)) theta_S mod p^m for
/// every positive definite T of size r within bound.
bool verify_phi_congruence(const FourierExpansion& f, i64 p, int m);

} // namespace singtheta
