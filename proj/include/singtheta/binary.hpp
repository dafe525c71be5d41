#pragma once

#include <string>
#include <utility>
#include <vector>

#include "singtheta/forms.hpp"

namespace singtheta {

/// Binary quadratic form a x^2 + b xy + c y^2; the associated doubled
/// matrix is [[2a, b], [b, 2c]].
struct BinaryForm {
    i64 a = 0, b = 0, c = 0;

    i64 disc() const { return b * b - 4 * a * c; }
    bool is_positive_definite() const { return a > 0 && disc() < 0; }
    bool is_reduced() const;   // |b| <= a <= c
    bool is_primitive() const;
    HalfIntegralForm form() const;
    std::string to_string() const;
    auto operator<=>(const BinaryForm&) const = default;
};

/// Gauss reduction; returns the reduced form g and U with f[U] = g.
/// The reduced representative is normalized to 0 <= b (GL_2(Z) classes,
/// improper transformations allowed).
std::pair<BinaryForm, UnimodularMatrix> gauss_reduce(const BinaryForm& f);

/// All GL_2(Z)-classes of positive definite forms of discriminant D,
/// one reduced representative (0 <= b <= a <= c) per class, sorted.
std::vector<BinaryForm> class_reps(i64 disc);

struct LevelPReps {
    std::vector<BinaryForm> reps;
    std::string warning; // nonempty when no forms of that level can exist
};

/// Representatives of the GL_2(Z)-classes of positive definite binary
/// forms of level p (p prime); nonempty only for p = 3 mod 4, where they
/// are the classes of discriminant -p.
LevelPReps level_p_reps(i64 p);

/// Primes l <= bound represented by f, with representation counts A(f,l).
std::vector<std::pair<i64, i64>> represented_primes(const BinaryForm& f, i64 bound);

/// True iff no prime l <= bound with l not dividing D is represented by
/// two GL-inequivalent primitive classes of discriminant D.
bool weber_check(i64 disc, i64 bound);

struct IndependenceResult {
    int rank;        // F_p-rank of the truncated theta coefficient matrix
    int class_count; // h_p
};

/// Rank over F_p of the matrix (A(T_i, n) mod p) for the level-p classes
/// T_i and 0 <= n <= coeff_bound.
IndependenceResult theta_independence_mod_p(i64 p, i64 coeff_bound);

/// The two-parameter family of forms p^i * [[a, b p^(j+1)], [b p^(j+1),
/// d p^(2j+1)]] with a d p - b^2 p^2 = p.  det(2 form) = 4 p^(2(i+j)+1)
/// and the odd part of the level is p^(i+2j+1); both are asserted.
struct SijForm {
    i64 p = 0;
    int i = 0, j = 0;
    i64 a = 0, b = 0, d = 0;
    HalfIntegralForm form;

    SijForm(i64 p, int i, int j, i64 a, i64 b, i64 d);
};

} // namespace singtheta
