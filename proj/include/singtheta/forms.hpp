#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "singtheta/smallmat.hpp"

namespace singtheta {

/// A half-integral symmetric matrix T (integer diagonal, half-integer
/// off-diagonal entries), stored as the doubled matrix 2T so that all
/// arithmetic stays in Z.  The doubled matrix is symmetric with even
/// diagonal.  Every API in this project accepts and emits the doubled
/// matrix; this is the only place the convention is stated.
class HalfIntegralForm {
public:
    HalfIntegralForm(int n, std::vector<i64> doubled_rowmajor);
    static HalfIntegralForm zero(int n);
    static HalfIntegralForm from_rows(const std::vector<std::vector<i64>>& rows);

    int size() const { return n_; }
    i64 doubled(int i, int j) const { return d_(i, j); }
    const Mat64& doubled_matrix() const { return d_; }

    /// tr(T); integral because the diagonal of T is.
    i64 trace() const;

    bool is_zero() const;
    int rank() const;
    i64 content() const; // throws input_error on the zero form
    i64 level() const;   // throws input_error unless positive definite
    mpz_class det_doubled() const;
    /// det(T) itself, = det(2T)/2^n, exact rational.
    mpq_class det_half() const;
    bool is_positive_definite() const;
    bool is_positive_semidefinite() const;

    /// T[U] = ^tU T U, computed on the doubled matrix.
    HalfIntegralForm transformed(const Mat64& u) const;

    HalfIntegralForm leading_block(int r) const;
    HalfIntegralForm scaled(i64 c) const;

    std::string to_string() const;

    std::strong_ordering operator<=>(const HalfIntegralForm& o) const;
    bool operator==(const HalfIntegralForm& o) const = default;

private:
    int n_;
    Mat64 d_;
};

/// diag(A, B) as a half-integral form.
HalfIntegralForm diag_join(const HalfIntegralForm& a, const HalfIntegralForm& b);
/// diag(0_n, S).
HalfIntegralForm pad_zero(int zeros, const HalfIntegralForm& s);

struct UnimodularMatrix {
    Mat64 u;
    explicit UnimodularMatrix(Mat64 m);
    int size() const { return u.rows; }
};

/// Searches for U in GL_m(Z) with S[U] = T; empty if the forms are
/// inequivalent.  Both forms must be positive definite of the same size.
std::optional<UnimodularMatrix> gl_equivalent(const HalfIntegralForm& s,
                                              const HalfIntegralForm& t);

/// eps(S): order of the integral automorphism group of a positive
/// definite S; equals the number of U with S[U] = S.
i64 automorphism_count(const HalfIntegralForm& s);

/// True iff (p-1)p^(m-1) divides 2k - r.
bool weight_congruence_holds(i64 k, i64 r, i64 p, int m);

/// Generators of GL_n(Z): coordinate swap, sign flip, shear.
std::vector<Mat64> gl_generators(int n);

} // namespace singtheta
