#pragma once

#include <string>

#include "singtheta/forms.hpp"
#include "singtheta/smallmat.hpp"

namespace singtheta {

/// A rational lattice L' containing Z^m, carried by a Hermite-normal-form
/// basis matrix (columns) together with the ambient quadratic form S.
/// gram = ^t basis * S * basis as exact rationals.
struct LatticeBasis {
    HalfIntegralForm ambient;
    MatQ basis;
    MatQ gram;

    /// [L' : Z^m]; the basis has determinant +-1/index.
    mpz_class index_over_std() const;
};

/// Lattice spanned by the columns of `gens` together with Z^m; basis is
/// put in Hermite normal form.
LatticeBasis lattice_from_generators(const HalfIntegralForm& s, const MatQ& gens);

/// The dual lattice L* = (2S)^{-1} Z^m of Z^m with respect to the
/// bilinear form b(x,y) = ^t x (2S) y.
LatticeBasis dual_lattice(const HalfIntegralForm& s);

/// The partner lattice for a divisor d of N = level(S) with
/// gcd(d, N/d) = 1: realized as L + (N/d) L*, which localizes to the dual
/// at primes dividing d and to L elsewhere.  The local characterization
/// is re-verified via elementary divisors on every call; a failure throws.
LatticeBasis kitaoka_partner(const HalfIntegralForm& s, i64 d);

struct LocalCheck {
    bool ok;
    std::string detail;
};

/// Elementary-divisor comparison of L'/Z^m against the dual quotient at
/// each prime dividing level(S): divisors must match the ones of 2S at
/// primes dividing d and be trivial elsewhere.
LocalCheck partner_local_check(const HalfIntegralForm& s, i64 d, const LatticeBasis& partner);

} // namespace singtheta
