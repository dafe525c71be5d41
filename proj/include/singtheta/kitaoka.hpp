#pragma once

#include <complex>
#include <span>
#include <vector>

#include "singtheta/lattice.hpp"

namespace singtheta {

/// An SL_2(Z) matrix [[a,b],[c,d]] whose lower row encodes a cusp of
/// Gamma_0(N): the lower-right entry is a divisor of N with
/// gcd(divisor, N/divisor) = 1 and c = N/divisor.
struct CuspMatrix {
    i64 a = 1, b = 0, c = 0, d = 1;

    CuspMatrix(i64 a, i64 b, i64 c, i64 d);
    /// Deterministic choice of a, b for the cusp attached to `divisor`.
    static CuspMatrix for_level_divisor(i64 level, i64 divisor);

    std::complex<double> apply(std::complex<double> z) const;
};

/// Degree-1 theta value sum_x e(S[x] z), truncated so that doubling the
/// cut-off radius changes the result by less than tail_eps.
std::complex<double> numeric_theta(const HalfIntegralForm& s, std::complex<double> z,
                                   double tail_eps = 1e-12);
std::complex<double> numeric_theta(const MatQ& gram, std::complex<double> z,
                                   double tail_eps = 1e-12);

struct KitaokaResult {
    std::complex<double> kappa;
    double max_deviation = 0;
    int samples_used = 0;
    CuspMatrix cusp{1, 0, 0, 1};
};

/// Evaluates (theta_S |_k M)(z_i) / theta_{L'}(z_i) at the samples, where
/// L' is the partner lattice for the divisor in M; returns the mean ratio
/// and the worst deviation from it.  Constancy of the ratio is the
/// transformation identity being verified.
KitaokaResult verify_kitaoka_deg1(const HalfIntegralForm& s, const CuspMatrix& m, i64 k,
                                  std::span<const std::complex<double>> samples,
                                  double tail_eps = 1e-12);

} // namespace singtheta
