#include "singtheta/kitaoka.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "singtheta/enumerate.hpp"
#include "singtheta/errors.hpp"

namespace singtheta {

CuspMatrix::CuspMatrix(i64 a_, i64 b_, i64 c_, i64 d_) : a(a_), b(b_), c(c_), d(d_) {
    if (a * d - b * c != 1) throw input_error("CuspMatrix: determinant must be 1");
}

CuspMatrix CuspMatrix::for_level_divisor(i64 level, i64 divisor) {
    if (divisor < 1 || level % divisor != 0)
        throw input_error("CuspMatrix: divisor must divide the level");
    const i64 c = level / divisor;
    if (std::gcd(divisor, c) != 1)
        throw input_error("CuspMatrix: gcd(divisor, level/divisor) must be 1");
    // a*divisor - b*c = 1 via extended gcd
    i64 old_r = divisor, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
        std::tie(old_t, t) = std::pair{t, old_t - q * t};
    }
    // old_s*divisor + old_t*c == 1
    return CuspMatrix(old_s, -old_t, c, divisor);
}

std::complex<double> CuspMatrix::apply(std::complex<double> z) const {
    return (double(a) * z + double(b)) / (double(c) * z + double(d));
}

namespace {

// partial theta sum over doubled values <= radius
std::complex<double> theta_partial(const FormEnumerator& en, double denom,
                                   std::complex<double> z, i64 radius) {
    // term for x is exp(pi*i * (Q[x]/denom) * z) with Q the integer matrix
    // handed to the enumerator (doubled and denominator-cleared)
    std::complex<double> acc(0, 0);
    for (const auto& [x, v] : en.up_to(radius)) {
        (void)x;
        std::complex<double> expo =
            std::complex<double>(0, std::numbers::pi) * (double(v) / denom) * z;
        acc += std::exp(expo);
    }
    return acc;
}

std::complex<double> theta_by_doubling(const FormEnumerator& en, double denom,
                                       std::complex<double> z, double tail_eps) {
    if (z.imag() <= 0) throw input_error("numeric_theta: Im z must be positive");
    // initial radius from the scalar Gaussian tail, then double until stable
    double y = z.imag();
    i64 radius = static_cast<i64>(std::ceil(denom * (-std::log(tail_eps) + 8) /
                                            (std::numbers::pi * y))) + 4;
    std::complex<double> prev = theta_partial(en, denom, z, radius);
    for (int iter = 0; iter < 24; ++iter) {
        radius *= 2;
        std::complex<double> next = theta_partial(en, denom, z, radius);
        if (std::abs(next - prev) < tail_eps) return next;
        prev = next;
    }
    throw input_error("numeric_theta: truncation did not stabilize");
}

} // namespace

std::complex<double> numeric_theta(const HalfIntegralForm& s, std::complex<double> z,
                                   double tail_eps) {
    if (!s.is_positive_definite())
        throw input_error("numeric_theta: form must be positive definite");
    FormEnumerator en(s.doubled_matrix());
    return theta_by_doubling(en, 1.0, z, tail_eps);
}

std::complex<double> numeric_theta(const MatQ& gram, std::complex<double> z,
                                   double tail_eps) {
    MatQ doubled = gram;
    for (auto& v : doubled.a) { v *= 2; v.canonicalize(); }
    mpz_class lambda;
    MatZ scaled = clear_denominators(doubled, lambda);
    Mat64 q(scaled.rows, scaled.cols);
    for (size_t i = 0; i < scaled.a.size(); ++i) {
        if (!scaled.a[i].fits_slong_p()) throw input_error("numeric_theta: Gram overflow");
        q.a[i] = scaled.a[i].get_si();
    }
    FormEnumerator en(q);
    return theta_by_doubling(en, lambda.get_d(), z, tail_eps);
}

KitaokaResult verify_kitaoka_deg1(const HalfIntegralForm& s, const CuspMatrix& m, i64 k,
                                  std::span<const std::complex<double>> samples,
                                  double tail_eps) {
    if (samples.empty()) throw input_error("verify_kitaoka_deg1: need at least one sample");
    LatticeBasis partner = kitaoka_partner(s, m.d);
    std::vector<std::complex<double>> ratios;
    ratios.reserve(samples.size());
    for (const auto& z : samples) {
        if (z.imag() <= 0) throw input_error("verify_kitaoka_deg1: Im z must be positive");
        std::complex<double> cz_d = double(m.c) * z + double(m.d);
        std::complex<double> lhs = std::pow(cz_d, -double(k)) * numeric_theta(s, m.apply(z), tail_eps);
        std::complex<double> rhs = numeric_theta(partner.gram, z, tail_eps);
        if (std::abs(rhs) <= tail_eps)
            throw input_error("verify_kitaoka_deg1: theta value too small at sample, resample");
        ratios.push_back(lhs / rhs);
    }
    std::complex<double> mean(0, 0);
    for (const auto& r : ratios) mean += r;
    mean /= double(ratios.size());
    double dev = 0;
    for (const auto& r : ratios) dev = std::max(dev, std::abs(r - mean));
    return {mean, dev, static_cast<int>(ratios.size()), m};
}

} // namespace singtheta
