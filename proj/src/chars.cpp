#include "singtheta/chars.hpp"

#include <numeric>

#include "singtheta/errors.hpp"

namespace singtheta {

QuadChar::QuadChar(i64 modulus, int sign_exp, std::vector<mpz_class> factors)
    : modulus_(modulus), sign_exp_(sign_exp & 1), factors_(std::move(factors)) {
    if (modulus < 1) throw input_error("QuadChar: modulus must be positive");
}

QuadChar QuadChar::trivial(i64 modulus) { return QuadChar(modulus, 0, {}); }

QuadChar QuadChar::legendre(i64 p) {
    if (p < 3 || p % 2 == 0) throw input_error("QuadChar::legendre: odd prime required");
    // (d/p) = (p*/|d|) * ((-1)^((p-1)/2))^[d<0]  with p* = (-1)^((p-1)/2) p
    const int s = static_cast<int>(((p - 1) / 2) % 2);
    mpz_class pstar(static_cast<long>(p));
    if (s) pstar = -pstar;
    return QuadChar(p, s, {pstar});
}

int QuadChar::operator()(const mpz_class& d) const {
    mpz_class g = gcd(d, mpz_class(static_cast<long>(modulus_)));
    if (g != 1) return 0;
    mpz_class ad = abs(d);
    int v = 1;
    for (const auto& f : factors_) v *= mpz_kronecker(f.get_mpz_t(), ad.get_mpz_t());
    if (sign_exp_ && d < 0) v = -v;
    return v;
}

QuadChar QuadChar::times(const QuadChar& o) const {
    std::vector<mpz_class> f = factors_;
    f.insert(f.end(), o.factors_.begin(), o.factors_.end());
    return QuadChar(std::lcm(modulus_, o.modulus_), sign_exp_ ^ o.sign_exp_, std::move(f));
}

bool QuadChar::same_character(const QuadChar& o, i64 extra_modulus) const {
    const i64 l = std::lcm(std::lcm(modulus_, o.modulus_), extra_modulus);
    for (i64 d = 1; d <= l; ++d) {
        if (std::gcd(d, l) != 1) continue;
        if ((*this)(d) != o(d)) return false;
        if ((*this)(-d) != o(-d)) return false;
    }
    return true;
}

QuadChar theta_character(const HalfIntegralForm& s) {
    if (s.size() % 2 != 0)
        throw input_error("theta_character: the size of the form must be even");
    if (!s.is_positive_definite())
        throw input_error("theta_character: form must be positive definite");
    mpz_class d = s.det_doubled();
    if ((s.size() / 2) % 2 != 0) d = -d;
    return QuadChar(s.level(), (s.size() / 2) % 2, {d});
}

bool chi_eq_prime(const QuadChar& chi, const QuadChar& chi2, i64 k, i64 k2, i64 p) {
    if (p < 3) throw input_error("chi_eq_prime: odd prime required");
    const i64 twice_diff = 2 * (k - k2);
    if (twice_diff % (p - 1) != 0)
        throw input_error("chi_eq_prime: t undefined (k-k2 not a multiple of (p-1)/2)");
    const i64 t = twice_diff / (p - 1);
    QuadChar rhs = (t % 2 == 0) ? chi2 : chi2.times(QuadChar::legendre(p));
    return chi.same_character(rhs, p);
}

} // namespace singtheta
