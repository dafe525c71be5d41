#pragma once

#include <vector>

#include "singtheta/forms.hpp"

namespace singtheta {

/// A quadratic Dirichlet character given as a product of Kronecker-symbol
/// factors (D_i / |d|) together with a sign exponent s contributing
/// sign(d)^s.  Values are in {-1, 0, +1}; arguments sharing a factor with
/// the modulus evaluate to 0.
class QuadChar {
public:
    QuadChar(i64 modulus, int sign_exp, std::vector<mpz_class> factors);
    static QuadChar trivial(i64 modulus);
    /// The nontrivial quadratic character mod an odd prime p.
    static QuadChar legendre(i64 p);

    int operator()(const mpz_class& d) const;
    int operator()(i64 d) const { return (*this)(mpz_class(static_cast<long>(d))); }

    i64 modulus() const { return modulus_; }
    int sign_exp() const { return sign_exp_; }
    const std::vector<mpz_class>& factors() const { return factors_; }

    QuadChar times(const QuadChar& o) const;

    /// Pointwise equality on +-d for every d coprime to the lcm of the
    /// moduli (and any extra modulus the caller wants included).
    bool same_character(const QuadChar& o, i64 extra_modulus = 1) const;

private:
    i64 modulus_;
    int sign_exp_; // 0 or 1
    std::vector<mpz_class> factors_;
};

/// chi_S(d) = sign(d)^{m/2} * ((-1)^{m/2} det 2S / |d|) as a character mod
/// level(S).  Requires S positive definite of even size.
QuadChar theta_character(const HalfIntegralForm& s);

/// The ='-relation between quadratic characters mod pN attached to weights
/// k and k2: chi =' chi2  iff  chi == chi2 * (*/p)^t with t = 2(k-k2)/(p-1).
/// Throws input_error when t is not an integer.
bool chi_eq_prime(const QuadChar& chi, const QuadChar& chi2, i64 k, i64 k2, i64 p);

} // namespace singtheta
