#pragma once

#include <map>
#include <optional>
#include <string>

#include "singtheta/chars.hpp"
#include "singtheta/forms.hpp"

namespace singtheta {

/// Truncated degree-n Fourier expansion with exact rational coefficients:
/// a finite map from positive semidefinite T with tr(T) <= trace_bound to
/// Q.  Absent keys within the bound mean coefficient zero.  Degree-0
/// expansions consist of a single constant (the empty matrix is not a
/// valid HalfIntegralForm key, so the constant is stored separately).
class FourierExpansion {
public:
    FourierExpansion(int degree, i64 trace_bound);

    int degree() const { return degree_; }
    i64 trace_bound() const { return trace_bound_; }

    const std::map<HalfIntegralForm, mpq_class>& coeffs() const { return coeffs_; }

    /// Coefficient at T; zero when absent.  Throws bound_error for keys
    /// outside the stored range.
    mpq_class coeff(const HalfIntegralForm& t) const;
    mpq_class constant_term() const;

    void set_coeff(const HalfIntegralForm& t, mpq_class v);
    void add_coeff(const HalfIntegralForm& t, const mpq_class& v);
    void set_constant(mpq_class v); // degree 0 only

    bool is_zero() const;

    // expansion metadata; informational only
    std::optional<i64> weight;
    std::optional<QuadChar> character;
    std::optional<i64> level;
    bool gl_invariant = false;

private:
    int degree_;
    i64 trace_bound_;
    std::map<HalfIntegralForm, mpq_class> coeffs_;
    mpq_class const0_; // degree-0 constant
};

/// Residues of an expansion mod p^m; residues normalized to [0, p^m).
class ResidueExpansion {
public:
    ResidueExpansion(int degree, i64 trace_bound, i64 p, int m);

    int degree() const { return degree_; }
    i64 trace_bound() const { return trace_bound_; }
    i64 modulus() const { return modulus_; }
    i64 p() const { return p_; }
    int m() const { return m_; }

    const std::map<HalfIntegralForm, i64>& coeffs() const { return coeffs_; }
    i64 coeff(const HalfIntegralForm& t) const;
    i64 constant_term() const { return const0_; }
    void set_coeff(const HalfIntegralForm& t, i64 v);
    void set_constant(i64 v);

private:
    int degree_;
    i64 trace_bound_;
    i64 p_;
    int m_;
    i64 modulus_;
    std::map<HalfIntegralForm, i64> coeffs_;
    i64 const0_ = 0;
};

// residue arithmetic helpers
i64 pow_checked(i64 p, int m);
/// q mod p^m for p-integral q; throws input_error otherwise.
i64 residue_mod(const mpq_class& q, i64 p, int m);
/// p-adic valuation of a nonzero rational.
int nu_p(const mpq_class& q, i64 p);

FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g);
FourierExpansion scale(const mpq_class& c, const FourierExpansion& f);
FourierExpansion multiply(const FourierExpansion& f, const FourierExpansion& g);

ResidueExpansion reduce_mod(const FourierExpansion& f, i64 p, int m);

/// Coefficientwise congruence mod p^m over the common bound
/// min(B_f, B_g).  The verdict never claims anything beyond that bound.
bool congruent(const FourierExpansion& f, const FourierExpansion& g, i64 p, int m);

/// Degree-lowering operator: a(T) -> a(diag(T, 0)).
FourierExpansion siegel_phi(const FourierExpansion& f);

/// Subseries of coefficients with rank(T) == r.
FourierExpansion rank_subseries(const FourierExpansion& f, int r);

/// Subseries of coefficients whose leading r x r block is positive
/// definite (r == 0 keeps everything).
FourierExpansion sharp_subseries(const FourierExpansion& f, int r);

/// Block restriction: for F of degree n+r, the family phi_T of degree-n
/// expansions with phi_T[T2] = sum over off-diagonal blocks B of
/// a_F([[T,B],[tB,T2]]); phi_T has trace bound B - tr(T).
std::map<HalfIntegralForm, FourierExpansion> block_restrict(const FourierExpansion& f, int r);

// degree-1 operators
FourierExpansion u_operator(const FourierExpansion& f, i64 p);
FourierExpansion v_operator(const FourierExpansion& f, i64 p);

/// Coefficientwise equality on every key with trace <= bound.
bool equal_within(const FourierExpansion& f, const FourierExpansion& g, i64 bound);

/// Checks a(T[U]) = a(T) over the GL_n(Z) generator set whenever both
/// sides are within bound.
bool check_gl_invariance(const FourierExpansion& f);

// JSON serialization (formats are stable; keys sorted by (trace, lex))
std::string expansion_to_json(const FourierExpansion& f);
FourierExpansion expansion_from_json(const std::string& text);
std::string residues_to_json(const ResidueExpansion& f);

} // namespace singtheta
