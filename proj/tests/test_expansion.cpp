#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "singtheta/errors.hpp"
#include "singtheta/expansion.hpp"

using namespace singtheta;

namespace {

HalfIntegralForm f2(i64 a, i64 b, i64 c, i64 d) { return HalfIntegralForm(2, {a, b, c, d}); }
HalfIntegralForm f1(i64 t) { return HalfIntegralForm(1, {2 * t}); }

FourierExpansion sample2() {
    FourierExpansion f(2, 6);
    f.set_coeff(HalfIntegralForm::zero(2), 1);
    f.set_coeff(f2(2, 0, 0, 0), 2);
    f.set_coeff(f2(2, 1, 1, 2), mpq_class(1, 2));
    f.set_coeff(f2(2, 0, 0, 2), -3);
    return f;
}

} // namespace

TEST_CASE("coefficient access and validation") {
    FourierExpansion f(2, 4);
    CHECK(f.coeff(f2(2, 1, 1, 2)) == 0);
    CHECK_THROWS_AS(f.coeff(f2(10, 1, 1, 2)), bound_error);
    CHECK_THROWS_AS(f.set_coeff(f2(2, 3, 3, 2), 1), input_error); // indefinite key
    f.set_coeff(f2(2, 1, 1, 2), 5);
    f.set_coeff(f2(2, 1, 1, 2), 0);
    CHECK(f.coeffs().empty());
}

TEST_CASE("add and scale") {
    FourierExpansion f = sample2();
    FourierExpansion zero(2, 6);
    CHECK(equal_within(add(f, zero), f, 6));
    CHECK(add(f, scale(-1, f)).is_zero());
    FourierExpansion doubled = add(f, f);
    CHECK(doubled.coeff(f2(2, 1, 1, 2)) == 1);
    CHECK(scale(1, f).coeffs() == f.coeffs());
    CHECK(scale(0, f).is_zero());
    CHECK_THROWS_AS(add(f, FourierExpansion(1, 6)), input_error);
}

TEST_CASE("add truncates to the smaller bound") {
    FourierExpansion f = sample2();
    FourierExpansion g(2, 2);
    g.set_coeff(f2(2, 0, 0, 2), 3);
    FourierExpansion sum = add(f, g);
    CHECK(sum.trace_bound() == 2);
    CHECK(sum.coeff(f2(2, 0, 0, 2)) == 0);
}

TEST_CASE("reduce_mod") {
    FourierExpansion f(1, 4);
    f.set_coeff(f1(1), mpq_class(1, 2));
    f.set_coeff(f1(2), 9);
    ResidueExpansion r = reduce_mod(f, 7, 1);
    CHECK(r.coeff(f1(1)) == 4); // inverse of 2 mod 7
    CHECK(r.coeff(f1(2)) == 2);
    f.set_coeff(f1(3), mpq_class(1, 7));
    CHECK_THROWS_AS(reduce_mod(f, 7, 1), input_error);
}

TEST_CASE("congruent") {
    FourierExpansion f = sample2();
    CHECK(congruent(f, f, 7, 2));
    FourierExpansion g = add(f, scale(7, sample2()));
    CHECK(congruent(f, g, 7, 1));
    CHECK(!congruent(f, g, 7, 2));
    FourierExpansion h = f;
    h.set_coeff(f2(2, 1, 1, 4), 1);
    CHECK(!congruent(f, h, 7, 1));
}

TEST_CASE("residue helpers") {
    CHECK(residue_mod(mpq_class(1, 2), 7, 1) == 4);
    CHECK(residue_mod(mpq_class(50), 7, 2) == 1);
    CHECK_THROWS_AS(residue_mod(mpq_class(1, 7), 7, 1), input_error);
    CHECK(nu_p(mpq_class(49, 3), 7) == 2);
    CHECK(nu_p(mpq_class(3, 2), 7) == 0);
}

TEST_CASE("siegel_phi strips a zero row and column") {
    FourierExpansion f(2, 6);
    f.set_coeff(HalfIntegralForm::zero(2), 1);
    f.set_coeff(f2(4, 0, 0, 0), 5);
    f.set_coeff(f2(2, 1, 1, 2), 9); // not supported on diag(*, 0)
    FourierExpansion g = siegel_phi(f);
    CHECK(g.degree() == 1);
    CHECK(g.trace_bound() == 6);
    CHECK(g.coeff(f1(2)) == 5);
    CHECK(g.coeff(f1(1)) == 0);
    CHECK(g.constant_term() == 1);

    FourierExpansion h = siegel_phi(g); // down to degree 0
    CHECK(h.degree() == 0);
    CHECK(h.constant_term() == 1);
    CHECK_THROWS_AS(siegel_phi(h), input_error);
    CHECK(siegel_phi(FourierExpansion(2, 6)).is_zero());
}

TEST_CASE("rank partition reassembles the expansion") {
    FourierExpansion f = sample2();
    FourierExpansion sum(2, 6);
    for (int r = 0; r <= 2; ++r) sum = add(sum, rank_subseries(f, r));
    CHECK(equal_within(sum, f, 6));
    CHECK(rank_subseries(f, 0).coeffs().size() == 1); // constant only
}

TEST_CASE("phi commutes with scale") {
    FourierExpansion f = sample2();
    CHECK(equal_within(siegel_phi(scale(mpq_class(3, 7), f)),
                       scale(mpq_class(3, 7), siegel_phi(f)), 6));
}

TEST_CASE("sharp subseries") {
    FourierExpansion f = sample2();
    CHECK(equal_within(sharp_subseries(f, 0), f, 6));
    FourierExpansion top = sharp_subseries(f, 2);
    CHECK(top.coeff(f2(2, 1, 1, 2)) == mpq_class(1, 2));
    CHECK(top.coeff(f2(2, 0, 0, 0)) == 0);
    FourierExpansion corner = sharp_subseries(f, 1);
    CHECK(corner.coeff(f2(2, 0, 0, 0)) == 2);
    CHECK(corner.coeff(HalfIntegralForm::zero(2)) == 0);
}

TEST_CASE("block restriction, degree 1+1") {
    // off-diagonal entries bounded by semidefiniteness: |b| <= sqrt(4 t1 t2)
    FourierExpansion f(2, 6);
    f.set_coeff(f2(2, 2, 2, 2), 3);  // b at the boundary, rank 1
    f.set_coeff(f2(2, 0, 0, 2), 4);
    f.set_coeff(f2(2, -1, -1, 4), 5);
    f.set_coeff(f2(4, 0, 0, 0), 7);
    auto blocks = block_restrict(f, 1);
    REQUIRE(blocks.count(f1(1)) == 1);
    const FourierExpansion& phi1 = blocks.at(f1(1));
    CHECK(phi1.trace_bound() == 5);
    CHECK(phi1.coeff(f1(1)) == 7); // 3 + 4 from the two completions
    CHECK(phi1.coeff(f1(2)) == 5);
    const FourierExpansion& phi2 = blocks.at(f1(2));
    CHECK(phi2.coeff(HalfIntegralForm::zero(1)) == 7);
}

TEST_CASE("block restriction down to degree zero") {
    FourierExpansion f(2, 6);
    f.set_coeff(f2(2, 1, 1, 2), 3);
    f.set_coeff(f2(2, -1, -1, 2), 4);
    auto blocks = block_restrict(f, 2);
    CHECK(blocks.at(f2(2, 1, 1, 2)).constant_term() == 3);
    CHECK(blocks.at(f2(2, -1, -1, 2)).constant_term() == 4);
}

TEST_CASE("u and v operators") {
    FourierExpansion f(1, 15);
    for (i64 t = 0; t <= 15; ++t) f.set_coeff(f1(t), t + 1);
    FourierExpansion u = u_operator(f, 3);
    CHECK(u.trace_bound() == 5);
    CHECK(u.coeff(f1(2)) == 7); // a(6)
    FourierExpansion v = v_operator(f, 3);
    CHECK(v.trace_bound() == 45);
    CHECK(v.coeff(f1(6)) == 3);  // a(2)
    CHECK(v.coeff(f1(7)) == 0);  // off the dilated support
    // U(p) after V(p) is the identity on truncations
    CHECK(equal_within(u_operator(v_operator(f, 3), 3), f, 15));
    // constants pass through U(p)
    FourierExpansion one(1, 9);
    one.set_coeff(f1(0), 1);
    CHECK(u_operator(one, 3).coeff(f1(0)) == 1);
    CHECK(v_operator(FourierExpansion(1, 9), 3).is_zero());
    CHECK_THROWS_AS(u_operator(sample2(), 3), input_error);
}

TEST_CASE("multiply against hand convolution") {
    FourierExpansion f(1, 4), g(1, 4);
    f.set_coeff(f1(0), 1);
    f.set_coeff(f1(1), 2);
    g.set_coeff(f1(1), 3);
    g.set_coeff(f1(2), 5);
    FourierExpansion prod = multiply(f, g);
    CHECK(prod.coeff(f1(1)) == 3);
    CHECK(prod.coeff(f1(2)) == 11); // 1*5 + 2*3
    CHECK(prod.coeff(f1(3)) == 10);
    FourierExpansion one(1, 4);
    one.set_coeff(f1(0), 1);
    CHECK(equal_within(multiply(f, one), f, 4));
}

TEST_CASE("gl invariance checker") {
    FourierExpansion f(2, 6);
    f.set_coeff(f2(2, 1, 1, 2), 1);
    CHECK(!check_gl_invariance(f)); // the transform (a,-b,c) is missing
    f.set_coeff(f2(2, -1, -1, 2), 1);
    // closing the orbit within the bound needs all shear images too
    FourierExpansion g(2, 6);
    g.set_coeff(HalfIntegralForm::zero(2), 5);
    CHECK(check_gl_invariance(g));
}

TEST_CASE("degree zero arithmetic") {
    FourierExpansion f(0, 3);
    f.set_constant(mpq_class(5, 3));
    CHECK(f.constant_term() == mpq_class(5, 3));
    CHECK(add(f, scale(-1, f)).is_zero());
    CHECK(congruent(f, f, 5, 2));
    CHECK(multiply(f, f).constant_term() == mpq_class(25, 9));
}

TEST_CASE("json round trip and canonical ordering") {
    FourierExpansion f = sample2();
    f.weight = 1;
    f.level = 3;
    f.character = QuadChar::legendre(3);
    f.gl_invariant = true;
    std::string text = expansion_to_json(f);
    FourierExpansion g = expansion_from_json(text);
    CHECK(equal_within(f, g, 6));
    CHECK(g.weight == f.weight);
    CHECK(g.level == f.level);
    REQUIRE(g.character.has_value());
    CHECK(g.character->same_character(*f.character));
    CHECK(g.gl_invariant);
    CHECK(expansion_to_json(g) == text); // byte-identical re-serialization

    FourierExpansion zero0 = expansion_from_json(expansion_to_json(FourierExpansion(0, 2)));
    CHECK(zero0.degree() == 0);
    CHECK(zero0.is_zero());
    CHECK_THROWS_AS(expansion_from_json("{"), input_error);
    CHECK_THROWS_AS(expansion_from_json("{}"), input_error);
}

TEST_CASE("residue json") {
    FourierExpansion f(1, 3);
    f.set_coeff(f1(1), mpq_class(1, 2));
    std::string text = residues_to_json(reduce_mod(f, 7, 1));
    CHECK(text.find("\"modulus\": 7") != std::string::npos);
    CHECK(text.find("\"a\": 4") != std::string::npos);
}
