#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "singtheta/binary.hpp"
#include "singtheta/errors.hpp"
#include "singtheta/theta.hpp"

using namespace singtheta;

TEST_CASE("gauss reduction") {
    auto [red, u] = gauss_reduce({1, 0, 1});
    CHECK(red == BinaryForm{1, 0, 1});
    CHECK(u.u == Mat64::identity(2));

    auto [red2, u2] = gauss_reduce({3, 2, 1});
    CHECK(red2 == BinaryForm{1, 0, 2});
    CHECK(BinaryForm{3, 2, 1}.form().transformed(u2.u) == red2.form());

    // (a, b, c) and (a, -b, c) land on the same representative
    auto [r3, u3] = gauss_reduce({4, 3, 5});
    auto [r4, u4] = gauss_reduce({4, -3, 5});
    (void)u3; (void)u4;
    CHECK(r3 == r4);

    CHECK_THROWS_AS(gauss_reduce({1, 3, 1}), input_error);
}

TEST_CASE("reduction of random forms reaches the class list") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        i64 a = 1 + static_cast<i64>(rng() % 8);
        i64 b = static_cast<i64>(rng() % 17) - 8;
        i64 c = 1 + static_cast<i64>(rng() % 8);
        BinaryForm f{a, b, c};
        if (!f.is_positive_definite()) continue;
        auto [red, u] = gauss_reduce(f);
        (void)u;
        CHECK(red.is_reduced());
        CHECK(red.b >= 0);
        auto reps = class_reps(f.disc());
        CHECK(std::find(reps.begin(), reps.end(), red) != reps.end());
    }
}

TEST_CASE("class representatives") {
    CHECK(class_reps(-4) == std::vector<BinaryForm>{{1, 0, 1}});
    CHECK(class_reps(-7) == std::vector<BinaryForm>{{1, 1, 2}});
    CHECK(class_reps(-23) == std::vector<BinaryForm>{{1, 1, 6}, {2, 1, 3}});
    CHECK(class_reps(-3) == std::vector<BinaryForm>{{1, 1, 1}});
    CHECK(class_reps(-12) == std::vector<BinaryForm>{{1, 0, 3}, {2, 2, 2}});
    CHECK(class_reps(-84).size() == 4);
    CHECK_THROWS_AS(class_reps(-5), input_error);
    CHECK_THROWS_AS(class_reps(4), input_error);
}

TEST_CASE("class representatives are pairwise inequivalent and exhaustive") {
    for (i64 d : {-23, -84, -47}) {
        auto reps = class_reps(d);
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j)
                CHECK(!gl_equivalent(reps[i].form(), reps[j].form()).has_value());
    }
}

TEST_CASE("level p representatives") {
    auto r7 = level_p_reps(7);
    CHECK(r7.warning.empty());
    CHECK(r7.reps == std::vector<BinaryForm>{{1, 1, 2}});
    auto r23 = level_p_reps(23);
    CHECK(r23.reps.size() == 2);
    auto r3 = level_p_reps(3);
    CHECK(r3.reps == std::vector<BinaryForm>{{1, 1, 1}});
    auto r5 = level_p_reps(5);
    CHECK(r5.reps.empty());
    CHECK(!r5.warning.empty());
    for (const auto& f : r23.reps) CHECK(f.form().level() == 23);
}

TEST_CASE("represented primes") {
    auto sums = represented_primes({1, 0, 1}, 20);
    std::vector<i64> primes;
    for (auto [l, cnt] : sums) {
        primes.push_back(l);
        CHECK(cnt > 0);
    }
    CHECK(primes == std::vector<i64>{2, 5, 13, 17});

    auto seven = represented_primes({1, 1, 2}, 20);
    std::vector<i64> got;
    for (auto [l, cnt] : seven) got.push_back(l);
    CHECK(std::find(got.begin(), got.end(), 2) != got.end());
    CHECK(std::find(got.begin(), got.end(), 7) != got.end());
    CHECK(std::find(got.begin(), got.end(), 11) != got.end());
}

TEST_CASE("represented prime counts away from the discriminant are 2, 4 or 6") {
    for (const BinaryForm f : {BinaryForm{1, 1, 2}, BinaryForm{2, 1, 3}, BinaryForm{1, 1, 6}}) {
        for (auto [l, cnt] : represented_primes(f, 200)) {
            if (f.disc() % l == 0) continue;
            CHECK((cnt == 2 || cnt == 4 || cnt == 6));
            CHECK(cnt == rep_number(f.form(), HalfIntegralForm(1, {2 * l})));
        }
    }
}

TEST_CASE("weber check") {
    CHECK(weber_check(-23, 200));
    CHECK(weber_check(-4, 200));
    CHECK(weber_check(-84, 200));
}

TEST_CASE("independence ranks") {
    auto r7 = theta_independence_mod_p(7, 60);
    CHECK(r7.class_count == 1);
    CHECK(r7.rank == 1);
    auto r23 = theta_independence_mod_p(23, 60);
    CHECK(r23.class_count == 2);
    CHECK(r23.rank == 2);
    auto r5 = theta_independence_mod_p(5, 60);
    CHECK(r5.class_count == 0);
    CHECK(r5.rank == 0);
    CHECK(r23.rank <= r23.class_count);
}

TEST_CASE("sij family") {
    SijForm s(7, 0, 0, 1, 0, 1);
    CHECK(s.form.doubled_matrix() == HalfIntegralForm(2, {2, 0, 0, 14}).doubled_matrix());
    CHECK(s.form.det_doubled() == 28);

    // scaling: S(i,j) = p^i * S(0,j)
    SijForm s2(7, 2, 1, 1, 1, 8);
    SijForm s0(7, 0, 1, 1, 1, 8);
    CHECK(s2.form.doubled_matrix() == s0.form.scaled(49).doubled_matrix());

    CHECK_THROWS_AS(SijForm(7, 0, 0, 1, 1, 1), input_error); // relation violated
    CHECK_THROWS_AS(SijForm(7, 0, 0, -1, 0, -1), input_error);
}

TEST_CASE("sij determinant and level identities hold across the family") {
    for (i64 p : {3, 7}) {
        const std::vector<std::array<i64, 3>> params = {{1, 0, 1}, {1, 1, p + 1}, {p + 1, 1, 1}};
        for (const auto& [a, b, d] : params)
            for (int i = 0; i <= 2; ++i)
                for (int j = 0; j <= 2; ++j) {
                    SijForm s(p, i, j, a, b, d); // constructor asserts both identities
                    CHECK(s.form.is_positive_definite());
                }
    }
}
