#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "singtheta/enumerate.hpp"
#include "singtheta/errors.hpp"

using namespace singtheta;

namespace {

Mat64 mat2(i64 a, i64 b, i64 c, i64 d) {
    Mat64 m(2, 2);
    m(0, 0) = a; m(0, 1) = b; m(1, 0) = c; m(1, 1) = d;
    return m;
}

} // namespace

TEST_CASE("vectors of a fixed value, sum of two squares") {
    FormEnumerator en(mat2(2, 0, 0, 2)); // doubled x^2 + y^2
    CHECK(en.with_value(2).size() == 4);   // value 1 of the form
    CHECK(en.with_value(4).size() == 4);   // (+-1, +-1)
    CHECK(en.with_value(6).size() == 0);   // 3 is not a sum of two squares
    CHECK(en.with_value(0).size() == 1);
    CHECK(en.with_value(-2).empty());
}

TEST_CASE("hexagonal counts") {
    FormEnumerator en(mat2(2, 1, 1, 2));
    CHECK(en.with_value(2).size() == 6); // six minimal vectors
    CHECK(en.with_value(4).size() == 0);
    CHECK(en.with_value(6).size() == 6);
}

TEST_CASE("up_to matches per-value counts and is sorted") {
    Mat64 q = mat2(2, 1, 1, 4);
    FormEnumerator en(q);
    auto all = en.up_to(20);
    i64 prev = -1;
    size_t total = 0;
    for (const auto& [x, v] : all) {
        CHECK(en.value_of(x) == v);
        CHECK(v >= prev);
        prev = v;
        ++total;
    }
    for (i64 g = 0; g <= 20; ++g) {
        size_t direct = en.with_value(g).size();
        size_t from_up_to = 0;
        for (const auto& [x, v] : all)
            if (v == g) ++from_up_to;
        CHECK(direct == from_up_to);
    }
    CHECK(total == all.size());
}

TEST_CASE("agrees with the grid oracle on a 3x3 form") {
    Mat64 q(3, 3);
    i64 vals[9] = {2, 1, 0, 1, 4, 1, 0, 1, 6};
    for (int i = 0; i < 9; ++i) q.a[static_cast<size_t>(i)] = vals[i];
    FormEnumerator en(q);
    for (i64 g : {0, 2, 4, 6, 8, 10}) {
        Mat64 target(1, 1);
        target(0, 0) = g;
        CHECK(static_cast<i64>(en.with_value(g).size()) == oracles::grid_rep_count(q, target));
    }
}

TEST_CASE("rejects indefinite and asymmetric input") {
    CHECK_THROWS_AS(FormEnumerator(mat2(2, 3, 3, 2)), input_error);
    CHECK_THROWS_AS(FormEnumerator(mat2(2, 1, 0, 2)), input_error);
}
