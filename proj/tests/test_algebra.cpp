// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "helpers.hpp"
#include "zstab/algebra.hpp"
#include "zstab/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace zstab;
using zstab::testing::line_scene;
using zstab::testing::make_scene;

TEST_CASE("pairing is the dot product") {
    CHECK(pairing(std::vector<long long>{2, -1}, GroupDirection{1.0, 1.0}) == 1.0);
    CHECK(pairing(std::vector<long long>{0, 0}, GroupDirection{3.5, -2.25}) == 0.0);
    CHECK(pairing(std::vector<long long>{3}, Cocharacter{-2}) == -6);
    CHECK_THROWS_AS(pairing(std::vector<long long>{1, 2}, GroupDirection{1.0}), precondition_error);
}

TEST_CASE("act: identity and real rescaling") {
    Scene s = line_scene({1, -1}, {{1, 0}, {1, 0}});
    Scene same = act(s, {0.0}, {0.0});
    double ratio0 = std::abs(same.point[0][0]) / std::abs(same.point[0][1]);
    CHECK(ratio0 == Catch::Approx(1.0));

    Scene moved = act(s, {std::log(2.0)}, {0.0});
    double ratio = std::abs(moved.point[0][0]) / std::abs(moved.point[0][1]);
    CHECK(ratio == Catch::Approx(4.0));  // [2 : 1/2] == [4 : 1]
}

TEST_CASE("act: compact directions preserve moduli") {
    Scene s = line_scene({2, 0, -1}, {{1, 1}, {0.5, -0.25}, {0, 2}});
    Scene rotated = act(s, {0.0}, {0.7});
    for (std::size_t i = 0; i < 3; ++i) {
        double before = std::abs(s.point[0][i]) / std::abs(s.point[0][1]);
        double after = std::abs(rotated.point[0][i]) / std::abs(rotated.point[0][1]);
        CHECK(after == Catch::Approx(before).margin(1e-12));
    }
}

TEST_CASE("act is an abelian group action on projective points") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Scene s = make_scene(2, {{{{1, 0}, {1, 3}, {0, 3}, {-2, 1}},
                                  {{1, 0.5}, {2, 0}, {0, -1}, {0.25, 0.25}}}});
        GroupDirection s1{0.3 * rng.in_range(-3, 3), 0.1 * rng.in_range(-4, 4)};
        GroupDirection t1{0.2 * rng.in_range(-3, 3), 0.05 * rng.in_range(-4, 4)};
        GroupDirection s2{0.15 * rng.in_range(-3, 3), 0.25 * rng.in_range(-4, 4)};
        GroupDirection t2{0.4 * rng.in_range(-3, 3), 0.3 * rng.in_range(-4, 4)};
        Scene two_step = act(act(s, s1, t1), s2, t2);
        GroupDirection ssum{s1[0] + s2[0], s1[1] + s2[1]};
        GroupDirection tsum{t1[0] + t2[0], t1[1] + t2[1]};
        Scene one_step = act(s, ssum, tsum);
        // compare as projective points: cross-ratios of coordinates
        for (std::size_t i = 0; i < 4; ++i) {
            std::complex<double> lhs = two_step.point[0][i] * one_step.point[0][0];
            std::complex<double> rhs = one_step.point[0][i] * two_step.point[0][0];
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
}

TEST_CASE("stabiliser_lie on rank-1 scenes") {
    CHECK(stabiliser_lie(line_scene({2, 0, -1}, {{1, 0}, {1, 0}, {1, 0}})).empty());
    auto full = stabiliser_lie(line_scene({1, 1}, {{1, 0}, {1, 0}}));
    REQUIRE(full.size() == 1);
    CHECK(full[0][0] != 0);
}

TEST_CASE("stabiliser_lie solves the difference equations in rank 2") {
    Scene s = make_scene(2, {{{{1, 0}, {1, 3}}, {{1, 0}, {1, 0}}}});
    auto basis = stabiliser_lie(s);
    REQUIRE(basis.size() == 1);
    // difference (0,3): kernel is {v : 3 v2 = 0} = span{(1,0)}
    CHECK(basis[0][1] == 0);
    CHECK(basis[0][0] != 0);
}

TEST_CASE("stabiliser_lie is invariant under the action") {
    Scene s = make_scene(2, {{{{1, 0}, {1, 3}, {1, 0}}, {{1, 1}, {2, -1}, {0, 1}}}});
    auto before = stabiliser_lie(s);
    auto after = stabiliser_lie(act(s, {0.4, -0.2}, {0.1, 0.9}));
    REQUIRE(before.size() == after.size());
    CHECK(span_contains(before, after));
    CHECK(span_contains(after, before));
}

TEST_CASE("support membership is exact zero testing") {
    Scene s = line_scene({1, 2, 3}, {{1e-300, 0}, {0, 0}, {1, 0}});
    REQUIRE(s.supports[0].size() == 2);  // the tiny value still counts
    CHECK(s.supports[0][0] == 0);
    CHECK(s.supports[0][1] == 2);
}

TEST_CASE("weyl_canonical picks the lex-maximal orbit element") {
    WeylAction gl2 = weyl_gl(2);
    CHECK(gl2.canonical({0, 1}) == Cocharacter{1, 0});
    CHECK(gl2.canonical({1, 1}) == Cocharacter{1, 1});
    WeylAction trivial = weyl_torus(2);
    CHECK(trivial.canonical({0, 1}) == Cocharacter{0, 1});
}

TEST_CASE("weyl_canonical is idempotent") {
    WeylAction gl3 = weyl_gl(3);
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        Cocharacter lam{rng.in_range(-4, 4), rng.in_range(-4, 4), rng.in_range(-4, 4)};
        Cocharacter once = gl3.canonical(lam);
        CHECK(gl3.canonical(once) == once);
    }
}

TEST_CASE("weyl closure caps and validates generators") {
    CHECK(weyl_gl(4).order() == 24);
    CHECK(weyl_sl(2).order() == 2);
    CHECK(weyl_sl(3).order() == 6);
    CHECK_THROWS_AS(WeylAction(2, {{{2, 0}, {0, 1}}}, "bad"), precondition_error);
    CHECK_THROWS_AS(WeylAction(1, {{{-1}}}, "shift", 1), precondition_error);  // cap hit
}

TEST_CASE("scene validation rejects malformed input") {
    CHECK_THROWS_AS(line_scene({1, 2}, {{0, 0}, {0, 0}}), precondition_error);  // zero point
    std::vector<LinearisedFactor> factors(1);
    factors[0].weights = {{1}, {2}};
    factors[0].shift = {Rat(0), Rat(0)};  // wrong length
    CHECK_THROWS_AS(Scene(1, factors, {{{1, 0}, {1, 0}}}), precondition_error);
}
