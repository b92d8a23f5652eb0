#include <doctest.h>

#include "qchar/fermionic.hpp"
#include "qchar/gz_whittaker.hpp"

using namespace qchar;

TEST_SUITE("fermionic") {

TEST_CASE("quadratic form by hand") {
    Config one(1, 0, 3);
    one.at(2, 1) = 1;
    auto b = b_form(one, {});
    CHECK(b.qexp == 2);
    CHECK(b.z == ZMonomial{2});

    // particles at 1 and 3: 1 + 3 + 2 min(1, 3)
    Config two(1, 1, 3);
    two.at(1, 1) = 1;
    two.at(3, 1) = 1;
    b = b_form(two, {});
    CHECK(b.qexp == 6);
    CHECK(b.z == ZMonomial{4});

    // colours 1 and 2 at t = 1 and 2: 1 + 2 - min(1, 2)
    Config mixed(2, 1, 2);
    mixed.at(1, 1) = 1;
    mixed.at(2, 2) = 1;
    b = b_form(mixed, {});
    CHECK(b.qexp == 2);
    CHECK(b.z == ZMonomial{1, 2});

    // the offset of lambda - c adds shift(i) per unit of z_i
    b = b_form(mixed, WeightExpr({3, 1, 0}));
    CHECK(b.qexp == 2 + 2 * 1 + 1 * 2);
}

TEST_CASE("single configuration") {
    const TermSum s = fermionic_sum(1, {1}, 1, 1);
    const FactoredExpr expected(VScalar::v_power(2), ZMonomial{1}, {}, {PochFactor{1, {0}, 1}});
    CHECK(termsum_equal(s, TermSum::single(expected)).equal);
    CHECK(fermionic_sum(2, {2, 1}, 0, 2).size() == 6 * 3);
    CHECK_THROWS_AS(fermionic_sum(1, {1}, 2, 1), Error);
}

TEST_CASE("half-line sum equals J") {
    const TruncSpec spec{4, -10, 30, {}};
    for (const auto& d : std::vector<RootVec>{{2}, {1, 1}, {2, 1}, {1, 1, 1}}) {
        const int n = static_cast<int>(d.size());
        CHECK(fermionic_sum_series(n, d, 0, spec) == expand(jd_explicit(n, d), spec));
    }
}

TEST_CASE("interval shift") {
    CHECK(shift_check(1, {2}, 0, 2).equal);
    CHECK(shift_check(2, {1, 2}, -1, 1, WeightExpr({2, 0, -1})).equal);
}

TEST_CASE("towers") {
    TowerSpec ok{{std::nullopt, 0}};
    CHECK(ok.valid());
    TowerSpec bad{{0, std::nullopt}};
    CHECK_FALSE(bad.valid());
    TowerSpec dec{{1, 0}};
    CHECK_FALSE(dec.valid());

    // finite towers agree with the finite-interval sum once the window is covered
    const TruncSpec spec{2, -10, 40, {}};
    CHECK(tower_sum(TowerSpec::uniform(1, 1), {}, {2}, spec) == expand(fermionic_sum(1, {2}, 1, 6), spec));
}

TEST_CASE("graded tower sums need a convergent region") {
    const TowerSpec left{{std::nullopt}};
    // particle at t weighs q^t z^t; with z = q^{-40/17} x every far-right t gains nothing
    const GradedSpec diverging{{40}, 17, 17 * 4};
    CHECK_FALSE(graded_tower_converges(left, {}, {1}, diverging));
    CHECK_THROWS_AS(tower_sum_graded(left, {}, {1}, diverging, nullptr, 32), Error);
}

}
