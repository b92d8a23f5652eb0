#include <doctest.h>

#include "qchar/gz_whittaker.hpp"

using namespace qchar;

namespace {

PochFactor qp(int len, std::size_t rank) { return PochFactor{1, ZMonomial(rank), len}; }

TermSum rank1_closed(int d) {
    return TermSum::single(FactoredExpr(VScalar(1), ZMonomial{0}, {}, {qp(d, 1), PochFactor{1, {1}, d}}));
}

TermSum rank2_closed(int d1, int d2) {
    const ZMonomial z1{1, 0}, z2{0, 1}, z12{1, 1};
    return TermSum::single(FactoredExpr(VScalar(1), ZMonomial{0, 0}, {PochFactor{1, z12, d1 + d2}},
                                        {qp(d1, 2), qp(d2, 2), PochFactor{1, z1, d1}, PochFactor{1, z2, d2},
                                         PochFactor{1, z12, d1}, PochFactor{1, z12, d2}}));
}

}  // namespace

TEST_SUITE("gz_whittaker") {

TEST_CASE("patterns have the requested row sums") {
    for (const auto& d : std::vector<RootVec>{{0, 0}, {2, 1}, {1, 3}}) {
        const auto ps = enumerate_patterns(2, d);
        CHECK_FALSE(ps.empty());
        for (const auto& p : ps) {
            CHECK(p.valid());
            CHECK(p.row_sum(1) == d[0]);
            CHECK(p.row_sum(2) == d[1]);
        }
    }
    CHECK(enumerate_patterns(1, {4}).size() == 1);
    CHECK(enumerate_patterns(3, {0, 0, 0}).size() == 1);
}

TEST_CASE("rank one and two closed forms") {
    for (int d = 0; d <= 4; ++d) CHECK(termsum_equal(jd_explicit(1, {d}), rank1_closed(d)).equal);
    for (int d1 = 0; d1 <= 3; ++d1)
        for (int d2 = 0; d2 <= 3; ++d2) CHECK(termsum_equal(jd_explicit(2, {d1, d2}), rank2_closed(d1, d2)).equal);
    CHECK_FALSE(termsum_equal(jd_explicit(2, {2, 1}), rank2_closed(1, 2)).equal);
}

TEST_CASE("scalar product route agrees with the explicit sum") {
    for (const auto& d : std::vector<RootVec>{{1, 1, 1}, {2, 1, 0}, {0, 2, 1}})
        CHECK(termsum_equal(scalar_product_J(3, d), jd_explicit(3, d)).equal);
    CHECK(termsum_equal(scalar_product_J(2, {2, 2}), rank2_closed(2, 2)).equal);
}

TEST_CASE("bracket conversion matches the integer specialization") {
    // [lambda_0 - lambda_2 + 1] at lambda = (5, 2, 0) is [6]
    const HalfExpr b = bracket_to_factored(2, 0, 2, 1);
    CHECK(eval_at_lambda(b, {5, 2, 0}, Rational(2, 3)) == qbracket(6).eval_at(Rational(2, 3)));
    const HalfExpr c = bracket_to_factored(2, 2, 1, -3);
    CHECK(eval_at_lambda(c, {1, 4, 0}, Rational(3, 5)) == qbracket(-7).eval_at(Rational(3, 5)));
    CHECK(eval_at_lambda(bracket_poch(2, 1, 1, 2, 3), {0, 0, 0}, Rational(1, 3)) ==
          qbracket_poch(2, 3).eval_at(Rational(1, 3)));
}

TEST_CASE("Whittaker recursion identity") {
    CHECK(verify_whittaker_identity({3}, {0, 2}, Rational(2, 7), false));
    CHECK(verify_whittaker_identity({1, -4, 2}, {5, 0, -3, 7}, Rational(5, 11), false));
    CHECK_FALSE(verify_whittaker_identity({1, -4, 2}, {5, 0, -3, 7}, Rational(5, 11), true));
    CHECK_THROWS_AS(verify_whittaker_identity({1}, {2, 2}, Rational(1, 2), false), Error);
}

}
