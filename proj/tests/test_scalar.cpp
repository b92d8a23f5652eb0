#include <doctest.h>

#include "qchar/scalar.hpp"

using namespace qchar;

TEST_SUITE("scalar") {

TEST_CASE("q-brackets by hand") {
    const VScalar v = VScalar::v_power(1), vi = VScalar::v_power(-1);
    CHECK(qbracket(0).is_zero());
    CHECK(qbracket(1).is_one());
    CHECK(qbracket(2) == v + vi);
    CHECK(qbracket(3) == v * v + 1 + vi * vi);
    CHECK(qbracket(-2) == -qbracket(2));
    CHECK(qbracket_factorial(3) == qbracket(3) * qbracket(2));
    CHECK(qbracket_poch(2, 3) == qbracket(2) * qbracket(3) * qbracket(4));
    CHECK(qbracket(3).eval_at(Rational(2)) == Rational(21, 4));
}

TEST_CASE("canonical form cancels common factors") {
    // (v^2 - 1) / (v - 1) = v + 1
    const VScalar a(LaurentPoly(0, {-1, 0, 1}), LaurentPoly(0, {-1, 1}));
    CHECK(a == VScalar(LaurentPoly(0, {1, 1})));
    CHECK(a.is_laurent());
    const VScalar b = VScalar(1) / (VScalar(1) - VScalar::v_power(2));
    CHECK(b * (VScalar(1) - VScalar::v_power(2)) == VScalar(1));
    CHECK(b.inverted() == VScalar(1) / (VScalar(1) - VScalar::v_power(-2)));
}

TEST_CASE("gcd over Z[v]") {
    const LaurentPoly vm1(0, {-1, 1}), p(0, {2, 1}), r(0, {3, 1});
    CHECK(poly_gcd(vm1 * p, vm1 * r) == vm1);
    CHECK(poly_gcd(p, r) == LaurentPoly(Integer(1)));
}

TEST_CASE("parse round trip and errors") {
    const VScalar x = qbracket(4) / qbracket(3);
    CHECK(VScalar::parse(x.to_string()) == x);
    CHECK_THROWS_AS(VScalar(0).inverse(), Error);
    CHECK_THROWS_AS(VScalar::parse("garbage"), Error);
    CHECK_THROWS_AS((VScalar(1) / (VScalar(1) - VScalar::v_power(1))).eval_at(Rational(1)), Error);
}

TEST_CASE("sign at v -> 0+") {
    CHECK((VScalar(1) - VScalar::v_power(1)).compare_to_zero() == 1);
    CHECK((VScalar::v_power(-1) * VScalar(-1) + VScalar(5)).compare_to_zero() == -1);
    CHECK(VScalar(0).compare_to_zero() == 0);
}

}
