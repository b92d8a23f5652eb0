#include <doctest.h>

#include <functional>

#include "qchar/graded.hpp"
#include "qchar/multivar.hpp"
#include "qchar/weights.hpp"

using namespace qchar;

namespace {

// partitions of j into exactly m parts
std::int64_t parts_exactly(int j, int m) {
    if (m == 0) return j == 0 ? 1 : 0;
    if (j < m) return 0;
    return parts_exactly(j - 1, m - 1) + parts_exactly(j - m, m);
}

PochFactor poch(int a, ZMonomial z, std::optional<int> len) { return PochFactor{a, std::move(z), len}; }

}  // namespace

TEST_SUITE("multivar") {

TEST_CASE("normalization cancels Pochhammer runs") {
    const FactoredExpr a(VScalar(1), ZMonomial{0}, {poch(1, {1}, 3)}, {poch(1, {1}, 2)});
    const FactoredExpr b(VScalar(1), ZMonomial{0}, {poch(3, {1}, 1)});
    CHECK(a == b);
    CHECK(termsum_equal(TermSum::single(a), TermSum::single(b)).equal);
}

TEST_CASE("exact evaluation") {
    // 1/((1 - qz)(1 - q^2 z)) at q = 1/4, z = 1/3
    const FactoredExpr e(VScalar(1), ZMonomial{0}, {}, {poch(1, {1}, 2)});
    CHECK(eval_exact(e, EvalPoint(Rational(1, 2), {Rational(1, 3)})) == Rational(576, 517));
}

TEST_CASE("finite Pochhammer expansion") {
    // (z)_2 = 1 - (1 + q) z + q z^2
    TermSum expected(1);
    expected.add(FactoredExpr::monomial(1, 0, ZMonomial{0}));
    expected.add(FactoredExpr::monomial(-1, 0, ZMonomial{1}));
    expected.add(FactoredExpr::monomial(-1, 2, ZMonomial{1}));
    expected.add(FactoredExpr::monomial(1, 2, ZMonomial{2}));
    CHECK(termsum_equal(poch_finite_expand(poch(0, {1}, 2)), expected).equal);
    TermSum wrong = expected;
    wrong.add(FactoredExpr::monomial(1, 4, ZMonomial{2}));
    const auto r = termsum_equal(poch_finite_expand(poch(0, {1}, 2)), wrong);
    CHECK_FALSE(r.equal);
    CHECK(r.witness.has_value());
}

TEST_CASE("1/(qz)_inf counts partitions by number of parts") {
    const TruncSpec spec{4, 0, 30, {}};
    const TruncSeries s = expand(FactoredExpr(VScalar(1), ZMonomial{0}, {}, {poch(1, {1}, std::nullopt)}), 1, spec);
    for (int m = 0; m <= 4; ++m)
        for (int j = 0; 2 * j <= 30; ++j) CHECK(s.coeff(ZMonomial{m}, 2 * j) == parts_exactly(j, m));
}

TEST_CASE("negative z-power denominators flip") {
    // 1/(1 - q z^{-1}) = -sum_{m>=1} q^{-m} z^m
    const TruncSpec spec{3, -10, 10, {}};
    const TruncSeries s = expand(FactoredExpr(VScalar(1), ZMonomial{0}, {}, {poch(1, {-1}, 1)}), 1, spec);
    CHECK(s.coeff(ZMonomial{0}, 0) == 0);
    for (int m = 1; m <= 3; ++m) CHECK(s.coeff(ZMonomial{m}, -2 * m) == -1);
    CHECK(s.coeffs().size() == 3);
}

TEST_CASE("mixed-sign factors have no expansion") {
    const FactoredExpr e(VScalar(1), ZMonomial{0, 0}, {}, {poch(0, {1, -1}, 1)});
    CHECK_THROWS_AS(expand(e, 2, TruncSpec{2, 0, 4, {}}), Error);
}

TEST_CASE("series JSON round trip and spec checks") {
    const TruncSpec spec{3, -4, 12, {}};
    const FactoredExpr e(VScalar::v_power(-2), ZMonomial{1, 0}, {}, {poch(1, {1, 1}, 2), poch(1, {0, 0}, 1)});
    const TruncSeries s = expand(e, 2, spec);
    CHECK(TruncSeries::from_json(s.to_json()) == s);
    TruncSeries other(2, TruncSpec{3, -4, 14, {}});
    CHECK_THROWS_AS(s.compare(other), Error);
    const TermSum t = TermSum::single(e);
    CHECK(termsum_equal(termsum_from_json(termsum_to_json(t)), t).equal);
}

TEST_CASE("graded expansion of a geometric series") {
    // z = q^{-1/2} x: 1/(1 - q z) = sum (q^{1/2} x)^m has valuation m (in v units)
    const GradedSpec spec{{1}, 2, 2 * 6};
    const GradedSeries g = expand_graded(FactoredExpr(VScalar(1), ZMonomial{0}, {}, {poch(1, {1}, 1)}), 1, spec);
    for (int m = 0; m <= 6; ++m) CHECK(g.coeff(ZMonomial{m}, 2 * m) == 1);
    CHECK(g.terms().size() == 7);
    // z alone has negative valuation, so 1/(1 - z) flips
    const GradedSeries h = expand_graded(FactoredExpr(VScalar(1), ZMonomial{0}, {}, {poch(0, {1}, 1)}), 1, spec);
    CHECK(h.coeff(ZMonomial{-1}, 0) == -1);
    CHECK_THROWS_AS(expand_graded(FactoredExpr(VScalar(1), ZMonomial{0}, {}, {poch(1, {2}, 1)}), 1, spec), Error);
}

TEST_CASE("root data") {
    CHECK(root_form({1, 0}, {0, 1}) == -1);
    CHECK(root_form({1, 1}, {1, 1}) == 2);
    CHECK(height({2, 0, 1}) == 3);
    CHECK(roots_below({1, 2}).size() == 6);
    CHECK(roots_of_height(3, 2).size() == 6);
    CHECK(in_rplus_i({1, 1}, 2));
    CHECK_FALSE(in_rplus_i({2, 1}, 2));
    const WeightExpr mu = WeightExpr::lambda(2).minus_root({1, 2});
    CHECK(mu.c == std::vector<int>{1, 1, -2});
    const auto [qe, z] = casimir_pairing(mu, {1, 0}, 2);
    CHECK(qe == mu.shift(1));
    CHECK(z == ZMonomial{1, 0});
}

}
