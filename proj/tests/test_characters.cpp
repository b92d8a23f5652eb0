#include <doctest.h>

#include "qchar/characters.hpp"

using namespace qchar;

namespace {

// partitions of j into parts of size at most m
std::int64_t parts_bounded(int j, int m) {
    if (j == 0) return 1;
    if (j < 0 || m == 0) return 0;
    return parts_bounded(j, m - 1) + parts_bounded(j - m, m);
}

}  // namespace

TEST_SUITE("characters") {

TEST_CASE("level one sl2 character is sum q^{m^2} z^m / (q)_m") {
    const TruncSpec spec{3, -20, 40, {}};
    const TruncSeries f = char_fermionic({1, 1, spec});
    for (int m = 0; m <= 3; ++m)
        for (int j = 0; 2 * j <= 40; ++j) CHECK(f.coeff(ZMonomial{m}, 2 * j) == parts_bounded(j - m * m, m));
}

TEST_CASE("level zero and small windows") {
    const TruncSpec spec{2, -20, 30, {}};
    TruncSeries one(2, spec);
    one.add_term(ZMonomial{0, 0}, 0, 1);
    CHECK(char_fermionic({2, 0, spec}) == one);
    // window below the level: only d = 0 contributes
    CHECK(char_bosonic({2, 3, spec}) == expand(infinite_prefactor(2), 2, spec));
}

TEST_CASE("tilde J for n=1, d=1") {
    // 1/(qz)_inf * 1/((1-q)(1-q z^{-1})); the z^1 part is -q^{-1}/(1-q)
    const TruncSpec spec{1, -10, 10, {}};
    const TruncSeries t = tilde_j(1, {1}, spec);
    CHECK(t.coeff(ZMonomial{0}, 0) == 0);
    for (int v = -2; v <= 10; v += 2) CHECK(t.coeff(ZMonomial{1}, v) == -1);
    CHECK(t.coeff(ZMonomial{1}, -4) == 0);
}

TEST_CASE("fermionic equals bosonic") {
    const TruncSpec spec{3, -20, 40, {}};
    for (int k = 1; k <= 2; ++k) {
        CHECK(char_fermionic({1, k, spec}) == char_bosonic({1, k, spec}));
        CHECK(char_fermionic({1, k, spec}) == sl2_formula(k, spec));
        CHECK(char_fermionic({2, k, spec}) == char_bosonic({2, k, spec}));
        CHECK(char_fermionic({2, k, spec}) == sl3_bos_formula(k, spec));
    }
}

TEST_CASE("the m-sum is J for n=2") {
    for (int d1 = 0; d1 <= 3; ++d1)
        for (int d2 = 0; d2 <= 3; ++d2) CHECK(termsum_equal(sl3_j_msum(d1, d2), jd_explicit(2, {d1, d2})).equal);
}

TEST_CASE("proof chain identities") {
    CHECK_FALSE(product_check(1, {5, 0, 30, {}}).has_value());
    CHECK_FALSE(product_check(2, {3, 0, 30, {}}).has_value());
    CHECK_FALSE(product_check(1, {0, 0, 10, {}}).has_value());
    CHECK(convolution_check(1, 1, {0}).equal);
    CHECK(convolution_check(1, 1, {1}).equal);
    CHECK(convolution_check(2, 2, {1, 1}).equal);
}

TEST_CASE("decomposition coefficient") {
    CHECK(decomposition_coefficient(WeightExpr::lambda(2), {0, 0}, 3, 2).to_factored() == FactoredExpr::one(2));
    // d(.|r) / d(.|0) = q^{r((nu,nu)/2 - (lambda+rho,nu))} = (q z)^r for nu = alpha_1
    const HalfExpr a = decomposition_coefficient(WeightExpr::lambda(1), {1}, -1, 1);
    const HalfExpr b = decomposition_coefficient(WeightExpr::lambda(1), {1}, 0, 1);
    CHECK((a * b.inverse()).to_factored() == FactoredExpr(VScalar::v_power(-2), ZMonomial{-1}));
}

TEST_CASE("tower lemma in a graded region") {
    const GradedSpec spec = lemma_dj_region(2, -1, {0, 1}, 17 * 6);
    const auto res = lemma_dj_check(2, -1, {0, 1}, spec);
    CHECK(res.pass);
    CHECK(res.bounds.at("left_cutoff") > 0);
    const auto trivial = lemma_dj_check(2, 0, {0, 0}, lemma_dj_region(2, 0, {0, 0}, 17 * 4));
    CHECK(trivial.pass);
}

TEST_CASE("quasi-classical decomposition") {
    CHECK(quasi_classical_check({0, 0}, {1, 1}, 3, -20, 40).pass);
    CHECK(quasi_classical_check({-1, 0}, {0, 0}, 2, -10, 10).pass);
    CHECK(quasi_classical_check({-2, -1}, {2, 1}, 3, -20, 40).pass);
    CHECK_THROWS_AS(quasi_classical_check({0, 1}, {1, 1}, 3, -20, 40), Error);
}

}
