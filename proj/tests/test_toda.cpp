#include <doctest.h>

#include "qchar/gz_whittaker.hpp"
#include "qchar/toda.hpp"

using namespace qchar;

namespace {

const JSource explicit_j = [](int n, const RootVec& d) { return jd_explicit(n, d); };

}  // namespace

TEST_SUITE("toda") {

TEST_CASE("Hamiltonian on the constant series") {
    GenSeries f(1, 1);
    f.coeff[{0}] = TermSum::single(FactoredExpr::one(1));
    const GenSeries hf = apply_hamiltonian(f);
    // y^0: z_1 + 1; y^1: the (1 - y_1) term shifted by D_1^{-1} gives -q^{-1}
    TermSum y0(1);
    y0.add(FactoredExpr::monomial(1, 0, ZMonomial{1}));
    y0.add(FactoredExpr::one(1));
    CHECK(termsum_equal(hf.at({0}), y0).equal);
    CHECK(termsum_equal(hf.at({1}), TermSum::single(FactoredExpr::monomial(-1, -2, ZMonomial{0}))).equal);
}

TEST_CASE("Hamiltonian is linear") {
    const GenSeries f = generating_series(2, 2, explicit_j);
    const GenSeries g = generating_series(2, 2, [](int n, const RootVec& d) { return scalar_product_J(n, d); });
    const FactoredExpr a(VScalar(3), ZMonomial{1, 0}), b(VScalar::v_power(-3), ZMonomial{0, 2});
    GenSeries mix = f.scaled(a);
    mix += g.scaled(b);
    GenSeries sep = apply_hamiltonian(f).scaled(a);
    sep += apply_hamiltonian(g).scaled(b);
    const GenSeries lhs = apply_hamiltonian(mix);
    for (const auto& [d, t] : sep.coeff) CHECK(termsum_equal(lhs.at(d), t).equal);
}

TEST_CASE("J is an eigenfunction") {
    CHECK(verify_eigen(1, 0, explicit_j).pass());
    CHECK(verify_eigen(1, 5, explicit_j).pass());
    CHECK(verify_eigen(2, 3, [](int n, const RootVec& d) { return scalar_product_J(n, d); }).pass());
}

TEST_CASE("perturbed J fails where it was changed") {
    const auto rep = verify_eigen(1, 3, [](int n, const RootVec& d) {
        TermSum j = jd_explicit(n, d);
        if (d == RootVec{1}) j = j * FactoredExpr(VScalar::v_power(2), ZMonomial{0});
        return j;
    });
    CHECK_FALSE(rep.pass());
    CHECK(rep.rows[0].pass);
    CHECK_FALSE(rep.rows[1].pass);
    CHECK(rep.rows[1].witness.has_value());
}

TEST_CASE("recursion reproduces J") {
    CHECK(termsum_equal(toda_solve(2, {0, 0}), TermSum::single(FactoredExpr::one(2))).equal);
    const FactoredExpr j1(VScalar(1), ZMonomial{0}, {}, {PochFactor{1, {0}, 1}, PochFactor{1, {1}, 1}});
    CHECK(termsum_equal(toda_solve(1, {1}), TermSum::single(j1)).equal);
    CHECK(termsum_equal(toda_solve(2, {2, 1}), jd_explicit(2, {2, 1})).equal);
    CHECK(termsum_equal(toda_solve(3, {1, 2, 1}), jd_explicit(3, {1, 2, 1})).equal);
}

}
