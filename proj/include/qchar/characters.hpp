#pragma once

// Characters of the principal subspace of the level k vacuum module over
// affine sl(n+1), by the fermionic and the bosonic formula, plus the
// identities connecting them and the tower decomposition.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qchar/fermionic.hpp"
#include "qchar/graded.hpp"
#include "qchar/gz_whittaker.hpp"
#include "qchar/multivar.hpp"
#include "qchar/weights.hpp"

namespace qchar {

struct CharSpec {
    int n = 1;
    int k = 1;
    TruncSpec trunc;
};

/// Named truncation bounds of an infinite sum, recorded for reports.
using TruncationBounds = std::map<std::string, long>;

/// sum_d I_d(z | 1, k) in the window.
TruncSeries char_fermionic(const CharSpec& spec);

/// 1 / prod_{0<=i<j<=n} (q z_{i,j})_inf
FactoredExpr infinite_prefactor(int n);

/// prod (q z_{i,j})_inf^{-1} * J_d(q, z^{-1}) in factored form.
TermSum tilde_j_terms(int n, const RootVec& d);
TruncSeries tilde_j(int n, const RootVec& d, const TruncSpec& trunc);

/// sum_d q^{k Q(d)} z^{k d} tildeJ_d(q^{(Cd)_1} z_1, ..., q^{(Cd)_n} z_n).
/// Stops once k |d| exceeds the window; every kept term is checked to have
/// z-degree >= k |d|, which makes the stop exact.
TruncSeries char_bosonic(const CharSpec& spec, TruncationBounds* bounds = nullptr);

/// sl2: sum_m q^{k m^2} z^{k m} / ((q^{2m+1} z)_inf (q)_m (q^{-2m+1} z^{-1})_m)
TruncSeries sl2_formula(int k, const TruncSpec& trunc);
/// sl3 closed bosonic formula with the factored numerator (q z_1^{-1} z_2^{-1})_{d_1+d_2}.
TruncSeries sl3_bos_formula(int k, const TruncSpec& trunc);
/// sl3 bosonic formula with J split into the m-sum.
TruncSeries sl3_split_formula(int k, const TruncSpec& trunc);
/// The m-sum expression for J_{d_1,d_2}(q, z_1, z_2).
TermSum sl3_j_msum(int d1, int d2);

/// sum_gamma J^lambda_gamma[1, inf) in the window.
TruncSeries sum_j_one_infty(int n, const TruncSpec& trunc);
/// compares sum_j_one_infty with the expanded infinite product
std::optional<SeriesDiff> product_check(int n, const TruncSpec& trunc);

/// J^lambda_beta[1,k] against the finite alpha-sum of products of
/// half-line sums, as an exact rational identity.
EqualityResult convolution_check(int n, int k, const RootVec& beta, std::uint64_t seed = 1);

/// d(mu, nu | r) with the mu-dependence through z.
HalfExpr decomposition_coefficient(const WeightExpr& mu, const RootVec& nu, int r, std::size_t rank);

/// d(lambda, gamma | r) A_n(lambda, lambda')^2 with lambda' = (lambda - gamma)|_{P_{n-1}}.
FactoredExpr lemma_dj_rhs(const WeightExpr& lambda, const RootVec& gamma, int r);

struct IdentityResult {
    bool pass = false;
    std::optional<std::string> witness;
    TruncationBounds bounds;
};

/// A graded region in which the tower with colours 1..n-1 unbounded on the
/// left converges and the factored side has no valuation-zero factor.
GradedSpec lemma_dj_region(int n, int r, const RootVec& gamma, long max_valuation);

/// Tower (-inf, r | r, inf) against d A^2 in a graded region.
IdentityResult lemma_dj_check(int n, int r, const RootVec& gamma, const GradedSpec& spec);

/// Tower with boundaries r_1 <= ... <= r_n <= 0 against the sum over
/// decompositions beta = gamma^(1) + ... + gamma^(n), gamma^(i) in R^+_i.
IdentityResult quasi_classical_check(const std::vector<int>& r, const RootVec& beta, int max_degree, int vmin,
                                     int vmax);

}  // namespace qchar
