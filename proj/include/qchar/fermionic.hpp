#pragma once

// Fermionic configuration sums: particles of colour i (simple root alpha_i)
// sitting at integer positions t, weighted by q^{B} / prod (q)_{l_{t,i}}.

#include <optional>
#include <vector>

#include "qchar/graded.hpp"
#include "qchar/multivar.hpp"
#include "qchar/weights.hpp"

namespace qchar {

/// l_{t,i} on a finite support [r, s].
struct Config {
    int n = 0;
    int r = 0;
    std::vector<std::vector<int>> l;  // l[t - r][i - 1]

    Config() = default;
    Config(int n_, int r_, int s_) : n(n_), r(r_), l(s_ - r_ + 1, std::vector<int>(n_, 0)) {}
    int s() const { return r + static_cast<int>(l.size()) - 1; }
    int& at(int t, int i) { return l[t - r][i - 1]; }
    int at(int t, int i) const { return l[t - r][i - 1]; }
    RootVec gamma(int t) const { return l[t - r]; }
    RootVec total() const;
};

struct BForm {
    long qexp = 0;  // 1/2 sum min(t,t')(gamma_t, gamma_t') plus the offset part of lambda
    ZMonomial z;    // prod_i z_i^{sum_t t l_{t,i}}
};

/// q^{B({gamma_t} | lambda)} split into a q-power and a z-monomial.
BForm b_form(const Config& c, const WeightExpr& lambda);

/// The single summand q^B z^... / prod (q)_{l_{t,i}}.
FactoredExpr config_term(const Config& c, const WeightExpr& lambda);

/// Finite interval sum over [r, s]; lambda defaults to offsets 0.
TermSum fermionic_sum(int n, const RootVec& d, int r, int s, const WeightExpr& lambda = {});

/// Lower boundaries of a tower: colour i may occupy t >= r_i; nullopt is -inf.
struct TowerSpec {
    std::vector<std::optional<int>> r;

    static TowerSpec uniform(int n, int r0) { return TowerSpec{std::vector<std::optional<int>>(n, r0)}; }
    bool valid() const;
};

struct StabilizationReport {
    int cutoff = 0;  // the left cutoff -T at which two successive values agreed
    int rounds = 0;
};

/// Right-infinite interval [r, inf), exact per z-monomial of the window.
TruncSeries fermionic_sum_series(int n, const RootVec& d, int r, const TruncSpec& spec,
                                 const WeightExpr& lambda = {});

/// Tower sum in the small-z window. Finite boundaries are exact per monomial;
/// -inf boundaries use a left cutoff -T doubled until two successive values
/// agree on the window (NotStabilized otherwise).
TruncSeries tower_sum(const TowerSpec& tower, const WeightExpr& lambda, const RootVec& beta, const TruncSpec& spec,
                      StabilizationReport* report = nullptr, int max_cutoff = 256);

/// Tower sum in a graded region, positions restricted to [-T, T] with T
/// doubled until two successive values agree.
GradedSeries tower_sum_graded(const TowerSpec& tower, const WeightExpr& lambda, const RootVec& beta,
                              const GradedSpec& spec, StabilizationReport* report = nullptr, int max_cutoff = 128);

/// Convergence of the tower sum in the graded region: every cluster of
/// particles escaping to +inf (resp. -inf) must gain valuation.
bool graded_tower_converges(const TowerSpec& tower, const WeightExpr& lambda, const RootVec& beta,
                            const GradedSpec& spec);

/// J[r+1, s+1] = q^{(beta,beta)/2 - (lambda+rho, beta)} J[r, s] as TermSum equality.
EqualityResult shift_check(int n, const RootVec& beta, int r, int s, const WeightExpr& lambda = {},
                           std::uint64_t seed = 1);

}  // namespace qchar
