#pragma once

// The quantum difference Toda Hamiltonian acting on generating series
// F = sum_d J_d y^d, and the recursion it induces on J_d.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qchar/multivar.hpp"
#include "qchar/weights.hpp"

namespace qchar {

/// Coefficients of y^d for d >= 0 with |d| <= cutoff.
struct GenSeries {
    int n = 0;
    int cutoff = 0;
    std::map<RootVec, TermSum> coeff;

    GenSeries() = default;
    GenSeries(int n_, int cutoff_) : n(n_), cutoff(cutoff_) {}
    /// Zero TermSum when absent.
    TermSum at(const RootVec& d) const;
    GenSeries& operator+=(const GenSeries& b);
    GenSeries scaled(const FactoredExpr& c) const;
};

using JSource = std::function<TermSum(int n, const RootVec& d)>;

GenSeries generating_series(int n, int cutoff, const JSource& source);

/// H F with H = sum_{i=0}^n D_i^{-1} D_{i+1} z_{i,n} (1 - y_i). Every
/// coefficient with |d| <= cutoff is exact.
GenSeries apply_hamiltonian(const GenSeries& f);

/// sum_{i=0}^n z_{i,n}
FactoredExpr toda_eigenvalue_term(int n, int i);

struct EigenRow {
    RootVec d;
    bool pass = false;
    std::optional<std::string> witness;
};

struct EigenReport {
    int n = 0;
    int cutoff = 0;
    std::uint64_t seed = 0;
    std::vector<EigenRow> rows;
    bool pass() const;
};

/// Checks (H - sum_i z_{i,n}) F = 0 coefficientwise for |d| <= cutoff.
EigenReport verify_eigen(int n, int cutoff, const JSource& source, std::uint64_t seed = 1);

/// J_d from the eigen-equation by induction on |d|. The linear coefficient
/// sum_i z_{i,n} (q^{d_{i+1} - d_i} - 1) is carried as a polynomial
/// denominator.
TermSum toda_solve(int n, const RootVec& d);

}  // namespace qchar
