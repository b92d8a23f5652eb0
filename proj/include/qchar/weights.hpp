#pragma once

// Root and weight data for gl(n+1) / sl(n+1).
//
// Simple roots are alpha_i = eps_{i-1} - eps_i (1 <= i <= n). The highest
// weight lambda is kept symbolic: every pairing (lambda + rho, alpha_i) is
// exported through the variable z_i = q^{-(lambda + rho, alpha_i)}.

#include <vector>

#include "qchar/multivar.hpp"

namespace qchar {

/// beta = d_1 alpha_1 + ... + d_n alpha_n, stored as (d_1, ..., d_n).
using RootVec = std::vector<int>;

RootVec simple_root(std::size_t n, int i);
RootVec operator+(const RootVec& a, const RootVec& b);
RootVec operator-(const RootVec& a, const RootVec& b);

/// Type A form: (alpha_i, alpha_j) = 2 delta_ij - delta_{|i-j|,1}.
int root_form(const RootVec& a, const RootVec& b);
/// (rho, beta) = d_1 + ... + d_n
int height(const RootVec& d);

bool in_qplus(const RootVec& d);
/// d_j = 0 for j > i
bool in_qplus_i(const RootVec& d, int i);
/// non-negative combination of alpha_k + ... + alpha_i (1 <= k <= i)
bool in_rplus_i(const RootVec& d, int i);

/// All alpha with 0 <= alpha <= beta componentwise, lexicographic.
std::vector<RootVec> roots_below(const RootVec& beta);
/// All d in Q^+ of rank n with height exactly h, lexicographic.
std::vector<RootVec> roots_of_height(std::size_t n, int h);

/// The weight sum_k (lambda_k - c_k) eps_k on P_r (coordinates 0..r), with
/// lambda symbolic and integer offsets c.
struct WeightExpr {
    std::vector<int> c;

    WeightExpr() = default;
    explicit WeightExpr(std::vector<int> offsets) : c(std::move(offsets)) {}
    static WeightExpr lambda(int r) { return WeightExpr(std::vector<int>(r + 1, 0)); }

    int rank() const { return static_cast<int>(c.size()) - 1; }
    /// (mu, alpha_i) = (lambda, alpha_i) - shift(i)
    int shift(int i) const { return c[i - 1] - c[i]; }
    /// mu - beta, beta in the root lattice of the same rank
    WeightExpr minus_root(const RootVec& beta) const;
    /// restriction to P_i (coordinates 0..i)
    WeightExpr projected(int i) const;
    friend bool operator==(const WeightExpr&, const WeightExpr&) = default;
};

/// q^{-(mu + rho, beta)} as (q-exponent, z-monomial) in the given ambient rank.
std::pair<int, ZMonomial> casimir_pairing(const WeightExpr& mu, const RootVec& beta, std::size_t rank);

}  // namespace qchar
