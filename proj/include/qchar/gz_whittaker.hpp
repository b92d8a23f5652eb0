#pragma once

// Gelfand-Zetlin patterns, squared Whittaker coefficients and the two exact
// routes to the scalar products J_d(q, z).

#include <functional>
#include <vector>

#include "qchar/multivar.hpp"
#include "qchar/weights.hpp"

namespace qchar {

/// m_{k,i} for 0 <= k <= i <= n with lambda_{k,i} = lambda_k - m_{k,i}.
/// Row n is identically zero.
struct GelfandOffsets {
    int n = 0;
    std::vector<std::vector<int>> rows;  // rows[i][k] = m_{k,i}

    int m(int k, int i) const { return rows[i][k]; }
    /// sum_{k=0}^{i-1} m_{k,i-1}, which equals d_i
    int row_sum(int i) const;
    /// the offsets of lambda^{(i)} as a weight on P_i
    WeightExpr level(int i) const;
    /// entries in (i, k) order, i = 0..n-1
    std::vector<int> flat() const;
    bool valid() const;
};

/// All patterns with row sums d, in lexicographic order of flat().
std::vector<GelfandOffsets> enumerate_patterns(int n, const RootVec& d);

/// expr * prod_i z_i^{half_i / 2}. Pairings (lambda, beta) produce square
/// roots of z-monomials; they cancel in every exported scalar.
struct HalfExpr {
    FactoredExpr expr;
    std::vector<int> half;

    HalfExpr() = default;
    explicit HalfExpr(FactoredExpr e) : expr(std::move(e)), half(expr.rank(), 0) {}
    HalfExpr(FactoredExpr e, std::vector<int> h) : expr(std::move(e)), half(std::move(h)) {}

    std::size_t rank() const { return expr.rank(); }
    bool is_zero() const { return expr.is_zero(); }
    HalfExpr inverse() const;
    friend HalfExpr operator*(const HalfExpr& a, const HalfExpr& b);
    /// Throws Precondition if a half-integer exponent survives.
    FactoredExpr to_factored() const;
};

/// v^{(lambda - c, beta)} for the weight mu = lambda - c.
HalfExpr v_pairing(const WeightExpr& mu, const RootVec& beta, std::size_t rank);

/// [lambda_a - lambda_b + c] with z_i = q^{-(lambda + rho, alpha_i)}; a == b
/// gives the integer bracket [c].
HalfExpr bracket_to_factored(std::size_t rank, int a, int b, int c);
/// [lambda_a - lambda_b + c]_len
HalfExpr bracket_poch(std::size_t rank, int a, int b, int c, int len);

/// A_i(mu, nu)^2 for mu on P_i and nu on P_{i-1}; rank is the number of z's.
HalfExpr a_squared(std::size_t rank, int i, const WeightExpr& mu, const WeightExpr& nu);

/// c_{k,i-1}(pattern)^2 for 1 <= i <= n, 0 <= k <= i-1.
HalfExpr chevalley_c_squared(const GelfandOffsets& p, int k, int i);

/// Exact value after substituting integer lambda_0..lambda_n (so that
/// z_i = q^{-(lambda_{i-1} - lambda_i + 1)}) and v = v0.
Rational eval_at_lambda(const HalfExpr& e, const std::vector<int>& lambda, const Rational& v0);

int ht(const GelfandOffsets& p);
/// sum_i p_i at an integer specialization of lambda (default: all zero).
long p_exponent(const GelfandOffsets& p, const std::vector<int>& lambda = {});

/// Scalar product via the squared Whittaker coefficients, one term per pattern.
FactoredExpr scalar_product_term(const GelfandOffsets& p);
TermSum scalar_product_J(int n, const RootVec& d);

/// The explicit GZ sum, one term per pattern.
FactoredExpr jd_term(const GelfandOffsets& p);
TermSum jd_explicit(int n, const RootVec& d);

/// Exponent of q in the explicit GZ sum (exposed for testing).
long jd_q_exponent(const GelfandOffsets& p);

/// The rational identity behind the Whittaker recursion, evaluated exactly
/// at v = v0 with integer a (length i) and pairwise distinct integer b
/// (length i + 1). flip_exponent flips the sign of sum_k a_k in the v-power
/// (negative control; flipping the whole power is the same identity at 1/v).
bool verify_whittaker_identity(const std::vector<int>& a, const std::vector<int>& b, const Rational& v0,
                               bool flip_exponent = false);

}  // namespace qchar
