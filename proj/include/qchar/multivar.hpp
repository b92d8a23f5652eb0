#pragma once

// Factored expressions in q and z_1..z_n and their expansion into truncated
// multivariate power series. Rational functions are never brought to a
// common denominator: every quantity stays a sum of signed monomials with
// q-Pochhammer factors, and equality is decided either by seeded exact
// evaluation or by comparing truncated expansions.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qchar/scalar.hpp"

namespace qchar {

/// z^e = z_1^{e_1} ... z_n^{e_n}; negative exponents allowed.
struct ZMonomial {
    std::vector<int> e;

    ZMonomial() = default;
    explicit ZMonomial(std::size_t rank) : e(rank, 0) {}
    ZMonomial(std::initializer_list<int> exps) : e(exps) {}
    explicit ZMonomial(std::vector<int> exps) : e(std::move(exps)) {}

    std::size_t rank() const { return e.size(); }
    bool is_one() const;
    bool all_nonneg() const;
    bool all_nonpos() const;
    int total_degree() const;
    int operator[](std::size_t i) const { return e[i]; }
    int& operator[](std::size_t i) { return e[i]; }

    ZMonomial operator-() const;
    friend ZMonomial operator+(const ZMonomial& a, const ZMonomial& b);
    friend ZMonomial operator-(const ZMonomial& a, const ZMonomial& b);
    friend ZMonomial operator*(int k, const ZMonomial& a);
    friend auto operator<=>(const ZMonomial&, const ZMonomial&) = default;
    friend bool operator==(const ZMonomial&, const ZMonomial&) = default;
};

/// z_{k,l} = z_{k+1} ... z_l in rank n.
ZMonomial z_range(std::size_t rank, int k, int l);
/// The unit vector z_i (1-based index i).
ZMonomial z_unit(std::size_t rank, int i);

/// (q^qShift z^z ; q)_length with (x)_m = prod_{i=1}^m (1 - q^{i-1} x).
/// An empty length means the infinite product.
struct PochFactor {
    int q_shift = 0;
    ZMonomial z;
    std::optional<int> length;

    bool infinite() const { return !length.has_value(); }
    friend auto operator<=>(const PochFactor&, const PochFactor&) = default;
    friend bool operator==(const PochFactor&, const PochFactor&) = default;
};

/// A single term c * v^vpow * z^z of a sparse polynomial in v and z.
struct PolyTerm {
    Integer coeff;
    int vpow = 0;
    ZMonomial z;
    friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

/// Unfactored polynomial in (v, z). Only used as an explicit denominator tag
/// for quantities that do not factor into Pochhammer symbols.
struct SparsePoly {
    std::vector<PolyTerm> terms;
    friend bool operator==(const SparsePoly&, const SparsePoly&) = default;
};

/// coeff * z^mono * prod(num) / (prod(den) * prod(den_polys))
///
/// Finite Pochhammer factors are kept in a canonical form: they are split into
/// elementary factors (1 - q^a z^mu), cancelled between numerator and
/// denominator, and regrouped into maximal runs.
class FactoredExpr {
public:
    FactoredExpr() = default;
    explicit FactoredExpr(std::size_t rank) : mono_(rank) {}
    FactoredExpr(VScalar coeff, ZMonomial mono, std::vector<PochFactor> num = {},
                 std::vector<PochFactor> den = {}, std::vector<SparsePoly> den_polys = {});

    static FactoredExpr one(std::size_t rank) { return FactoredExpr(rank); }
    /// c * v^vpow * z^mono
    static FactoredExpr monomial(long c, int vpow, ZMonomial mono);

    std::size_t rank() const { return mono_.rank(); }
    const VScalar& coeff() const { return coeff_; }
    const ZMonomial& mono() const { return mono_; }
    const std::vector<PochFactor>& num() const { return num_; }
    const std::vector<PochFactor>& den() const { return den_; }
    const std::vector<SparsePoly>& den_polys() const { return den_polys_; }
    bool is_zero() const { return coeff_.is_zero(); }
    bool has_infinite_factor() const;

    friend FactoredExpr operator*(const FactoredExpr& a, const FactoredExpr& b);
    FactoredExpr scaled(const VScalar& c) const;
    FactoredExpr times_qpow(int a) const;
    FactoredExpr times_mono(const ZMonomial& m) const;
    FactoredExpr divided_by(const SparsePoly& p) const;
    /// Reciprocal; not available for expressions carrying den_polys.
    FactoredExpr inverse() const;

    /// Monomial substitution z_i -> q^{shift_i} z^{image_i}; image monomials
    /// live in the target rank.
    FactoredExpr substituted(const std::vector<int>& qshift, const std::vector<ZMonomial>& image) const;
    /// z_i -> q^{shift_i} z_i
    FactoredExpr shifted(const std::vector<int>& qshift) const;
    /// z_i -> z_i^{-1}
    FactoredExpr inverted_z() const;

    friend bool operator==(const FactoredExpr&, const FactoredExpr&) = default;

private:
    void normalize();

    VScalar coeff_{1};
    ZMonomial mono_;
    std::vector<PochFactor> num_, den_;
    std::vector<SparsePoly> den_polys_;
};

/// Finite sum of FactoredExpr. Equality is mathematical, never positional.
class TermSum {
public:
    TermSum() = default;
    explicit TermSum(std::size_t rank) : rank_(rank) {}
    TermSum(std::size_t rank, std::vector<FactoredExpr> terms);
    static TermSum single(FactoredExpr e);

    std::size_t rank() const { return rank_; }
    const std::vector<FactoredExpr>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void add(FactoredExpr e);
    void add(const TermSum& other);
    TermSum operator-() const;
    friend TermSum operator+(const TermSum& a, const TermSum& b);
    friend TermSum operator-(const TermSum& a, const TermSum& b);
    friend TermSum operator*(const TermSum& a, const TermSum& b);
    friend TermSum operator*(const TermSum& a, const FactoredExpr& b);

    TermSum substituted(const std::vector<int>& qshift, const std::vector<ZMonomial>& image) const;
    TermSum shifted(const std::vector<int>& qshift) const;
    TermSum inverted_z() const;

private:
    std::size_t rank_ = 0;
    std::vector<FactoredExpr> terms_;
};

/// The fully multiplied-out polynomial of a finite Pochhammer factor, as a
/// TermSum of monomials.
TermSum poch_finite_expand(const PochFactor& f);

// --------------------------------------------------------------- evaluation

/// A rational point (v0, z0) with memoized powers.
class EvalPoint {
public:
    EvalPoint(Rational v0, std::vector<Rational> z0);
    const Rational& v() const { return v_; }
    const std::vector<Rational>& z() const { return z_; }
    Rational v_pow(int k) const;
    Rational q_pow(int k) const { return v_pow(2 * k); }
    Rational z_pow(const ZMonomial& m) const;

private:
    Rational v_;
    std::vector<Rational> z_;
    mutable std::map<int, Rational> vcache_;
    mutable std::vector<std::map<int, Rational>> zcache_;
};

Rational eval_exact(const FactoredExpr& e, const EvalPoint& p);
Rational eval_exact(const TermSum& s, const EvalPoint& p);
Rational eval_exact(const TermSum& s, const Rational& v0, const std::vector<Rational>& z0);

struct EqualityResult {
    bool equal = false;
    int trials = 0;
    std::uint64_t seed = 0;
    std::optional<std::string> witness;  // "v0=..., z0=[...]: lhs vs rhs"
    explicit operator bool() const { return equal; }
};

/// Probabilistic-exact equality: exact comparison at `trials` seeded random
/// rational points avoiding poles. Throws Error(SamplingBudget) if too few
/// usable points are found.
EqualityResult termsum_equal(const TermSum& a, const TermSum& b, int trials = 12, std::uint64_t seed = 1);

// ---------------------------------------------------------------- expansion

/// Window: monomials z^mu with mu_i >= zmin_i and sum_i (mu_i - zmin_i) <= D,
/// and v-powers in [vmin, vmax]. An empty zmin means all zeros.
struct TruncSpec {
    int max_degree = 0;
    int vmin = 0;
    int vmax = 0;
    std::vector<int> zmin;

    int zmin_at(std::size_t i) const { return zmin.empty() ? 0 : zmin[i]; }
    bool contains(const ZMonomial& m) const;
    friend bool operator==(const TruncSpec&, const TruncSpec&) = default;
};

struct SeriesDiff {
    ZMonomial z;
    int vpow = 0;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

/// Truncated formal series: z-monomial -> Laurent polynomial in v restricted
/// to the v-window of its TruncSpec. Absent monomials are zero.
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(std::size_t rank, TruncSpec spec) : rank_(rank), spec_(std::move(spec)) {}

    std::size_t rank() const { return rank_; }
    const TruncSpec& spec() const { return spec_; }
    const std::map<ZMonomial, std::vector<std::int64_t>>& coeffs() const { return coeffs_; }

    std::int64_t coeff(const ZMonomial& z, int vpow) const;
    /// Adds c * v^vpow * z^z if inside the window; silently ignores terms outside.
    void add_term(const ZMonomial& z, int vpow, std::int64_t c);
    /// Adds c * v^{vlow + j} for the j-th entry of row.
    void add_row(const ZMonomial& z, int vlow, const std::vector<std::int64_t>& row);
    void prune();

    TruncSeries& operator+=(const TruncSeries& b);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    /// Window product; exact when neither operand has terms below the window.
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

    /// First differing (monomial, v-power) in canonical order, or nullopt if
    /// equal within the window.
    std::optional<SeriesDiff> compare(const TruncSeries& b) const;
    bool operator==(const TruncSeries& b) const { return !compare(b).has_value(); }

    std::string to_json() const;
    static TruncSeries from_json(const std::string& text);

private:
    void require_same(const TruncSeries& b) const;

    std::size_t rank_ = 0;
    TruncSpec spec_;
    std::map<ZMonomial, std::vector<std::int64_t>> coeffs_;
};

/// Series of a single factored expression in the region |z_i| small, |q| small.
/// Denominator factors (1 - q^a z^mu) with mu <= 0 are flipped before the
/// geometric expansion; mixed-sign mu is an error.
TruncSeries expand(const FactoredExpr& e, std::size_t rank, const TruncSpec& spec);
TruncSeries expand(const TermSum& s, const TruncSpec& spec);

/// Lowest total z-degree of the expansion of e (after flipping factors).
int expansion_min_degree(const FactoredExpr& e);

// ----------------------------------------------------------------- JSON

std::string termsum_to_json(const TermSum& s);
TermSum termsum_from_json(const std::string& text);

}  // namespace qchar
