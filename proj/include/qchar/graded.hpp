#pragma once

// Series in a graded region z_i = q^{-w_i} x_i with rational weights
// w_i = weight_i / denom. Every monomial v^e z^mu gets the valuation
// e - 2 w.mu (in v units); a series is kept up to a valuation cap. Unlike the
// small-z region, x-exponents of either sign are allowed, which is what sums
// over left-infinite intervals need.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qchar/multivar.hpp"

namespace qchar {

struct GradedSpec {
    std::vector<int> weight;
    int denom = 1;
    /// keep terms with scaled valuation e * denom - 2 weight.mu <= max_valuation
    long max_valuation = 0;

    long valuation(const ZMonomial& mu, int vpow) const;
    friend bool operator==(const GradedSpec&, const GradedSpec&) = default;
};

struct GradedDiff {
    ZMonomial z;
    int vpow = 0;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

class GradedSeries {
public:
    using Key = std::pair<ZMonomial, int>;  // (z-exponents, v-power)

    GradedSeries() = default;
    GradedSeries(std::size_t rank, GradedSpec spec) : rank_(rank), spec_(std::move(spec)) {}

    std::size_t rank() const { return rank_; }
    const GradedSpec& spec() const { return spec_; }
    const std::map<Key, std::int64_t>& terms() const { return terms_; }
    std::int64_t coeff(const ZMonomial& z, int vpow) const;

    /// Adds c v^vpow z^z if its valuation is inside the cap.
    void add_term(const ZMonomial& z, int vpow, std::int64_t c);
    GradedSeries& operator+=(const GradedSeries& b);
    friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b);

    std::optional<GradedDiff> compare(const GradedSeries& b) const;
    bool operator==(const GradedSeries& b) const { return !compare(b).has_value(); }
    std::string to_json() const;

private:
    void require_same(const GradedSeries& b) const;

    std::size_t rank_ = 0;
    GradedSpec spec_;
    std::map<Key, std::int64_t> terms_;
};

/// Expansion of e in the graded region. A factor whose monomial has
/// valuation zero is an AmbiguousRegion error; negative-valuation factors
/// are flipped before the geometric expansion.
GradedSeries expand_graded(const FactoredExpr& e, std::size_t rank, const GradedSpec& spec);
GradedSeries expand_graded(const TermSum& s, const GradedSpec& spec);

}  // namespace qchar
