#pragma once

// Exact arithmetic over the ground field Q(v). The deformation parameter
// q is always the substitution q = v^2.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qchar/error.hpp"

namespace qchar {

using Integer = mpz_class;
using Rational = mpq_class;

Rational rational_pow(const Rational& base, long exponent);

/// Integer Laurent polynomial in v, stored as v^low * (c[0] + c[1] v + ...).
/// Canonical: c.front() and c.back() are nonzero, the zero polynomial is empty.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(Integer constant);
    LaurentPoly(int low, std::vector<Integer> coeffs);

    static LaurentPoly monomial(Integer c, int power);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_monomial() const { return coeffs_.size() == 1; }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Integer>& coeffs() const { return coeffs_; }
    Integer coeff(int power) const;

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

    LaurentPoly shifted(int by) const;
    /// Substitution v -> v^{-1}.
    LaurentPoly inverted() const;
    Integer content() const;
    LaurentPoly divided_by_integer(const Integer& c) const;
    Rational eval(const Rational& v0) const;

    std::string to_string() const;

private:
    void trim();

    int low_ = 0;
    std::vector<Integer> coeffs_;
};

/// Exact element of Q(v) in reduced canonical form.
///
/// Invariants: the denominator is an honest polynomial with nonzero constant
/// term and positive leading coefficient; numerator and denominator share no
/// polynomial factor and their joint integer content is 1. Equality is
/// therefore syntactic.
class VScalar {
public:
    VScalar() = default;
    VScalar(long c);  // NOLINT(google-explicit-constructor)
    explicit VScalar(LaurentPoly num);
    VScalar(LaurentPoly num, LaurentPoly den);

    /// c * v^power
    static VScalar monomial(long c, int power);
    static VScalar v_power(int power) { return monomial(1, power); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_laurent() const;   // denominator == 1
    bool is_monomial() const;  // +-c v^k with denominator 1

    VScalar operator-() const;
    VScalar inverse() const;
    friend VScalar operator+(const VScalar& a, const VScalar& b);
    friend VScalar operator-(const VScalar& a, const VScalar& b);
    friend VScalar operator*(const VScalar& a, const VScalar& b);
    friend VScalar operator/(const VScalar& a, const VScalar& b);
    VScalar& operator+=(const VScalar& b) { return *this = *this + b; }
    VScalar& operator*=(const VScalar& b) { return *this = *this * b; }
    friend bool operator==(const VScalar& a, const VScalar& b) = default;

    /// Substitution v -> v^{-1}.
    VScalar inverted() const;
    /// Sign of the value: -1, 0 or +1 as an element of Q(v) ordered at v -> 0+.
    int compare_to_zero() const;

    /// Exact value at v = v0; throws Error(Pole) when the denominator vanishes.
    Rational eval_at(const Rational& v0) const;

    /// "num(v)/den(v)", e.g. "1*v^-1+1*v^1/1*v^0".
    std::string to_string() const;
    static VScalar parse(std::string_view text);

private:
    void normalize();

    LaurentPoly num_;
    LaurentPoly den_{Integer(1)};
};

/// [m] = (v^m - v^{-m}) / (v - v^{-1})
VScalar qbracket(int m);
/// [m]! = [m][m-1]...[1]
VScalar qbracket_factorial(int m);
/// [m]_k = [m][m+1]...[m+k-1]
VScalar qbracket_poch(int m, int k);

/// Exact polynomial gcd over Z[v] (primitive remainder sequence), normalized
/// to positive leading coefficient. Both arguments are honest polynomials
/// (low() >= 0 is not required; the v-power content is handled by the caller).
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace qchar
