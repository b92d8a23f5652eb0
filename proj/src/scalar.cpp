#include "qchar/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace qchar {

namespace {

using Dense = std::vector<Integer>;  // ascending coefficients, no offset

void trim_dense(Dense& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Dense& p) { return static_cast<int>(p.size()) - 1; }

Integer dense_content(const Dense& p) {
    Integer g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Dense primitive_part(Dense p) {
    trim_dense(p);
    if (p.empty()) return p;
    Integer g = dense_content(p);
    if (p.back() < 0) g = -g;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
}

// lc(b)^(deg a - deg b + 1) * a  mod  b
Dense pseudo_remainder(Dense a, const Dense& b) {
    const int db = degree(b);
    const Integer& lb = b.back();
    while (degree(a) >= db && !a.empty()) {
        const int shift = degree(a) - db;
        const Integer la = a.back();
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
        trim_dense(a);
    }
    return a;
}

// Exact division over Z; the caller guarantees divisibility.
Dense divide_exact(Dense a, const Dense& b) {
    const int db = degree(b);
    if (degree(a) < db) return {};
    Dense quot(degree(a) - db + 1);
    for (int k = degree(a) - db; k >= 0; --k) {
        Integer c = a[k + db];
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), b.back().get_mpz_t());
        quot[k] = c;
        for (int i = 0; i <= db; ++i) a[i + k] -= c * b[i];
    }
    return quot;
}

Dense to_dense(const LaurentPoly& p) { return p.coeffs(); }

}  // namespace

Rational rational_pow(const Rational& base, long exponent) {
    Rational result;
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), e);
    result.canonicalize();
    if (exponent < 0) {
        if (result == 0) throw Error(ErrorKind::Pole, "negative power of zero");
        result = 1 / result;
    }
    return result;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(Integer constant) : low_(0), coeffs_{std::move(constant)} { trim(); }

LaurentPoly::LaurentPoly(int low, std::vector<Integer> coeffs) : low_(low), coeffs_(std::move(coeffs)) {
    trim();
}

LaurentPoly LaurentPoly::monomial(Integer c, int power) { return LaurentPoly(power, {std::move(c)}); }

void LaurentPoly::trim() {
    trim_dense(coeffs_);
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        low_ += static_cast<int>(lead);
    }
    if (coeffs_.empty()) low_ = 0;
}

Integer LaurentPoly::coeff(int power) const {
    const int idx = power - low_;
    if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[idx];
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int lo = std::min(a.low_, b.low_);
    const int hi = std::max(a.high(), b.high());
    std::vector<Integer> c(hi - lo + 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[a.low_ - lo + i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[b.low_ - lo + i] += b.coeffs_[i];
    return LaurentPoly(lo, std::move(c));
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return LaurentPoly(a.low_ + b.low_, std::move(c));
}

LaurentPoly LaurentPoly::shifted(int by) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.low_ += by;
    return r;
}

LaurentPoly LaurentPoly::inverted() const {
    if (is_zero()) return {};
    std::vector<Integer> c(coeffs_.rbegin(), coeffs_.rend());
    return LaurentPoly(-high(), std::move(c));
}

Integer LaurentPoly::content() const { return dense_content(coeffs_); }

LaurentPoly LaurentPoly::divided_by_integer(const Integer& c) const {
    LaurentPoly r = *this;
    for (auto& x : r.coeffs_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return r;
}

Rational LaurentPoly::eval(const Rational& v0) const {
    if (is_zero()) return 0;
    if (v0 == 0) {
        if (low_ < 0) throw Error(ErrorKind::Pole, "negative v-power at v = 0");
        return low_ == 0 ? Rational(coeffs_[0]) : Rational(0);
    }
    // Horner on the polynomial part, then the v^low factor.
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v0 + Rational(*it);
    return acc * rational_pow(v0, low_);
}

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Integer& c = coeffs_[i];
        if (c == 0) continue;
        if (!first && c > 0) os << '+';
        os << c.get_str() << "*v^" << (low_ + static_cast<int>(i));
        first = false;
    }
    return os.str();
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    Dense x = primitive_part(to_dense(a));
    Dense y = primitive_part(to_dense(b));
    if (x.empty()) return LaurentPoly(0, y);
    if (y.empty()) return LaurentPoly(0, x);
    if (degree(x) < degree(y)) std::swap(x, y);
    while (!y.empty()) {
        Dense r = primitive_part(pseudo_remainder(x, y));
        x = std::move(y);
        y = std::move(r);
    }
    return LaurentPoly(0, x);
}

// -------------------------------------------------------------------- VScalar

VScalar::VScalar(long c) : num_(Integer(c)) {}

VScalar::VScalar(LaurentPoly num) : num_(std::move(num)) {}

VScalar::VScalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    normalize();
}

VScalar VScalar::monomial(long c, int power) { return VScalar(LaurentPoly::monomial(Integer(c), power)); }

bool VScalar::is_one() const { return num_ == LaurentPoly(Integer(1)) && den_ == LaurentPoly(Integer(1)); }

bool VScalar::is_laurent() const { return den_ == LaurentPoly(Integer(1)); }

bool VScalar::is_monomial() const { return is_laurent() && num_.is_monomial(); }

void VScalar::normalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(Integer(1));
        return;
    }
    // Move all pure v-power content of the denominator into the numerator.
    const int s = den_.low();
    den_ = den_.shifted(-s);
    num_ = num_.shifted(-s);
    const int t = num_.low();
    Dense n = to_dense(num_);
    Dense d = to_dense(den_);
    if (d.size() > 1) {
        Dense g = to_dense(poly_gcd(LaurentPoly(0, n), LaurentPoly(0, d)));
        if (g.size() > 1) {
            n = divide_exact(std::move(n), g);
            d = divide_exact(std::move(d), g);
        }
    }
    Integer c = dense_content(n);
    const Integer cd = dense_content(d);
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
    if (d.back() < 0) c = -c;
    if (c != 1) {
        for (auto& x : n) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
        for (auto& x : d) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
    num_ = LaurentPoly(t, std::move(n));
    den_ = LaurentPoly(0, std::move(d));
}

VScalar VScalar::operator-() const {
    VScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

VScalar VScalar::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return VScalar(den_, num_);
}

VScalar operator+(const VScalar& a, const VScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_laurent() && b.is_laurent()) {
        VScalar r(a.num_ + b.num_);
        r.normalize();
        return r;
    }
    return VScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

VScalar operator-(const VScalar& a, const VScalar& b) { return a + (-b); }

VScalar operator*(const VScalar& a, const VScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_laurent() && b.is_laurent()) {
        VScalar r(a.num_ * b.num_);
        r.normalize();
        return r;
    }
    return VScalar(a.num_ * b.num_, a.den_ * b.den_);
}

VScalar operator/(const VScalar& a, const VScalar& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero VScalar");
    return VScalar(a.num_ * b.den_, a.den_ * b.num_);
}

VScalar VScalar::inverted() const { return VScalar(num_.inverted(), den_.inverted()); }

int VScalar::compare_to_zero() const {
    if (is_zero()) return 0;
    const int sn = sgn(num_.coeffs().front());
    const int sd = sgn(den_.coeffs().front());
    return sn * sd;
}

Rational VScalar::eval_at(const Rational& v0) const {
    const Rational d = den_.eval(v0);
    if (d == 0) throw Error(ErrorKind::Pole, "denominator vanishes at v0 = " + v0.get_str());
    return num_.eval(v0) / d;
}

std::string VScalar::to_string() const { return num_.to_string() + "/" + den_.to_string(); }

namespace {

LaurentPoly parse_laurent(std::string_view s) {
    if (s == "0") return {};
    LaurentPoly acc;
    std::size_t i = 0;
    auto fail = [&] { throw Error(ErrorKind::Parse, "bad polynomial '" + std::string(s) + "'"); };
    while (i < s.size()) {
        std::size_t j = i;
        if (s[j] == '+' || s[j] == '-') ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        std::string coeff(s.substr(i, j - i));
        if (!coeff.empty() && coeff[0] == '+') coeff.erase(0, 1);
        if (coeff.empty() || coeff == "-") fail();
        if (s.substr(j, 3) != "*v^") fail();
        j += 3;
        std::size_t k = j;
        if (k < s.size() && s[k] == '-') ++k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j) fail();
        const int power = std::stoi(std::string(s.substr(j, k - j)));
        acc = acc + LaurentPoly::monomial(Integer(coeff), power);
        i = k;
    }
    return acc;
}

}  // namespace

VScalar VScalar::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return VScalar(parse_laurent(text), LaurentPoly(Integer(1)));
    return VScalar(parse_laurent(text.substr(0, slash)), parse_laurent(text.substr(slash + 1)));
}

// ------------------------------------------------------------ q-brackets

VScalar qbracket(int m) {
    if (m == 0) return {};
    const int a = m < 0 ? -m : m;
    // v^{a-1} + v^{a-3} + ... + v^{1-a}
    std::vector<Integer> c(2 * a - 1);
    for (int i = 0; i < 2 * a - 1; i += 2) c[i] = m < 0 ? -1 : 1;
    return VScalar(LaurentPoly(1 - a, std::move(c)));
}

VScalar qbracket_factorial(int m) {
    if (m < 0) throw Error(ErrorKind::Precondition, "[m]! requires m >= 0");
    VScalar r(1);
    for (int i = 2; i <= m; ++i) r *= qbracket(i);
    return r;
}

VScalar qbracket_poch(int m, int k) {
    if (k < 0) throw Error(ErrorKind::Precondition, "[m]_k requires k >= 0");
    VScalar r(1);
    for (int i = 0; i < k; ++i) r *= qbracket(m + i);
    return r;
}

}  // namespace qchar
