#include "qchar/multivar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace qchar {

// ------------------------------------------------------------------ ZMonomial

bool ZMonomial::is_one() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool ZMonomial::all_nonneg() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x >= 0; });
}

bool ZMonomial::all_nonpos() const {
    return std::all_of(e.begin(), e.end(), [](int x) { return x <= 0; });
}

int ZMonomial::total_degree() const { return std::accumulate(e.begin(), e.end(), 0); }

ZMonomial ZMonomial::operator-() const {
    ZMonomial r = *this;
    for (auto& x : r.e) x = -x;
    return r;
}

ZMonomial operator+(const ZMonomial& a, const ZMonomial& b) {
    if (a.rank() != b.rank()) throw Error(ErrorKind::Precondition, "monomial rank mismatch");
    ZMonomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
    return r;
}

ZMonomial operator-(const ZMonomial& a, const ZMonomial& b) { return a + (-b); }

ZMonomial operator*(int k, const ZMonomial& a) {
    ZMonomial r = a;
    for (auto& x : r.e) x *= k;
    return r;
}

ZMonomial z_range(std::size_t rank, int k, int l) {
    ZMonomial m(rank);
    for (int j = k + 1; j <= l; ++j) m.e[j - 1] = 1;
    return m;
}

ZMonomial z_unit(std::size_t rank, int i) { return z_range(rank, i - 1, i); }

// --------------------------------------------------------------- FactoredExpr

FactoredExpr::FactoredExpr(VScalar coeff, ZMonomial mono, std::vector<PochFactor> num,
                           std::vector<PochFactor> den, std::vector<SparsePoly> den_polys)
    : coeff_(std::move(coeff)),
      mono_(std::move(mono)),
      num_(std::move(num)),
      den_(std::move(den)),
      den_polys_(std::move(den_polys)) {
    normalize();
}

FactoredExpr FactoredExpr::monomial(long c, int vpow, ZMonomial mono) {
    return FactoredExpr(VScalar::monomial(c, vpow), std::move(mono));
}

bool FactoredExpr::has_infinite_factor() const {
    auto inf = [](const PochFactor& f) { return f.infinite(); };
    return std::any_of(num_.begin(), num_.end(), inf) || std::any_of(den_.begin(), den_.end(), inf);
}

namespace {

using Elementary = std::map<std::pair<ZMonomial, int>, int>;  // (mu, a) -> multiplicity

void regroup(Elementary& counts, int sign, std::vector<PochFactor>& out) {
    // counts with the given sign become runs (q^a z^mu)_len
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        while (it->second * sign > 0) {
            const ZMonomial& mu = it->first.first;
            const int a = it->first.second;
            int len = 0;
            auto cur = it;
            while (cur != counts.end() && cur->first.first == mu && cur->first.second == a + len &&
                   cur->second * sign > 0) {
                cur->second -= sign;
                ++len;
                ++cur;
            }
            out.push_back(PochFactor{a, mu, len});
        }
    }
}

}  // namespace

void FactoredExpr::normalize() {
    if (coeff_.is_zero()) {
        num_.clear();
        den_.clear();
        den_polys_.clear();
        return;
    }
    Elementary counts;
    std::vector<PochFactor> inf_num, inf_den;
    auto collect = [&](const std::vector<PochFactor>& fs, int sign, std::vector<PochFactor>& inf) {
        for (const auto& f : fs) {
            if (f.z.rank() != mono_.rank()) throw Error(ErrorKind::Precondition, "factor rank mismatch");
            if (f.infinite()) {
                inf.push_back(f);
                continue;
            }
            if (*f.length < 0) throw Error(ErrorKind::Precondition, "negative Pochhammer length");
            for (int j = 0; j < *f.length; ++j) counts[{f.z, f.q_shift + j}] += sign;
        }
    };
    collect(num_, 1, inf_num);
    collect(den_, -1, inf_den);
    for (auto it = counts.begin(); it != counts.end();) {
        if (it->second == 0) {
            it = counts.erase(it);
            continue;
        }
        if (it->first.second == 0 && it->first.first.is_one()) {
            if (it->second > 0) {
                *this = FactoredExpr(VScalar(0), ZMonomial(mono_.rank()));
                return;
            }
            throw Error(ErrorKind::Pole, "denominator contains the factor (1 - 1)");
        }
        ++it;
    }
    // Cancel identical infinite factors.
    std::sort(inf_num.begin(), inf_num.end());
    std::sort(inf_den.begin(), inf_den.end());
    std::vector<PochFactor> keep_num, keep_den;
    std::set_difference(inf_num.begin(), inf_num.end(), inf_den.begin(), inf_den.end(),
                        std::back_inserter(keep_num));
    std::set_difference(inf_den.begin(), inf_den.end(), inf_num.begin(), inf_num.end(),
                        std::back_inserter(keep_den));
    num_ = std::move(keep_num);
    den_ = std::move(keep_den);
    regroup(counts, 1, num_);
    regroup(counts, -1, den_);
    std::sort(num_.begin(), num_.end());
    std::sort(den_.begin(), den_.end());
}

FactoredExpr operator*(const FactoredExpr& a, const FactoredExpr& b) {
    if (a.is_zero() || b.is_zero()) return FactoredExpr(VScalar(0), ZMonomial(a.rank()));
    std::vector<PochFactor> num = a.num_, den = a.den_;
    num.insert(num.end(), b.num_.begin(), b.num_.end());
    den.insert(den.end(), b.den_.begin(), b.den_.end());
    std::vector<SparsePoly> polys = a.den_polys_;
    polys.insert(polys.end(), b.den_polys_.begin(), b.den_polys_.end());
    return FactoredExpr(a.coeff_ * b.coeff_, a.mono_ + b.mono_, std::move(num), std::move(den), std::move(polys));
}

FactoredExpr FactoredExpr::scaled(const VScalar& c) const {
    FactoredExpr r = *this;
    r.coeff_ = r.coeff_ * c;
    if (r.coeff_.is_zero()) r.normalize();
    return r;
}

FactoredExpr FactoredExpr::times_qpow(int a) const { return scaled(VScalar::v_power(2 * a)); }

FactoredExpr FactoredExpr::times_mono(const ZMonomial& m) const {
    FactoredExpr r = *this;
    r.mono_ = r.mono_ + m;
    return r;
}

FactoredExpr FactoredExpr::divided_by(const SparsePoly& p) const {
    FactoredExpr r = *this;
    r.den_polys_.push_back(p);
    return r;
}

FactoredExpr FactoredExpr::inverse() const {
    if (!den_polys_.empty()) throw Error(ErrorKind::Precondition, "cannot invert an expression with polynomial denominators");
    return FactoredExpr(coeff_.inverse(), -mono_, den_, num_);
}

FactoredExpr FactoredExpr::substituted(const std::vector<int>& qshift, const std::vector<ZMonomial>& image) const {
    if (qshift.size() != rank() || image.size() != rank())
        throw Error(ErrorKind::Precondition, "substitution arity mismatch");
    const std::size_t target = image.empty() ? 0 : image.front().rank();
    auto map_mono = [&](const ZMonomial& m, int& qpow) {
        ZMonomial out(target);
        for (std::size_t i = 0; i < m.rank(); ++i) {
            if (m[i] == 0) continue;
            qpow += m[i] * qshift[i];
            out = out + m[i] * image[i];
        }
        return out;
    };
    int qpow = 0;
    ZMonomial mono = map_mono(mono_, qpow);
    VScalar coeff = coeff_ * VScalar::v_power(2 * qpow);
    auto map_factors = [&](const std::vector<PochFactor>& fs) {
        std::vector<PochFactor> out;
        for (const auto& f : fs) {
            int shift = 0;
            ZMonomial z = map_mono(f.z, shift);
            out.push_back(PochFactor{f.q_shift + shift, std::move(z), f.length});
        }
        return out;
    };
    std::vector<SparsePoly> polys;
    for (const auto& p : den_polys_) {
        SparsePoly np;
        for (const auto& t : p.terms) {
            int shift = 0;
            ZMonomial z = map_mono(t.z, shift);
            np.terms.push_back(PolyTerm{t.coeff, t.vpow + 2 * shift, std::move(z)});
        }
        polys.push_back(std::move(np));
    }
    return FactoredExpr(std::move(coeff), std::move(mono), map_factors(num_), map_factors(den_), std::move(polys));
}

FactoredExpr FactoredExpr::shifted(const std::vector<int>& qshift) const {
    std::vector<ZMonomial> image;
    for (std::size_t i = 0; i < rank(); ++i) image.push_back(z_unit(rank(), static_cast<int>(i) + 1));
    return substituted(qshift, image);
}

FactoredExpr FactoredExpr::inverted_z() const {
    std::vector<ZMonomial> image;
    for (std::size_t i = 0; i < rank(); ++i) image.push_back(-z_unit(rank(), static_cast<int>(i) + 1));
    return substituted(std::vector<int>(rank(), 0), image);
}

// -------------------------------------------------------------------- TermSum

TermSum::TermSum(std::size_t rank, std::vector<FactoredExpr> terms) : rank_(rank) {
    for (auto& t : terms) add(std::move(t));
}

TermSum TermSum::single(FactoredExpr e) {
    TermSum s(e.rank());
    s.add(std::move(e));
    return s;
}

void TermSum::add(FactoredExpr e) {
    if (e.is_zero()) return;
    if (e.rank() != rank_) throw Error(ErrorKind::Precondition, "TermSum rank mismatch");
    terms_.push_back(std::move(e));
}

void TermSum::add(const TermSum& other) {
    for (const auto& t : other.terms_) add(t);
}

TermSum TermSum::operator-() const {
    TermSum r(rank_);
    for (const auto& t : terms_) r.add(t.scaled(VScalar(-1)));
    return r;
}

TermSum operator+(const TermSum& a, const TermSum& b) {
    TermSum r = a;
    r.add(b);
    return r;
}

TermSum operator-(const TermSum& a, const TermSum& b) { return a + (-b); }

TermSum operator*(const TermSum& a, const TermSum& b) {
    TermSum r(a.rank_);
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) r.add(x * y);
    return r;
}

TermSum operator*(const TermSum& a, const FactoredExpr& b) {
    TermSum r(a.rank_);
    for (const auto& x : a.terms_) r.add(x * b);
    return r;
}

TermSum TermSum::substituted(const std::vector<int>& qshift, const std::vector<ZMonomial>& image) const {
    TermSum r(image.empty() ? 0 : image.front().rank());
    for (const auto& t : terms_) r.add(t.substituted(qshift, image));
    return r;
}

TermSum TermSum::shifted(const std::vector<int>& qshift) const {
    TermSum r(rank_);
    for (const auto& t : terms_) r.add(t.shifted(qshift));
    return r;
}

TermSum TermSum::inverted_z() const {
    TermSum r(rank_);
    for (const auto& t : terms_) r.add(t.inverted_z());
    return r;
}

TermSum poch_finite_expand(const PochFactor& f) {
    if (f.infinite()) throw Error(ErrorKind::InfiniteFactor, "cannot multiply out an infinite product");
    // coefficient of x^k, x = z^mu, as a Laurent polynomial in v
    std::vector<LaurentPoly> poly{LaurentPoly(Integer(1))};
    for (int j = 0; j < *f.length; ++j) {
        std::vector<LaurentPoly> next(poly.size() + 1);
        const LaurentPoly factor = LaurentPoly::monomial(Integer(-1), 2 * (f.q_shift + j));
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] = next[k] + poly[k];
            next[k + 1] = next[k + 1] + poly[k] * factor;
        }
        poly = std::move(next);
    }
    TermSum out(f.z.rank());
    for (std::size_t k = 0; k < poly.size(); ++k) {
        if (poly[k].is_zero()) continue;
        out.add(FactoredExpr(VScalar(poly[k]), static_cast<int>(k) * f.z));
    }
    return out;
}

// ----------------------------------------------------------------- evaluation

EvalPoint::EvalPoint(Rational v0, std::vector<Rational> z0)
    : v_(std::move(v0)), z_(std::move(z0)), zcache_(z_.size()) {}

Rational EvalPoint::v_pow(int k) const {
    auto it = vcache_.find(k);
    if (it != vcache_.end()) return it->second;
    Rational r = rational_pow(v_, k);
    vcache_.emplace(k, r);
    return r;
}

Rational EvalPoint::z_pow(const ZMonomial& m) const {
    if (m.rank() != z_.size()) throw Error(ErrorKind::Precondition, "evaluation point rank mismatch");
    Rational r = 1;
    for (std::size_t i = 0; i < m.rank(); ++i) {
        if (m[i] == 0) continue;
        auto& cache = zcache_[i];
        auto it = cache.find(m[i]);
        if (it == cache.end()) it = cache.emplace(m[i], rational_pow(z_[i], m[i])).first;
        r *= it->second;
    }
    return r;
}

Rational eval_exact(const FactoredExpr& e, const EvalPoint& p) {
    if (e.is_zero()) return 0;
    if (e.has_infinite_factor()) throw Error(ErrorKind::InfiniteFactor, "term has an infinite Pochhammer factor");
    Rational num = e.coeff().eval_at(p.v()) * p.z_pow(e.mono());
    Rational den = 1;
    auto product = [&](const std::vector<PochFactor>& fs, Rational& acc) {
        for (const auto& f : fs) {
            const Rational zm = p.z_pow(f.z);
            for (int j = 0; j < *f.length; ++j) acc *= 1 - p.q_pow(f.q_shift + j) * zm;
        }
    };
    product(e.num(), num);
    product(e.den(), den);
    for (const auto& poly : e.den_polys()) {
        Rational s = 0;
        for (const auto& t : poly.terms) s += Rational(t.coeff) * p.v_pow(t.vpow) * p.z_pow(t.z);
        den *= s;
    }
    if (den == 0) throw Error(ErrorKind::Pole, "denominator vanishes at evaluation point");
    return num / den;
}

Rational eval_exact(const TermSum& s, const EvalPoint& p) {
    Rational acc = 0;
    for (const auto& t : s.terms()) acc += eval_exact(t, p);
    return acc;
}

Rational eval_exact(const TermSum& s, const Rational& v0, const std::vector<Rational>& z0) {
    return eval_exact(s, EvalPoint(v0, z0));
}

EqualityResult termsum_equal(const TermSum& a, const TermSum& b, int trials, std::uint64_t seed) {
    EqualityResult res;
    res.seed = seed;
    if (a.rank() != b.rank() && !a.empty() && !b.empty())
        throw Error(ErrorKind::Precondition, "termsum_equal: rank mismatch");
    const std::size_t rank = std::max(a.rank(), b.rank());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> small(1, 37);
    std::uniform_int_distribution<int> coin(0, 1);
    auto random_rational = [&]() {
        for (;;) {
            Rational r(small(rng), small(rng));
            r.canonicalize();
            if (coin(rng)) r = -r;
            if (abs(r) != 1) return r;
        }
    };
    const int budget = 20 * std::max(trials, 1);
    int attempts = 0;
    while (res.trials < trials) {
        if (attempts++ >= budget)
            throw Error(ErrorKind::SamplingBudget, "only " + std::to_string(res.trials) + " of " +
                                                       std::to_string(trials) + " usable points");
        Rational v0 = random_rational();
        std::vector<Rational> z0;
        for (std::size_t i = 0; i < rank; ++i) z0.push_back(random_rational());
        EvalPoint pt(v0, z0);
        Rational va, vb;
        try {
            va = eval_exact(a, pt);
            vb = eval_exact(b, pt);
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::Pole) continue;
            throw;
        }
        ++res.trials;
        if (va != vb) {
            std::ostringstream os;
            os << "v0=" << v0.get_str() << ", z0=[";
            for (std::size_t i = 0; i < z0.size(); ++i) os << (i ? "," : "") << z0[i].get_str();
            os << "]: " << va.get_str() << " vs " << vb.get_str();
            res.witness = os.str();
            res.equal = false;
            return res;
        }
    }
    res.equal = true;
    return res;
}

}  // namespace qchar
