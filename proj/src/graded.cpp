#include "qchar/graded.hpp"

#include <json.hpp>

#include "qchar/checked.hpp"

namespace qchar {

long GradedSpec::valuation(const ZMonomial& mu, int vpow) const {
    long s = static_cast<long>(vpow) * denom;
    for (std::size_t i = 0; i < mu.rank(); ++i) s -= 2L * weight[i] * mu[i];
    return s;
}

std::int64_t GradedSeries::coeff(const ZMonomial& z, int vpow) const {
    auto it = terms_.find({z, vpow});
    return it == terms_.end() ? 0 : it->second;
}

void GradedSeries::add_term(const ZMonomial& z, int vpow, std::int64_t c) {
    if (c == 0 || spec_.valuation(z, vpow) > spec_.max_valuation) return;
    auto [it, fresh] = terms_.try_emplace({z, vpow}, 0);
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
}

void GradedSeries::require_same(const GradedSeries& b) const {
    if (rank_ != b.rank_ || !(spec_ == b.spec_))
        throw Error(ErrorKind::SpecMismatch, "graded series with different rank or spec");
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& b) {
    require_same(b);
    for (const auto& [k, c] : b.terms_) add_term(k.first, k.second, c);
    return *this;
}

GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
    a.require_same(b);
    GradedSeries r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, checked_mul(c, -1));
    return r;
}

std::optional<GradedDiff> GradedSeries::compare(const GradedSeries& b) const {
    require_same(b);
    const GradedSeries d = *this - b;
    if (d.terms_.empty()) return std::nullopt;
    const auto& [key, c] = *d.terms_.begin();
    return GradedDiff{key.first, key.second, coeff(key.first, key.second), b.coeff(key.first, key.second)};
}

std::string GradedSeries::to_json() const {
    nlohmann::ordered_json j;
    j["rank"] = rank_;
    j["weight"] = spec_.weight;
    j["denom"] = spec_.denom;
    j["max_valuation"] = spec_.max_valuation;
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [k, c] : terms_)
        terms.push_back({{"z", k.first.e}, {"v", k.second}, {"c", std::to_string(c)}});
    j["terms"] = std::move(terms);
    return j.dump();
}

namespace {

struct Gen {
    ZMonomial mu;
    int vpow;
    long val;
    int power;  // +1 numerator, -1 denominator
};

using Sparse = std::map<GradedSeries::Key, std::int64_t>;

void add_to(Sparse& s, const ZMonomial& z, int v, std::int64_t c) {
    if (c == 0) return;
    auto [it, fresh] = s.try_emplace({z, v}, 0);
    it->second = checked_add(it->second, c);
    if (it->second == 0) s.erase(it);
}

}  // namespace

GradedSeries expand_graded(const FactoredExpr& e, std::size_t rank, const GradedSpec& spec) {
    GradedSeries out(rank, spec);
    if (e.is_zero()) return out;
    if (!e.den_polys().empty())
        throw Error(ErrorKind::Precondition, "expansion of an unfactored denominator polynomial is not supported");
    if (spec.weight.size() != rank) throw Error(ErrorKind::Precondition, "graded spec rank mismatch");

    int sign = 1;
    int pre_v = 0;
    ZMonomial pre_z = e.mono();
    std::vector<Gen> gens;
    auto elementary = [&](const ZMonomial& mu, int a, int power) {
        const long val = spec.valuation(mu, 2 * a);
        if (val == 0) throw Error(ErrorKind::AmbiguousRegion, "factor of valuation zero in the graded region");
        if (val > 0) {
            gens.push_back(Gen{mu, 2 * a, val, power});
            return;
        }
        // 1 - g = -g (1 - 1/g)
        if (power % 2 != 0) sign = -sign;
        pre_v += power * 2 * a;
        pre_z = pre_z + power * mu;
        gens.push_back(Gen{-mu, -2 * a, -val, power});
    };

    std::vector<std::pair<const PochFactor*, int>> infinite;
    for (const auto& f : e.num()) {
        if (f.infinite()) infinite.push_back({&f, 1});
        else
            for (int j = 0; j < *f.length; ++j) elementary(f.z, f.q_shift + j, 1);
    }
    for (const auto& f : e.den()) {
        if (f.infinite()) infinite.push_back({&f, -1});
        else
            for (int j = 0; j < *f.length; ++j) elementary(f.z, f.q_shift + j, -1);
    }
    // Infinite products: only the finitely many non-positive generators flip.
    std::vector<std::pair<Gen, bool>> tails;  // first positive generator, unbounded
    for (const auto& [f, power] : infinite) {
        int a = f->q_shift;
        while (spec.valuation(f->z, 2 * a) <= 0) elementary(f->z, a++, power);
        tails.push_back({Gen{f->z, 2 * a, spec.valuation(f->z, 2 * a), power}, true});
    }

    const LaurentPoly& num = e.coeff().num();
    const LaurentPoly& den = e.coeff().den();
    const long base = spec.valuation(pre_z, pre_v) + static_cast<long>(num.low()) * spec.denom;
    const long budget = spec.max_valuation - base;
    if (budget < 0) return out;

    for (const auto& [g, unused] : tails) {
        (void)unused;
        // (g; q)_inf -> generators g, g q, g q^2, ... until beyond budget
        for (Gen cur = g; cur.val <= budget; cur.vpow += 2, cur.val += 2L * spec.denom) gens.push_back(cur);
    }

    Sparse s;
    s[{ZMonomial(rank), 0}] = 1;
    auto val_of = [&](const GradedSeries::Key& k) { return spec.valuation(k.first, k.second); };
    for (const auto& g : gens) {
        if (g.val > budget) continue;
        Sparse next;
        if (g.power < 0) {
            for (const auto& [k, c] : s) {
                ZMonomial z = k.first;
                int v = k.second;
                for (long val = val_of(k); val <= budget; val += g.val) {
                    add_to(next, z, v, c);
                    z = z + g.mu;
                    v += g.vpow;
                }
            }
        } else {
            for (const auto& [k, c] : s) {
                add_to(next, k.first, k.second, c);
                if (val_of(k) + g.val <= budget) add_to(next, k.first + g.mu, k.second + g.vpow, checked_mul(c, -1));
            }
        }
        s = std::move(next);
    }

    // 1 / den(v) as a power series in v (constant term +-1)
    const Integer& d0 = den.coeffs().front();
    if (d0 != 1 && d0 != -1)
        throw Error(ErrorKind::Precondition, "coefficient denominator must have constant term +-1 for expansion");
    const long vmax = budget / spec.denom;
    std::vector<std::int64_t> inv(vmax + 1, 0);
    std::vector<std::int64_t> dc;
    for (const auto& c : den.coeffs()) {
        if (!c.fits_slong_p()) throw Error(ErrorKind::Overflow, "coefficient does not fit in 64 bits");
        dc.push_back(c.get_si());
    }
    for (long j = 0; j <= vmax; ++j) {
        std::int64_t acc = j == 0 ? 1 : 0;
        for (std::size_t k = 1; k < dc.size() && static_cast<long>(k) <= j; ++k)
            acc = checked_sub(acc, checked_mul(dc[k], inv[j - k]));
        inv[j] = dc[0] == 1 ? acc : checked_mul(acc, -1);
    }

    for (const auto& [k, c] : s) {
        const long room = (budget - val_of(k)) / spec.denom;
        for (long j = 0; j <= room; ++j) {
            if (inv[j] == 0) continue;
            const std::int64_t cj = checked_mul(c, inv[j]);
            for (std::size_t t = 0; t < num.coeffs().size(); ++t) {
                const Integer& nc = num.coeffs()[t];
                if (nc == 0) continue;
                if (!nc.fits_slong_p()) throw Error(ErrorKind::Overflow, "coefficient does not fit in 64 bits");
                out.add_term(pre_z + k.first, pre_v + k.second + static_cast<int>(j) + num.low() + static_cast<int>(t),
                             checked_mul(checked_mul(cj, nc.get_si()), sign));
            }
        }
    }
    return out;
}

GradedSeries expand_graded(const TermSum& s, const GradedSpec& spec) {
    GradedSeries out(s.rank(), spec);
    for (const auto& t : s.terms()) out += expand_graded(t, s.rank(), spec);
    return out;
}

}  // namespace qchar
