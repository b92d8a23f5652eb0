#include "qchar/characters.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <sstream>

namespace qchar {

namespace {

PochFactor qpoch(int len, std::size_t rank) { return PochFactor{1, ZMonomial(rank), len}; }

bool window_starts_at_zero(const TruncSpec& t) {
    return std::all_of(t.zmin.begin(), t.zmin.end(), [](int x) { return x == 0; });
}

RootVec cartan_times(const RootVec& d) {
    const int n = static_cast<int>(d.size());
    RootVec c(n);
    for (int i = 0; i < n; ++i) c[i] = 2 * d[i] - (i > 0 ? d[i - 1] : 0) - (i + 1 < n ? d[i + 1] : 0);
    return c;
}

// q^{k (d,d)/2} z^{k d}
FactoredExpr level_prefix(int k, const RootVec& d) {
    RootVec kd = d;
    for (int& x : kd) x *= k;
    return FactoredExpr(VScalar::v_power(k * root_form(d, d)), ZMonomial(kd));
}

std::string diff_text(const SeriesDiff& d) {
    std::ostringstream os;
    os << "z=[";
    for (std::size_t i = 0; i < d.z.rank(); ++i) os << (i ? "," : "") << d.z[i];
    os << "] v^" << d.vpow << ": " << d.lhs << " vs " << d.rhs;
    return os.str();
}

std::string diff_text(const GradedDiff& d) {
    std::ostringstream os;
    os << "z=[";
    for (std::size_t i = 0; i < d.z.rank(); ++i) os << (i ? "," : "") << d.z[i];
    os << "] v^" << d.vpow << ": " << d.lhs << " vs " << d.rhs;
    return os.str();
}

// beta restricted to its first i components
RootVec head(const RootVec& beta, int i) { return RootVec(beta.begin(), beta.begin() + i); }

}  // namespace

TruncSeries char_fermionic(const CharSpec& spec) {
    const int n = spec.n;
    if (n < 1 || spec.k < 0) throw Error(ErrorKind::Precondition, "need n >= 1 and k >= 0");
    if (!window_starts_at_zero(spec.trunc)) throw Error(ErrorKind::Precondition, "character windows start at z^0");
    TruncSeries out(n, spec.trunc);
    if (spec.k == 0) {
        out.add_term(ZMonomial(n), 0, 1);
        return out;
    }
    // every particle sits at t >= 1, so I_d has z-degree >= |d|
    for (int h = 0; h <= spec.trunc.max_degree; ++h)
        for (const auto& d : roots_of_height(n, h)) out += expand(fermionic_sum(n, d, 1, spec.k), spec.trunc);
    return out;
}

FactoredExpr infinite_prefactor(int n) {
    std::vector<PochFactor> den;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) den.push_back(PochFactor{1, z_range(n, i, j), std::nullopt});
    return FactoredExpr(VScalar(1), ZMonomial(n), {}, std::move(den));
}

TermSum tilde_j_terms(int n, const RootVec& d) {
    return jd_explicit(n, d).inverted_z() * infinite_prefactor(n);
}

TruncSeries tilde_j(int n, const RootVec& d, const TruncSpec& trunc) { return expand(tilde_j_terms(n, d), trunc); }

TruncSeries char_bosonic(const CharSpec& spec, TruncationBounds* bounds) {
    const int n = spec.n, k = spec.k;
    if (n < 1 || k < 1) throw Error(ErrorKind::Precondition, "need n >= 1 and k >= 1");
    if (!window_starts_at_zero(spec.trunc)) throw Error(ErrorKind::Precondition, "character windows start at z^0");
    const int dmax = spec.trunc.max_degree;
    TruncSeries out(n, spec.trunc);
    auto layer = [&](int h, bool keep) {
        int lowest = INT32_MAX;
        for (const auto& d : roots_of_height(n, h)) {
            const TermSum t = tilde_j_terms(n, d).shifted(cartan_times(d)) * level_prefix(k, d);
            for (const auto& term : t.terms()) {
                const int deg = expansion_min_degree(term);
                if (deg < k * h)
                    throw Error(ErrorKind::NonExpandable, "bosonic term below its level prefix; truncation not certified");
                lowest = std::min(lowest, deg);
            }
            if (keep) out += expand(t, spec.trunc);
        }
        return lowest;
    };
    const int hmax = dmax / k;
    for (int h = 0; h <= hmax; ++h) layer(h, true);
    // the first dropped layer lies entirely outside the window
    const int next = layer(hmax + 1, false);
    if (bounds) {
        (*bounds)["max_height"] = hmax;
        (*bounds)["first_dropped_min_degree"] = next;
    }
    return out;
}

TruncSeries sl2_formula(int k, const TruncSpec& trunc) {
    TermSum s(1);
    for (int m = 0; k * m <= trunc.max_degree; ++m) {
        s.add(FactoredExpr(VScalar::v_power(2 * k * m * m), ZMonomial{k * m}, {},
                           {PochFactor{2 * m + 1, ZMonomial{1}, std::nullopt}, qpoch(m, 1),
                            PochFactor{1 - 2 * m, ZMonomial{-1}, m}}));
    }
    return expand(s, trunc);
}

namespace {

TruncSeries sl3_sum(int k, const TruncSpec& trunc, const std::function<TermSum(int, int)>& tilde) {
    TermSum s(2);
    for (int d1 = 0; k * (d1) <= trunc.max_degree; ++d1)
        for (int d2 = 0; k * (d1 + d2) <= trunc.max_degree; ++d2)
            s.add(tilde(d1, d2).shifted({2 * d1 - d2, 2 * d2 - d1}) * level_prefix(k, {d1, d2}));
    return expand(s, trunc);
}

}  // namespace

TruncSeries sl3_bos_formula(int k, const TruncSpec& trunc) {
    return sl3_sum(k, trunc, [](int d1, int d2) {
        const ZMonomial a{-1, 0}, b{0, -1}, ab{-1, -1};
        FactoredExpr j(VScalar(1), ZMonomial(2), {PochFactor{1, ab, d1 + d2}},
                       {qpoch(d1, 2), qpoch(d2, 2), PochFactor{1, a, d1}, PochFactor{1, b, d2}, PochFactor{1, ab, d1},
                        PochFactor{1, ab, d2}});
        return TermSum::single(j * infinite_prefactor(2));
    });
}

TermSum sl3_j_msum(int d1, int d2) {
    TermSum s(2);
    for (int m = 0; m <= std::min(d1, d2); ++m) {
        const int qe = -m * (d2 - m) + m * (m - 1) / 2;
        s.add(FactoredExpr(VScalar::monomial(m % 2 ? -1 : 1, 2 * qe), ZMonomial{m, 0}, {},
                           {qpoch(m, 2), qpoch(d1 - m, 2), qpoch(d2 - m, 2), PochFactor{1, {1, 0}, m},
                            PochFactor{1, {1, 1}, m}, PochFactor{1, {0, 1}, d2 - m}, PochFactor{m - d2, {1, 0}, m},
                            PochFactor{2 * m - d2 + 1, {1, 0}, d1 - m}}));
    }
    return s;
}

TruncSeries sl3_split_formula(int k, const TruncSpec& trunc) {
    return sl3_sum(k, trunc, [](int d1, int d2) { return sl3_j_msum(d1, d2).inverted_z() * infinite_prefactor(2); });
}

TruncSeries sum_j_one_infty(int n, const TruncSpec& trunc) {
    if (!window_starts_at_zero(trunc)) throw Error(ErrorKind::Precondition, "window must start at z^0");
    TruncSeries out(n, trunc);
    for (int h = 0; h <= trunc.max_degree; ++h)
        for (const auto& g : roots_of_height(n, h)) out += tower_sum(TowerSpec::uniform(n, 1), {}, g, trunc);
    return out;
}

std::optional<SeriesDiff> product_check(int n, const TruncSpec& trunc) {
    return sum_j_one_infty(n, trunc).compare(expand(infinite_prefactor(n), n, trunc));
}

EqualityResult convolution_check(int n, int k, const RootVec& beta, std::uint64_t seed) {
    if (k < 1 || static_cast<int>(beta.size()) != n || !in_qplus(beta))
        throw Error(ErrorKind::Precondition, "need k >= 1 and beta in Q^+");
    const TermSum lhs = fermionic_sum(n, beta, 1, k);
    TermSum rhs(n);
    std::vector<ZMonomial> neg, pos;
    for (int i = 1; i <= n; ++i) {
        pos.push_back(z_unit(n, i));
        neg.push_back(-z_unit(n, i));
    }
    for (const auto& alpha : roots_below(beta)) {
        const RootVec rest = beta - alpha;
        std::vector<int> pair(n);
        for (int i = 1; i <= n; ++i) pair[i - 1] = root_form(alpha, simple_root(n, i));
        // weight alpha - lambda - 2 rho: z_i -> q^{-(alpha, alpha_i)} z_i^{-1}
        std::vector<int> minus(n);
        for (int i = 0; i < n; ++i) minus[i] = -pair[i];
        const TermSum a = jd_explicit(n, alpha).substituted(minus, neg);
        // weight lambda - alpha on [1, inf): z_i -> q^{(alpha, alpha_i)} z_i, then one shift
        int zq = 0;
        for (int i = 0; i < n; ++i) zq += rest[i] * pair[i];
        const TermSum b = jd_explicit(n, rest).substituted(pair, pos) *
                          FactoredExpr(VScalar::v_power(root_form(rest, rest) + 2 * zq), ZMonomial(rest));
        rhs.add(a * b * level_prefix(k, alpha));
    }
    return termsum_equal(lhs, rhs, 12, seed);
}

HalfExpr decomposition_coefficient(const WeightExpr& mu, const RootVec& nu, int r, std::size_t rank) {
    const int nn = root_form(nu, nu);
    const int h = height(nu);
    const auto [qe, z] = casimir_pairing(mu, nu, rank);
    std::vector<PochFactor> den(2 * h, qpoch(1, rank));
    ZMonomial zr(rank);
    for (std::size_t i = 0; i < rank; ++i) zr[i] = r * z[i];
    // ((1-q)(1-q^{-1}))^{-h} = (-1)^h q^h (1-q)^{-2h}
    const int vpow = -nn / 2 + r * nn + 2 * r * qe + 2 * h;
    FactoredExpr e(VScalar::monomial(h % 2 ? -1 : 1, vpow), zr, {}, std::move(den));
    return HalfExpr(std::move(e)) * v_pairing(mu, nu, rank);
}

FactoredExpr lemma_dj_rhs(const WeightExpr& lambda, const RootVec& gamma, int r) {
    const int n = lambda.rank();
    if (static_cast<int>(gamma.size()) != n || !in_rplus_i(gamma, n))
        throw Error(ErrorKind::Precondition, "gamma must lie in R^+_n");
    const WeightExpr lower = lambda.minus_root(gamma).projected(n - 1);
    return (decomposition_coefficient(lambda, gamma, r, n) * a_squared(n, n, lambda, lower)).to_factored();
}

namespace {

TowerSpec lemma_tower(int n, int r) {
    TowerSpec t;
    t.r.assign(n, std::nullopt);
    t.r[n - 1] = r;
    return t;
}

}  // namespace

GradedSpec lemma_dj_region(int n, int r, const RootVec& gamma, long max_valuation) {
    const WeightExpr lambda = WeightExpr::lambda(n);
    const TowerSpec tower = lemma_tower(n, r);
    const FactoredExpr rhs = lemma_dj_rhs(lambda, gamma, r);
    // deterministic scan over weights with denominator 17
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    for (int attempt = 0; attempt < 4096; ++attempt) {
        GradedSpec spec{std::vector<int>(n), 17, max_valuation};
        for (int i = 0; i < n; ++i) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            spec.weight[i] = static_cast<int>((state >> 33) % 181) - 90;
        }
        if (!graded_tower_converges(tower, lambda, gamma, spec)) continue;
        try {
            expand_graded(rhs, n, GradedSpec{spec.weight, spec.denom, 0});
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::AmbiguousRegion) continue;
            throw;
        }
        return spec;
    }
    throw Error(ErrorKind::AmbiguousRegion, "no convergent graded region found");
}

IdentityResult lemma_dj_check(int n, int r, const RootVec& gamma, const GradedSpec& spec) {
    const WeightExpr lambda = WeightExpr::lambda(n);
    const TowerSpec tower = lemma_tower(n, r);
    if (!graded_tower_converges(tower, lambda, gamma, spec))
        throw Error(ErrorKind::Precondition, "tower sum does not converge in this graded region");
    StabilizationReport rep;
    const GradedSeries lhs = tower_sum_graded(tower, lambda, gamma, spec, &rep);
    const GradedSeries rhs = expand_graded(lemma_dj_rhs(lambda, gamma, r), n, spec);
    IdentityResult out;
    out.bounds["left_cutoff"] = rep.cutoff;
    out.bounds["stabilization_rounds"] = rep.rounds;
    out.bounds["max_valuation"] = spec.max_valuation;
    const auto diff = lhs.compare(rhs);
    out.pass = !diff;
    if (diff) out.witness = diff_text(*diff);
    return out;
}

IdentityResult quasi_classical_check(const std::vector<int>& r, const RootVec& beta, int max_degree, int vmin,
                                     int vmax) {
    const int n = static_cast<int>(r.size());
    if (n < 1 || static_cast<int>(beta.size()) != n || !in_qplus(beta))
        throw Error(ErrorKind::Precondition, "need beta in Q^+ of the tower rank");
    for (int i = 0; i < n; ++i)
        if ((i > 0 && r[i - 1] > r[i]) || r[i] > 0)
            throw Error(ErrorKind::Precondition, "boundaries must satisfy r_1 <= ... <= r_n <= 0");
    TruncSpec spec{max_degree, vmin, vmax, std::vector<int>(n)};
    for (int i = 0; i < n; ++i) spec.zmin[i] = r[i] * beta[i];

    TowerSpec tower;
    for (int x : r) tower.r.push_back(x);
    const WeightExpr lambda = WeightExpr::lambda(n);
    const TruncSeries lhs = tower_sum(tower, lambda, beta, spec);

    TermSum rhs(n);
    long decompositions = 0;
    std::vector<RootVec> gam(n + 1);
    std::function<void(int, const RootVec&)> split = [&](int i, const RootVec& rem) {
        if (i == 1) {
            if (!in_rplus_i(rem, 1)) return;
            gam[1] = rem;
            // lambda^(i) from the top down
            std::vector<WeightExpr> lam(n + 1);
            lam[n] = lambda;
            for (int j = n; j >= 2; --j) lam[j - 1] = lam[j].minus_root(head(gam[j], j)).projected(j - 1);
            const int g = gam[1][0];
            const int s = lam[1].shift(1);
            // J[r_1, inf) = q^{r_1 ((g,g)/2 - (lambda+rho, g))} J[0, inf) in rank 1
            FactoredExpr term = jd_explicit(1, {g}).substituted({s}, {z_unit(n, 1)}).terms().front();
            term = term * FactoredExpr(VScalar::v_power(2 * r[0] * (g * g + s * g)), r[0] * g * z_unit(n, 1));
            HalfExpr prod(term);
            for (int j = 2; j <= n; ++j)
                prod = prod * decomposition_coefficient(lam[j], head(gam[j], j), r[j - 1], n) *
                       a_squared(n, j, lam[j], lam[j - 1]);
            rhs.add(prod.to_factored());
            ++decompositions;
            return;
        }
        for (const auto& g : roots_below(rem)) {
            if (g[i - 1] != rem[i - 1] || !in_rplus_i(g, i)) continue;
            gam[i] = g;
            split(i - 1, rem - g);
        }
    };
    split(n, beta);

    const TruncSeries rs = expand(rhs, spec);
    IdentityResult out;
    out.bounds["decompositions"] = decompositions;
    out.bounds["max_degree"] = max_degree;
    const auto diff = lhs.compare(rs);
    out.pass = !diff;
    if (diff) out.witness = diff_text(*diff);
    return out;
}

}  // namespace qchar
