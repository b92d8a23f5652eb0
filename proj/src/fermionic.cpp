#include "qchar/fermionic.hpp"

#include <algorithm>
#include <climits>
#include <functional>

#include "qchar/checked.hpp"

namespace qchar {

RootVec Config::total() const {
    RootVec d(n, 0);
    for (const auto& row : l)
        for (int i = 0; i < n; ++i) d[i] += row[i];
    return d;
}

namespace {

WeightExpr lambda_or_default(const WeightExpr& lambda, int n) {
    if (lambda.c.empty()) return WeightExpr::lambda(n);
    if (lambda.rank() < n) throw Error(ErrorKind::Precondition, "weight rank smaller than the number of colours");
    return lambda;
}

// Positions of the particles of each colour, sorted ascending.
using Positions = std::vector<std::vector<int>>;

long b_quadratic(const Positions& pos) {
    const int n = static_cast<int>(pos.size());
    long b = 0;
    for (int i = 0; i < n; ++i) {
        const auto& p = pos[i];
        for (std::size_t a = 0; a < p.size(); ++a) {
            // diagonal 1/2 * t * (alpha_i, alpha_i) plus same-colour pairs 2 * min
            b += p[a];
            b += 2L * p[a] * static_cast<long>(p.size() - a - 1);
        }
        if (i + 1 < n) {
            for (int x : p)
                for (int y : pos[i + 1]) b -= std::min(x, y);
        }
    }
    return b;
}

// multiplicities l_{t,i} >= 1, sorted; identifies the denominator prod (q)_l
std::vector<int> multiplicities(const Positions& pos) {
    std::vector<int> ls;
    for (const auto& p : pos) {
        for (std::size_t a = 0; a < p.size();) {
            std::size_t b = a;
            while (b < p.size() && p[b] == p[a]) ++b;
            ls.push_back(static_cast<int>(b - a));
            a = b;
        }
    }
    std::sort(ls.begin(), ls.end());
    return ls;
}

// 1 / prod (q)_l as a power series in q, coefficients of q^0..q^len
std::vector<std::int64_t> inverse_qpoch(const std::vector<int>& ls, long len) {
    std::vector<std::int64_t> row(len + 1, 0);
    row[0] = 1;
    for (int l : ls)
        for (int j = 1; j <= l; ++j)
            for (long k = j; k <= len; ++k) row[k] = checked_add(row[k], row[k - j]);
    return row;
}

// Non-decreasing sequences of k integers in [lo, hi] with the given sum.
void for_each_multiset(int k, long lo, long hi, long sum, std::vector<int>& cur,
                       const std::function<void()>& emit) {
    if (k == 0) {
        if (sum == 0) emit();
        return;
    }
    if (sum < lo * k || sum > hi * k) return;
    // the first (smallest) element x satisfies x * k <= sum
    const long top = std::min(hi, sum >= 0 ? sum / k : -((-sum + k - 1) / k));
    for (long x = lo; x <= top; ++x) {
        cur.push_back(static_cast<int>(x));
        for_each_multiset(k - 1, x, hi, sum - x, cur, emit);
        cur.pop_back();
    }
}

// Non-decreasing sequences of k integers in [lo, hi].
void for_each_multiset_free(int k, long lo, long hi, std::vector<int>& cur, const std::function<void()>& emit) {
    if (k == 0) {
        emit();
        return;
    }
    for (long x = lo; x <= hi; ++x) {
        cur.push_back(static_cast<int>(x));
        for_each_multiset_free(k - 1, x, hi, cur, emit);
        cur.pop_back();
    }
}

long offset_qexp(const WeightExpr& lambda, const ZMonomial& mu) {
    long s = 0;
    for (std::size_t i = 0; i < mu.rank(); ++i) s += static_cast<long>(mu[i]) * lambda.shift(static_cast<int>(i) + 1);
    return s;
}

// Accumulates sum over configurations of q^{qexp} / prod (q)_l for one monomial.
struct MonomialAccumulator {
    std::map<std::vector<int>, std::map<long, std::int64_t>> by_den;

    void add(const std::vector<int>& ls, long qexp) {
        auto& m = by_den[ls][qexp];
        m = checked_add(m, 1);
    }

    void flush(TruncSeries& out, const ZMonomial& z) const {
        const int vmin = out.spec().vmin, vmax = out.spec().vmax;
        std::vector<std::int64_t> row(vmax - vmin + 1, 0);
        bool any = false;
        for (const auto& [ls, qs] : by_den) {
            const long lowest = qs.begin()->first;
            if (2 * lowest > vmax) continue;
            const auto inv = inverse_qpoch(ls, (vmax - 2 * lowest) / 2);
            for (const auto& [qe, count] : qs) {
                for (std::size_t j = 0; j < inv.size(); ++j) {
                    const long v = 2 * (qe + static_cast<long>(j));
                    if (v > vmax) break;
                    if (v < vmin || inv[j] == 0) continue;
                    row[v - vmin] = checked_add(row[v - vmin], checked_mul(count, inv[j]));
                    any = true;
                }
            }
        }
        if (any) out.add_row(z, vmin, row);
    }
};

// Exact small-z window of the tower sum with finite lower bounds lo.
TruncSeries tower_window(int n, const std::vector<long>& lo, const WeightExpr& lambda, const RootVec& beta,
                         const TruncSpec& spec) {
    TruncSeries out(n, spec);
    ZMonomial mu(n);
    Positions pos(n);
    auto per_monomial = [&]() {
        MonomialAccumulator acc;
        const long extra = offset_qexp(lambda, mu);
        std::function<void(int)> colour = [&](int i) {
            if (i == n) {
                acc.add(multiplicities(pos), b_quadratic(pos) + extra);
                return;
            }
            pos[i].clear();
            std::vector<int> cur;
            for_each_multiset(beta[i], lo[i], LONG_MAX / 4, mu[i], cur, [&]() {
                pos[i] = cur;
                colour(i + 1);
            });
        };
        colour(0);
        acc.flush(out, mu);
    };
    std::function<void(int, int)> monomials = [&](int i, int left) {
        if (i == n) {
            per_monomial();
            return;
        }
        for (int x = 0; x <= left; ++x) {
            mu[i] = spec.zmin_at(i) + x;
            if (beta[i] == 0 && mu[i] != 0) continue;
            if (static_cast<long>(mu[i]) < lo[i] * beta[i]) continue;
            monomials(i + 1, left - x);
        }
    };
    monomials(0, spec.max_degree);
    out.prune();
    return out;
}

GradedSeries tower_graded_cut(int n, const std::vector<long>& lo, long hi, const WeightExpr& lambda,
                              const RootVec& beta, const GradedSpec& spec) {
    GradedSeries out(n, spec);
    Positions pos(n);
    std::map<std::vector<int>, std::vector<std::int64_t>> inv_cache;
    std::function<void(int)> colour = [&](int i) {
        if (i == n) {
            ZMonomial mu(n);
            for (int c = 0; c < n; ++c)
                for (int t : pos[c]) mu[c] += t;
            const long qexp = b_quadratic(pos) + offset_qexp(lambda, mu);
            const long val = spec.valuation(mu, static_cast<int>(2 * qexp));
            if (val > spec.max_valuation) return;
            const long len = (spec.max_valuation - val) / (2L * spec.denom);
            const auto ls = multiplicities(pos);
            auto it = inv_cache.find(ls);
            if (it == inv_cache.end() || static_cast<long>(it->second.size()) <= len)
                it = inv_cache.insert_or_assign(ls, inverse_qpoch(ls, std::max(len, 64L))).first;
            for (long j = 0; j <= len; ++j) out.add_term(mu, static_cast<int>(2 * (qexp + j)), it->second[j]);
            return;
        }
        std::vector<int> cur;
        for_each_multiset_free(beta[i], lo[i], hi, cur, [&]() {
            pos[i] = cur;
            colour(i + 1);
        });
    };
    colour(0);
    return out;
}

}  // namespace

BForm b_form(const Config& c, const WeightExpr& lambda_in) {
    const WeightExpr lambda = lambda_or_default(lambda_in, c.n);
    Positions pos(c.n);
    ZMonomial z(c.n);
    for (int t = c.r; t <= c.s(); ++t)
        for (int i = 1; i <= c.n; ++i) {
            for (int k = 0; k < c.at(t, i); ++k) pos[i - 1].push_back(t);
            z[i - 1] += t * c.at(t, i);
        }
    return BForm{b_quadratic(pos) + offset_qexp(lambda, z), z};
}

FactoredExpr config_term(const Config& c, const WeightExpr& lambda) {
    const BForm b = b_form(c, lambda);
    std::vector<PochFactor> den;
    for (const auto& row : c.l)
        for (int x : row)
            if (x > 0) den.push_back(PochFactor{1, ZMonomial(c.n), x});
    return FactoredExpr(VScalar::v_power(static_cast<int>(2 * b.qexp)), b.z, {}, std::move(den));
}

TermSum fermionic_sum(int n, const RootVec& d, int r, int s, const WeightExpr& lambda_in) {
    if (r > s) throw Error(ErrorKind::Precondition, "empty interval");
    if (!in_qplus(d) || static_cast<int>(d.size()) != n) throw Error(ErrorKind::Precondition, "d must lie in Q^+");
    const WeightExpr lambda = lambda_or_default(lambda_in, n);
    TermSum out(n);
    Config c(n, r, s);
    const int width = s - r + 1;
    // distribute d_i particles of colour i over the positions
    std::function<void(int, int, int)> fill = [&](int i, int slot, int left) {
        if (i > n) {
            out.add(config_term(c, lambda));
            return;
        }
        if (slot == width - 1) {
            c.l[slot][i - 1] = left;
            fill(i + 1, 0, i < n ? d[i] : 0);
            c.l[slot][i - 1] = 0;
            return;
        }
        for (int x = 0; x <= left; ++x) {
            c.l[slot][i - 1] = x;
            fill(i, slot + 1, left - x);
        }
        c.l[slot][i - 1] = 0;
    };
    if (n == 0) return TermSum::single(FactoredExpr::one(0));
    fill(1, 0, d[0]);
    return out;
}

bool TowerSpec::valid() const {
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (!r[i]) {
            if (r[i - 1]) return false;
            continue;
        }
        if (r[i - 1] && *r[i - 1] > *r[i]) return false;
    }
    return true;
}

TruncSeries fermionic_sum_series(int n, const RootVec& d, int r, const TruncSpec& spec, const WeightExpr& lambda) {
    return tower_sum(TowerSpec::uniform(n, r), lambda, d, spec);
}

TruncSeries tower_sum(const TowerSpec& tower, const WeightExpr& lambda_in, const RootVec& beta,
                      const TruncSpec& spec, StabilizationReport* report, int max_cutoff) {
    const int n = static_cast<int>(beta.size());
    if (static_cast<int>(tower.r.size()) != n || !tower.valid())
        throw Error(ErrorKind::Precondition, "tower boundaries must be non-decreasing, one per colour");
    if (!in_qplus(beta)) throw Error(ErrorKind::Precondition, "beta must lie in Q^+");
    const WeightExpr lambda = lambda_or_default(lambda_in, n);
    const bool left_infinite = std::any_of(tower.r.begin(), tower.r.end(), [](const auto& x) { return !x; });
    auto bounds = [&](int cutoff) {
        std::vector<long> lo(n);
        for (int i = 0; i < n; ++i) lo[i] = tower.r[i] ? *tower.r[i] : -cutoff;
        return lo;
    };
    if (!left_infinite) {
        if (report) *report = StabilizationReport{};
        return tower_window(n, bounds(0), lambda, beta, spec);
    }
    int cutoff = 4;
    TruncSeries prev = tower_window(n, bounds(cutoff), lambda, beta, spec);
    for (int round = 1; cutoff * 2 <= max_cutoff; ++round) {
        cutoff *= 2;
        TruncSeries cur = tower_window(n, bounds(cutoff), lambda, beta, spec);
        if (cur == prev) {
            if (report) *report = StabilizationReport{cutoff / 2, round};
            return cur;
        }
        prev = std::move(cur);
    }
    throw Error(ErrorKind::NotStabilized,
                "window coefficients still changing at left cutoff -" + std::to_string(cutoff));
}

GradedSeries tower_sum_graded(const TowerSpec& tower, const WeightExpr& lambda_in, const RootVec& beta,
                              const GradedSpec& spec, StabilizationReport* report, int max_cutoff) {
    const int n = static_cast<int>(beta.size());
    if (static_cast<int>(tower.r.size()) != n || !tower.valid())
        throw Error(ErrorKind::Precondition, "tower boundaries must be non-decreasing, one per colour");
    const WeightExpr lambda = lambda_or_default(lambda_in, n);
    auto run = [&](int cutoff) {
        std::vector<long> lo(n);
        for (int i = 0; i < n; ++i) lo[i] = tower.r[i] ? *tower.r[i] : -cutoff;
        return tower_graded_cut(n, lo, cutoff, lambda, beta, spec);
    };
    int cutoff = 4;
    GradedSeries prev = run(cutoff);
    for (int round = 1; cutoff * 2 <= max_cutoff; ++round) {
        cutoff *= 2;
        GradedSeries cur = run(cutoff);
        if (cur == prev) {
            if (report) *report = StabilizationReport{cutoff / 2, round};
            return cur;
        }
        prev = std::move(cur);
    }
    throw Error(ErrorKind::NotStabilized, "graded window still changing at cutoff " + std::to_string(cutoff));
}

bool graded_tower_converges(const TowerSpec& tower, const WeightExpr& lambda_in, const RootVec& beta,
                            const GradedSpec& spec) {
    const int n = static_cast<int>(beta.size());
    const WeightExpr lambda = lambda_or_default(lambda_in, n);
    // (lambda + rho, gamma) in units of 1/denom
    auto pairing = [&](const RootVec& g) {
        long s = 0;
        for (int i = 1; i <= n; ++i) s += static_cast<long>(g[i - 1]) * (spec.weight[i - 1] - spec.denom * lambda.shift(i));
        return s;
    };
    for (const auto& g : roots_below(beta)) {
        if (height(g) == 0) continue;
        const long self = static_cast<long>(root_form(g, g)) * spec.denom;  // (g,g) scaled
        if (!(self - 2 * pairing(g) > 0)) return false;
        bool left = true;
        for (int i = 0; i < n; ++i)
            if (g[i] > 0 && tower.r[i]) left = false;
        if (left && !(2 * pairing(g) - 2L * root_form(g, beta) * spec.denom + self > 0)) return false;
    }
    return true;
}

EqualityResult shift_check(int n, const RootVec& beta, int r, int s, const WeightExpr& lambda_in, std::uint64_t seed) {
    const WeightExpr lambda = lambda_or_default(lambda_in, n);
    const TermSum lhs = fermionic_sum(n, beta, r + 1, s + 1, lambda);
    const auto [qexp, z] = casimir_pairing(lambda, beta, n);
    const FactoredExpr pref(VScalar::v_power(root_form(beta, beta) + 2 * qexp), z);
    const TermSum rhs = fermionic_sum(n, beta, r, s, lambda) * pref;
    return termsum_equal(lhs, rhs, 12, seed);
}

}  // namespace qchar
