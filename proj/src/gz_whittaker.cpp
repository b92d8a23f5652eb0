#include "qchar/gz_whittaker.hpp"

#include <algorithm>
#include <set>

namespace qchar {

// ------------------------------------------------------------------ patterns

int GelfandOffsets::row_sum(int i) const {
    int s = 0;
    for (int k = 0; k < i; ++k) s += m(k, i - 1);
    return s;
}

WeightExpr GelfandOffsets::level(int i) const { return WeightExpr(rows[i]); }

std::vector<int> GelfandOffsets::flat() const {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) out.insert(out.end(), rows[i].begin(), rows[i].end());
    return out;
}

bool GelfandOffsets::valid() const {
    if (static_cast<int>(rows.size()) != n + 1) return false;
    for (int i = 0; i <= n; ++i) {
        if (static_cast<int>(rows[i].size()) != i + 1) return false;
        for (int k = 0; k <= i; ++k) {
            if (m(k, i) < 0) return false;
            if (i == n && m(k, i) != 0) return false;
            if (i < n && m(k, i) < m(k, i + 1)) return false;
        }
    }
    return true;
}

std::vector<GelfandOffsets> enumerate_patterns(int n, const RootVec& d) {
    if (static_cast<int>(d.size()) != n) throw Error(ErrorKind::Precondition, "degree vector length must equal n");
    std::vector<GelfandOffsets> out;
    if (!in_qplus(d)) return out;
    GelfandOffsets p;
    p.n = n;
    p.rows.resize(n + 1);
    for (int i = 0; i <= n; ++i) p.rows[i].assign(i + 1, 0);

    // fill row i, entry k, with `left` still to distribute in that row
    auto fill = [&](auto&& self, int i, int k, int left) -> void {
        if (i < 0) {
            out.push_back(p);
            return;
        }
        const int lo = p.m(k, i + 1);
        if (k == i) {
            if (left < lo) return;
            p.rows[i][k] = left;
            if (i == 0) {
                self(self, -1, 0, 0);
            } else {
                self(self, i - 1, 0, d[i - 1]);
            }
            return;
        }
        for (int x = lo; x <= left; ++x) {
            p.rows[i][k] = x;
            self(self, i, k + 1, left - x);
        }
    };
    if (n == 0) {
        out.push_back(p);
        return out;
    }
    fill(fill, n - 1, 0, d[n - 1]);
    std::sort(out.begin(), out.end(),
              [](const GelfandOffsets& a, const GelfandOffsets& b) { return a.flat() < b.flat(); });
    return out;
}

int ht(const GelfandOffsets& p) {
    int h = 0;
    for (int i = 0; i < p.n; ++i)
        for (int k = 0; k <= i; ++k) h += p.m(k, i);
    return h;
}

long p_exponent(const GelfandOffsets& p, const std::vector<int>& lambda_in) {
    std::vector<long> lambda(p.n + 1, 0);
    for (std::size_t k = 0; k < lambda_in.size() && k < lambda.size(); ++k) lambda[k] = lambda_in[k];
    auto lam = [&](int k, int i) { return lambda[k] - p.m(k, i); };
    long total = 0;
    for (int i = 1; i <= p.n; ++i) {
        long s_lo = 0, s_hi = 0, pairs_lo = 0, pairs_hi = 0;
        for (int k = 0; k <= i - 1; ++k) s_lo += lam(k, i - 1);
        for (int k = 0; k <= i; ++k) s_hi += lam(k, i);
        for (int k = 0; k <= i - 1; ++k)
            for (int l = k + 1; l <= i - 1; ++l) pairs_lo += lam(k, i - 1) * lam(l, i - 1);
        for (int k = 0; k <= i; ++k)
            for (int l = k + 1; l <= i; ++l) pairs_hi += lam(k, i) * lam(l, i);
        long pi = (i - 1) * (s_lo * (s_lo - s_hi) - pairs_lo + pairs_hi);
        for (int k = 1; k <= i - 1; ++k) pi -= static_cast<long>(k) * (i - k) * (lam(k, i - 1) - lam(k, i));
        total += pi;
    }
    return total;
}

// ------------------------------------------------------------------ HalfExpr

HalfExpr HalfExpr::inverse() const {
    std::vector<int> h = half;
    for (auto& x : h) x = -x;
    return HalfExpr(expr.inverse(), std::move(h));
}

HalfExpr operator*(const HalfExpr& a, const HalfExpr& b) {
    std::vector<int> h = a.half;
    for (std::size_t i = 0; i < h.size(); ++i) h[i] += b.half[i];
    return HalfExpr(a.expr * b.expr, std::move(h));
}

FactoredExpr HalfExpr::to_factored() const {
    ZMonomial extra(rank());
    for (std::size_t i = 0; i < half.size(); ++i) {
        if (half[i] % 2 != 0) throw Error(ErrorKind::Precondition, "half-integer z-exponent did not cancel");
        extra[i] = half[i] / 2;
    }
    return expr.times_mono(extra);
}

HalfExpr v_pairing(const WeightExpr& mu, const RootVec& beta, std::size_t rank) {
    std::vector<int> half(rank, 0);
    int vpow = 0;
    for (std::size_t i = 1; i <= beta.size(); ++i) {
        if (beta[i - 1] == 0) continue;
        vpow -= beta[i - 1] * (1 + mu.shift(static_cast<int>(i)));
        half[i - 1] -= beta[i - 1];
    }
    return HalfExpr(FactoredExpr(VScalar::v_power(vpow), ZMonomial(rank)), std::move(half));
}

namespace {

PochFactor one_minus_q(std::size_t rank) { return PochFactor{1, ZMonomial(rank), 1}; }

}  // namespace

HalfExpr bracket_to_factored(std::size_t rank, int a, int b, int c) {
    const ZMonomial one(rank);
    if (a == b) {
        if (c == 0) return HalfExpr(FactoredExpr(VScalar(0), one));
        if (c < 0) {
            HalfExpr r = bracket_to_factored(rank, a, b, -c);
            r.expr = r.expr.scaled(VScalar(-1));
            return r;
        }
        // [c] = v^{1-c} (1 - q^c) / (1 - q)
        return HalfExpr(FactoredExpr(VScalar::v_power(1 - c), one, {PochFactor{c, one, 1}}, {one_minus_q(rank)}));
    }
    if (a > b) {
        HalfExpr r = bracket_to_factored(rank, b, a, -c);
        r.expr = r.expr.scaled(VScalar(-1));
        return r;
    }
    // x = lambda_a - lambda_b + c with q^{lambda_a - lambda_b} = q^{-(b-a)} z_{a,b}^{-1}:
    // [x] = -v^{x+1} (1 - q^{-x}) / (1 - q)
    const int len = b - a;
    const ZMonomial zab = z_range(rank, a, b);
    std::vector<int> half(rank, 0);
    for (int j = a + 1; j <= b; ++j) half[j - 1] = -1;
    return HalfExpr(FactoredExpr(VScalar::monomial(-1, c + 1 - len), one, {PochFactor{len - c, zab, 1}},
                                 {one_minus_q(rank)}),
                    std::move(half));
}

HalfExpr bracket_poch(std::size_t rank, int a, int b, int c, int len) {
    HalfExpr r(FactoredExpr::one(rank));
    for (int j = 0; j < len; ++j) r = r * bracket_to_factored(rank, a, b, c + j);
    return r;
}

HalfExpr a_squared(std::size_t rank, int i, const WeightExpr& mu, const WeightExpr& nu) {
    if (mu.rank() != i || nu.rank() != i - 1) throw Error(ErrorKind::Precondition, "A^2: weight ranks must be i and i-1");
    std::vector<int> e(i);
    for (int k = 0; k < i; ++k) {
        e[k] = nu.c[k] - mu.c[k];
        if (e[k] < 0) throw Error(ErrorKind::Precondition, "A^2: mu_k - nu_k must be a non-negative integer");
    }
    HalfExpr den(FactoredExpr::one(rank));
    for (int k = 0; k < i; ++k) {
        if (e[k] == 0) continue;
        den = den * bracket_poch(rank, k, k, 1, e[k]);
        for (int l = k + 1; l <= i - 1; ++l) den = den * bracket_poch(rank, k, l, nu.c[l] - nu.c[k] - k + l + 1, e[k]);
        for (int l = k + 1; l <= i; ++l) den = den * bracket_poch(rank, k, l, mu.c[l] - nu.c[k] - k + l, e[k]);
    }
    if (den.is_zero()) throw Error(ErrorKind::NonGeneric, "A^2 denominator vanishes");
    return den.inverse();
}

HalfExpr chevalley_c_squared(const GelfandOffsets& p, int k, int i) {
    if (i < 1 || i > p.n || k < 0 || k > i - 1) throw Error(ErrorKind::Precondition, "c^2: index out of range");
    const std::size_t rank = p.n;
    // lambda_{l,j} - lambda_{k,i-1} = lambda_l - lambda_k + m_{k,i-1} - m_{l,j}
    auto br = [&](int l, int j, int extra) { return bracket_to_factored(rank, l, k, p.m(k, i - 1) - p.m(l, j) + extra); };
    HalfExpr num(FactoredExpr(VScalar(-1), ZMonomial(rank)));
    for (int l = 0; l <= i - 2; ++l) num = num * br(l, i - 2, -l + k - 1);
    for (int l = 0; l <= i; ++l) num = num * br(l, i, -l + k);
    if (num.is_zero()) return num;
    HalfExpr den(FactoredExpr::one(rank));
    for (int l = 0; l <= i - 1; ++l) {
        if (l == k) continue;
        den = den * br(l, i - 1, -l + k - 1) * br(l, i - 1, -l + k);
    }
    if (den.is_zero()) throw Error(ErrorKind::NonGeneric, "c^2 denominator contains [0]");
    return num * den.inverse();
}

Rational eval_at_lambda(const HalfExpr& e, const std::vector<int>& lambda, const Rational& v0) {
    const std::size_t n = e.rank();
    if (lambda.size() != n + 1) throw Error(ErrorKind::Precondition, "need lambda_0..lambda_n");
    std::vector<Rational> z0(n);
    Rational sqrt_part = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        const long s = lambda[i - 1] - lambda[i] + 1;  // (lambda + rho, alpha_i)
        z0[i - 1] = rational_pow(v0, -2 * s);
        sqrt_part *= rational_pow(v0, -s * e.half[i - 1]);
    }
    return eval_exact(TermSum::single(e.expr), EvalPoint(v0, z0)) * sqrt_part;
}

// ------------------------------------------------------------- scalar product

FactoredExpr scalar_product_term(const GelfandOffsets& p) {
    const std::size_t rank = p.n;
    RootVec beta(p.n);
    for (int i = 1; i <= p.n; ++i) beta[i - 1] = p.row_sum(i);
    const ZMonomial one(rank);
    const int h = ht(p);
    // ((1 - q)(1 - q^{-1}))^{-h} = (-1)^h q^h (1 - q)^{-2h}
    std::vector<PochFactor> den(2 * h, one_minus_q(rank));
    HalfExpr t(FactoredExpr(VScalar::monomial(h % 2 ? -1 : 1, 2 * h - root_form(beta, beta) / 2), one, {},
                            std::move(den)));
    t = t * v_pairing(WeightExpr::lambda(p.n), beta, rank);
    for (int i = 1; i <= p.n; ++i) t = t * a_squared(rank, i, p.level(i), p.level(i - 1));
    return t.to_factored();
}

TermSum scalar_product_J(int n, const RootVec& d) {
    TermSum out(n);
    for (const auto& p : enumerate_patterns(n, d)) out.add(scalar_product_term(p));
    return out;
}

long jd_q_exponent(const GelfandOffsets& p) {
    const int n = p.n;
    long s = 0;
    for (int i = 0; i <= n - 1; ++i)
        for (int k = 0; k <= i; ++k)
            for (int l = k + 1; l <= i; ++l) s -= static_cast<long>(p.m(k, i)) * p.m(l, i);
    for (int i = 0; i <= n - 1; ++i)
        for (int k = 0; k < i; ++k)
            for (int l = k + 1; l < i; ++l) s += static_cast<long>(p.m(k, i)) * p.m(l, i - 1);
    long half_sum = 0;
    for (int i = 0; i <= n - 1; ++i)
        for (int k = 0; k < i; ++k) half_sum += static_cast<long>(p.m(k, i)) * (p.m(k, i) - 1);
    return s + half_sum / 2;
}

FactoredExpr jd_term(const GelfandOffsets& p) {
    const int n = p.n;
    const std::size_t rank = n;
    int sign_exp = 0;
    for (int i = 1; i <= n; ++i) sign_exp += p.row_sum(i);
    for (int i = 0; i <= n - 1; ++i) sign_exp -= p.m(i, i);

    ZMonomial mono(rank);
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k <= j - 1; ++k)
            for (int i = j + 1; i <= n; ++i) mono[j - 1] += p.m(k, i - 1);

    std::vector<PochFactor> den;
    const ZMonomial one(rank);
    for (int i = 1; i <= n; ++i) {
        for (int k = 0; k < i; ++k) {
            const int len = p.m(k, i - 1) - p.m(k, i);
            if (len == 0) continue;
            den.push_back(PochFactor{1, one, len});
            for (int l = k + 1; l < i; ++l) den.push_back(PochFactor{p.m(k, i) - p.m(l, i - 1), z_range(rank, k, l), len});
            for (int l = k + 1; l <= i; ++l) den.push_back(PochFactor{p.m(k, i) - p.m(l, i) + 1, z_range(rank, k, l), len});
        }
    }
    const long qexp = jd_q_exponent(p);
    return FactoredExpr(VScalar::monomial(sign_exp % 2 ? -1 : 1, static_cast<int>(2 * qexp)), std::move(mono), {},
                        std::move(den));
}

TermSum jd_explicit(int n, const RootVec& d) {
    TermSum out(n);
    for (const auto& p : enumerate_patterns(n, d)) out.add(jd_term(p));
    return out;
}

// ------------------------------------------------------- Whittaker identity

bool verify_whittaker_identity(const std::vector<int>& a, const std::vector<int>& b, const Rational& v0,
                               bool flip_exponent) {
    if (b.size() != a.size() + 1) throw Error(ErrorKind::Precondition, "need |b| = |a| + 1");
    if (std::set<int>(b.begin(), b.end()).size() != b.size())
        throw Error(ErrorKind::Precondition, "b values must be pairwise distinct");
    const Rational vinv = 1 / v0;
    const Rational base = v0 - vinv;
    if (base == 0) throw Error(ErrorKind::Pole, "v0 = +-1");
    auto br = [&](long x) -> Rational { return (rational_pow(v0, x) - rational_pow(v0, -x)) / base; };
    long sum_a = 0;
    for (int x : a) sum_a += x;
    Rational total = 0;
    for (std::size_t l = 0; l < b.size(); ++l) {
        Rational term = 1;
        long expo = flip_exponent ? sum_a : -sum_a;
        for (int x : a) term *= br(static_cast<long>(x) - b[l]);
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (k == l) continue;
            term /= br(static_cast<long>(b[k]) - b[l]);
            expo += b[k];
        }
        total += term * rational_pow(v0, expo);
    }
    return total == 1;
}

}  // namespace qchar
