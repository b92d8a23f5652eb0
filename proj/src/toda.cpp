#include "qchar/toda.hpp"

#include <algorithm>

namespace qchar {

TermSum GenSeries::at(const RootVec& d) const {
    auto it = coeff.find(d);
    return it == coeff.end() ? TermSum(n) : it->second;
}

GenSeries& GenSeries::operator+=(const GenSeries& b) {
    if (b.n != n || b.cutoff != cutoff) throw Error(ErrorKind::SpecMismatch, "generating series of different shape");
    for (const auto& [d, t] : b.coeff) coeff[d] = at(d) + t;
    return *this;
}

GenSeries GenSeries::scaled(const FactoredExpr& c) const {
    GenSeries r(n, cutoff);
    for (const auto& [d, t] : coeff) r.coeff[d] = t * c;
    return r;
}

GenSeries generating_series(int n, int cutoff, const JSource& source) {
    GenSeries f(n, cutoff);
    for (int h = 0; h <= cutoff; ++h)
        for (const auto& d : roots_of_height(n, h)) f.coeff[d] = source(n, d);
    return f;
}

namespace {

// d_i with d_0 = d_{n+1} = 0
int comp(const RootVec& d, int i) { return i >= 1 && i <= static_cast<int>(d.size()) ? d[i - 1] : 0; }

FactoredExpr shifted_z(int n, int i, int qexp) {
    return FactoredExpr(VScalar::v_power(2 * qexp), z_range(n, i, n));
}

}  // namespace

FactoredExpr toda_eigenvalue_term(int n, int i) { return shifted_z(n, i, 0); }

GenSeries apply_hamiltonian(const GenSeries& f) {
    if (f.cutoff < 0) throw Error(ErrorKind::Precondition, "negative cutoff");
    const int n = f.n;
    GenSeries out(n, f.cutoff);
    for (int h = 0; h <= f.cutoff; ++h) {
        for (const auto& e : roots_of_height(n, h)) {
            TermSum acc(n);
            const TermSum fe = f.at(e);
            for (int i = 0; i <= n; ++i) {
                // D_i^{-1} D_{i+1} multiplies the y^e coefficient by q^{e_{i+1} - e_i}
                const FactoredExpr c = shifted_z(n, i, comp(e, i + 1) - comp(e, i));
                acc.add(fe * c);
                if (i >= 1 && e[i - 1] > 0) {
                    RootVec lower = e;
                    --lower[i - 1];
                    acc.add(-(f.at(lower) * c));
                }
            }
            if (!acc.empty()) out.coeff[e] = std::move(acc);
        }
    }
    return out;
}

bool EigenReport::pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const EigenRow& r) { return r.pass; });
}

EigenReport verify_eigen(int n, int cutoff, const JSource& source, std::uint64_t seed) {
    EigenReport rep{n, cutoff, seed, {}};
    const GenSeries f = generating_series(n, cutoff, source);
    const GenSeries hf = apply_hamiltonian(f);
    for (int h = 0; h <= cutoff; ++h) {
        for (const auto& d : roots_of_height(n, h)) {
            TermSum rhs(n);
            for (int i = 0; i <= n; ++i) rhs.add(f.at(d) * toda_eigenvalue_term(n, i));
            const auto eq = termsum_equal(hf.at(d), rhs, 12, seed);
            rep.rows.push_back(EigenRow{d, eq.equal, eq.witness});
        }
    }
    return rep;
}

namespace {

TermSum solve_memo(int n, const RootVec& d, std::map<RootVec, TermSum>& memo) {
    if (auto it = memo.find(d); it != memo.end()) return it->second;
    if (height(d) == 0) return memo[d] = TermSum::single(FactoredExpr::one(n));
    // sum_i z_{i,n} (q^{d_{i+1} - d_i} - 1) as a polynomial in (v, z)
    std::map<std::pair<ZMonomial, int>, long> lin;
    for (int i = 0; i <= n; ++i) {
        const ZMonomial z = z_range(n, i, n);
        lin[{z, 2 * (comp(d, i + 1) - comp(d, i))}] += 1;
        lin[{z, 0}] -= 1;
    }
    SparsePoly lead;
    for (const auto& [k, c] : lin)
        if (c != 0) lead.terms.push_back(PolyTerm{Integer(c), k.second, k.first});
    if (lead.terms.empty()) throw Error(ErrorKind::DivisionByZero, "vanishing leading coefficient in the Toda recursion");
    TermSum out(n);
    for (int i = 1; i <= n; ++i) {
        if (d[i - 1] == 0) continue;
        RootVec lower = d;
        --lower[i - 1];
        const FactoredExpr c = shifted_z(n, i, comp(d, i + 1) - comp(d, i)).divided_by(lead);
        out.add(solve_memo(n, lower, memo) * c);
    }
    return memo[d] = std::move(out);
}

}  // namespace

TermSum toda_solve(int n, const RootVec& d) {
    if (static_cast<int>(d.size()) != n || !in_qplus(d)) throw Error(ErrorKind::Precondition, "d must lie in Q^+");
    std::map<RootVec, TermSum> memo;
    return solve_memo(n, d, memo);
}

}  // namespace qchar
