#include "qchar/weights.hpp"

#include <algorithm>
#include <numeric>

namespace qchar {

RootVec simple_root(std::size_t n, int i) {
    RootVec d(n, 0);
    d[i - 1] = 1;
    return d;
}

RootVec operator+(const RootVec& a, const RootVec& b) {
    RootVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

RootVec operator-(const RootVec& a, const RootVec& b) {
    RootVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

int root_form(const RootVec& a, const RootVec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::Precondition, "root vectors of different rank");
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += 2 * a[i] * b[i];
        if (i + 1 < a.size()) s -= a[i] * b[i + 1] + a[i + 1] * b[i];
    }
    return s;
}

int height(const RootVec& d) { return std::accumulate(d.begin(), d.end(), 0); }

bool in_qplus(const RootVec& d) {
    return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

bool in_qplus_i(const RootVec& d, int i) {
    if (!in_qplus(d)) return false;
    for (std::size_t j = i; j < d.size(); ++j)
        if (d[j] != 0) return false;
    return true;
}

bool in_rplus_i(const RootVec& d, int i) {
    if (!in_qplus_i(d, i)) return false;
    for (int j = 1; j < i; ++j)
        if (d[j - 1] > d[j]) return false;
    return true;
}

std::vector<RootVec> roots_below(const RootVec& beta) {
    std::vector<RootVec> out;
    RootVec cur(beta.size(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = beta.size();
        while (i > 0) {
            --i;
            if (cur[i] < beta[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (beta.empty()) return out;
    }
}

std::vector<RootVec> roots_of_height(std::size_t n, int h) {
    std::vector<RootVec> out;
    RootVec cur(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == n) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            cur[i] = x;
            self(self, i + 1, left - x);
        }
    };
    if (n == 0) {
        if (h == 0) out.push_back(cur);
        return out;
    }
    rec(rec, 0, h);
    return out;
}

WeightExpr WeightExpr::minus_root(const RootVec& beta) const {
    if (static_cast<int>(beta.size()) > rank()) throw Error(ErrorKind::Precondition, "root exceeds weight rank");
    WeightExpr r = *this;
    // alpha_i = eps_{i-1} - eps_i, so subtracting d_i alpha_i raises c_{i-1}
    for (std::size_t i = 1; i <= beta.size(); ++i) {
        r.c[i - 1] += beta[i - 1];
        r.c[i] -= beta[i - 1];
    }
    return r;
}

WeightExpr WeightExpr::projected(int i) const {
    if (i > rank()) throw Error(ErrorKind::Precondition, "projection to a larger weight lattice");
    return WeightExpr(std::vector<int>(c.begin(), c.begin() + i + 1));
}

std::pair<int, ZMonomial> casimir_pairing(const WeightExpr& mu, const RootVec& beta, std::size_t rank) {
    ZMonomial z(rank);
    int qexp = 0;
    for (std::size_t i = 1; i <= beta.size(); ++i) {
        if (beta[i - 1] == 0) continue;
        if (static_cast<int>(i) > mu.rank()) throw Error(ErrorKind::Precondition, "root exceeds weight rank");
        z[i - 1] += beta[i - 1];
        qexp += beta[i - 1] * mu.shift(static_cast<int>(i));
    }
    return {qexp, z};
}

}  // namespace qchar
