#include <algorithm>
#include <cstdint>
#include <numeric>

#include <json.hpp>

#include "qchar/checked.hpp"
#include "qchar/multivar.hpp"

namespace qchar {

using json = nlohmann::ordered_json;

// ------------------------------------------------------------------ TruncSeries

bool TruncSpec::contains(const ZMonomial& m) const {
    int excess = 0;
    for (std::size_t i = 0; i < m.rank(); ++i) {
        const int d = m[i] - zmin_at(i);
        if (d < 0) return false;
        excess += d;
    }
    return excess <= max_degree;
}

std::int64_t TruncSeries::coeff(const ZMonomial& z, int vpow) const {
    auto it = coeffs_.find(z);
    if (it == coeffs_.end() || vpow < spec_.vmin || vpow > spec_.vmax) return 0;
    return it->second[vpow - spec_.vmin];
}

void TruncSeries::add_term(const ZMonomial& z, int vpow, std::int64_t c) {
    if (c == 0 || vpow < spec_.vmin || vpow > spec_.vmax || !spec_.contains(z)) return;
    auto& row = coeffs_[z];
    if (row.empty()) row.assign(spec_.vmax - spec_.vmin + 1, 0);
    row[vpow - spec_.vmin] = checked_add(row[vpow - spec_.vmin], c);
}

void TruncSeries::add_row(const ZMonomial& z, int vlow, const std::vector<std::int64_t>& row) {
    if (!spec_.contains(z)) return;
    const int from = std::max(spec_.vmin, vlow);
    const int to = std::min(spec_.vmax, vlow + static_cast<int>(row.size()) - 1);
    if (from > to) return;
    auto& dst = coeffs_[z];
    if (dst.empty()) dst.assign(spec_.vmax - spec_.vmin + 1, 0);
    for (int v = from; v <= to; ++v) dst[v - spec_.vmin] = checked_add(dst[v - spec_.vmin], row[v - vlow]);
}

void TruncSeries::prune() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::all_of(it->second.begin(), it->second.end(), [](std::int64_t c) { return c == 0; }))
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

void TruncSeries::require_same(const TruncSeries& b) const {
    if (!(spec_ == b.spec_) || rank_ != b.rank_)
        throw Error(ErrorKind::SpecMismatch, "series arithmetic needs identical rank and TruncSpec");
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& b) {
    require_same(b);
    for (const auto& [z, row] : b.coeffs_) add_row(z, spec_.vmin, row);
    prune();
    return *this;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    a.require_same(b);
    TruncSeries r = a;
    for (const auto& [z, row] : b.coeffs_) {
        std::vector<std::int64_t> neg(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) neg[i] = checked_mul(row[i], -1);
        r.add_row(z, a.spec_.vmin, neg);
    }
    r.prune();
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.require_same(b);
    TruncSeries r(a.rank_, a.spec_);
    const int vmin = a.spec_.vmin;
    for (const auto& [za, ra] : a.coeffs_) {
        for (const auto& [zb, rb] : b.coeffs_) {
            const ZMonomial z = za + zb;
            if (!r.spec_.contains(z)) continue;
            for (std::size_t i = 0; i < ra.size(); ++i) {
                if (ra[i] == 0) continue;
                for (std::size_t j = 0; j < rb.size(); ++j) {
                    if (rb[j] == 0) continue;
                    r.add_term(z, 2 * vmin + static_cast<int>(i + j), checked_mul(ra[i], rb[j]));
                }
            }
        }
    }
    r.prune();
    return r;
}

std::optional<SeriesDiff> TruncSeries::compare(const TruncSeries& b) const {
    require_same(b);
    auto ia = coeffs_.begin();
    auto ib = b.coeffs_.begin();
    const std::vector<std::int64_t> zero(spec_.vmax - spec_.vmin + 1, 0);
    while (ia != coeffs_.end() || ib != b.coeffs_.end()) {
        const ZMonomial* z;
        const std::vector<std::int64_t>* ra = &zero;
        const std::vector<std::int64_t>* rb = &zero;
        if (ib == b.coeffs_.end() || (ia != coeffs_.end() && ia->first < ib->first)) {
            z = &ia->first;
            ra = &ia->second;
            ++ia;
        } else if (ia == coeffs_.end() || ib->first < ia->first) {
            z = &ib->first;
            rb = &ib->second;
            ++ib;
        } else {
            z = &ia->first;
            ra = &ia->second;
            rb = &ib->second;
            ++ia;
            ++ib;
        }
        for (std::size_t i = 0; i < zero.size(); ++i)
            if ((*ra)[i] != (*rb)[i]) return SeriesDiff{*z, spec_.vmin + static_cast<int>(i), (*ra)[i], (*rb)[i]};
    }
    return std::nullopt;
}

std::string TruncSeries::to_json() const {
    json j;
    j["rank"] = rank_;
    j["max_z_degree"] = spec_.max_degree;
    j["v_window"] = json::array({spec_.vmin, spec_.vmax});
    if (!spec_.zmin.empty() && std::any_of(spec_.zmin.begin(), spec_.zmin.end(), [](int x) { return x != 0; }))
        j["z_min"] = spec_.zmin;
    json terms = json::array();
    for (const auto& [z, row] : coeffs_) {
        json vc = json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i] != 0) vc[std::to_string(spec_.vmin + static_cast<int>(i))] = std::to_string(row[i]);
        if (vc.empty()) continue;
        terms.push_back(json{{"z", z.e}, {"v_coeffs", vc}});
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

TruncSeries TruncSeries::from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        TruncSpec spec;
        spec.max_degree = j.at("max_z_degree").get<int>();
        spec.vmin = j.at("v_window").at(0).get<int>();
        spec.vmax = j.at("v_window").at(1).get<int>();
        if (j.contains("z_min")) spec.zmin = j.at("z_min").get<std::vector<int>>();
        TruncSeries s(j.at("rank").get<std::size_t>(), spec);
        for (const auto& t : j.at("terms")) {
            ZMonomial z(t.at("z").get<std::vector<int>>());
            for (const auto& [k, v] : t.at("v_coeffs").items())
                s.add_term(z, std::stoi(k), std::stoll(v.get<std::string>()));
        }
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

// ------------------------------------------------------------------ expansion

namespace {

// (1 - q^a z^mu)^power with mu >= 0 componentwise; infinite products are
// unrolled lazily.
struct Oriented {
    int a;
    ZMonomial mu;
    int power;  // +1 numerator, -1 denominator
    bool infinite;
};

struct Prepared {
    int sign = 1;
    int vshift = 0;  // in v units
    ZMonomial mono;
    std::vector<Oriented> factors;
};

Prepared prepare(const FactoredExpr& e, std::size_t rank) {
    if (!e.den_polys().empty())
        throw Error(ErrorKind::Precondition, "expansion of an unfactored denominator polynomial is not supported");
    Prepared p;
    p.mono = e.mono();
    if (p.mono.rank() != rank) throw Error(ErrorKind::Precondition, "expansion rank mismatch");
    auto add = [&](const PochFactor& f, int power) {
        const bool mixed = !f.z.all_nonneg() && !f.z.all_nonpos();
        if (mixed) throw Error(ErrorKind::AmbiguousRegion, "mixed-sign monomial in a Pochhammer factor");
        if (f.infinite()) {
            if (f.z.is_one() && f.q_shift < 1)
                throw Error(ErrorKind::NonExpandable, "(q^a; q)_inf with a <= 0");
            if (!f.z.is_one() && !f.z.all_nonneg())
                throw Error(ErrorKind::AmbiguousRegion, "infinite product in inverse z-monomial");
            p.factors.push_back(Oriented{f.q_shift, f.z, power, true});
            return;
        }
        for (int j = 0; j < *f.length; ++j) {
            const int a = f.q_shift + j;
            if (f.z.is_one()) {
                if (a >= 1) {
                    p.factors.push_back(Oriented{a, f.z, power, false});
                } else if (power > 0) {
                    // 1 - q^a = -q^a (1 - q^{-a})
                    p.sign = -p.sign;
                    p.vshift += 2 * a;
                    p.factors.push_back(Oriented{-a, f.z, power, false});
                } else {
                    throw Error(ErrorKind::NonExpandable, "denominator factor (1 - q^a) with a <= 0");
                }
            } else if (f.z.all_nonneg()) {
                p.factors.push_back(Oriented{a, f.z, power, false});
            } else {
                // 1 - q^a z^mu = -q^a z^mu (1 - q^{-a} z^{-mu})
                if (power % 2 != 0) p.sign = -p.sign;
                p.vshift += 2 * a * power;
                p.mono = p.mono + power * f.z;
                p.factors.push_back(Oriented{-a, -f.z, power, false});
            }
        }
    };
    for (const auto& f : e.num()) add(f, 1);
    for (const auto& f : e.den()) add(f, -1);
    return p;
}

// Dense (Dres+1)^rank x V array of int64 series coefficients.
class Cube {
public:
    Cube(std::size_t rank, int dres, int vlo, int vhi)
        : rank_(rank), side_(dres + 1), dres_(dres), vlo_(vlo), width_(vhi - vlo + 1) {
        cells_ = 1;
        for (std::size_t i = 0; i < rank; ++i) cells_ *= side_;
        data_.assign(static_cast<std::size_t>(cells_) * width_, 0);
        degree_.resize(cells_);
        for (long c = 0; c < cells_; ++c) {
            long x = c;
            int deg = 0;
            for (std::size_t i = 0; i < rank; ++i) {
                deg += static_cast<int>(x % side_);
                x /= side_;
            }
            degree_[c] = deg;
        }
    }

    long offset_of(const ZMonomial& mu) const {
        long off = 0, mult = 1;
        for (std::size_t i = 0; i < rank_; ++i) {
            off += mu[i] * mult;
            mult *= side_;
        }
        return off;
    }

    bool fits(long cell, const ZMonomial& mu) const {
        long x = cell;
        for (std::size_t i = 0; i < rank_; ++i) {
            if (x % side_ < mu[i]) return false;
            x /= side_;
        }
        return true;
    }

    std::int64_t* row(long cell) { return &data_[static_cast<std::size_t>(cell) * width_]; }
    int vlo() const { return vlo_; }
    int width() const { return width_; }
    long cells() const { return cells_; }
    int degree(long cell) const { return degree_[cell]; }
    int dres() const { return dres_; }

    ZMonomial monomial(long cell) const {
        ZMonomial m(rank_);
        for (std::size_t i = 0; i < rank_; ++i) {
            m[i] = static_cast<int>(cell % side_);
            cell /= side_;
        }
        return m;
    }

    // multiply by (1 - q^a z^mu)^power, power = +-1
    void apply(int a, const ZMonomial& mu, int power) {
        const int dv = 2 * a;
        if (mu.is_one()) {
            for (long c = 0; c < cells_; ++c) {
                if (degree_[c] > dres_) continue;
                std::int64_t* r = row(c);
                if (power < 0) {
                    for (int v = std::max(0, dv); v < width_; ++v)
                        if (v - dv < width_) r[v] = checked_add(r[v], r[v - dv]);
                } else {
                    for (int v = width_ - 1; v >= std::max(0, dv); --v)
                        if (v - dv < width_) r[v] = checked_sub(r[v], r[v - dv]);
                }
            }
            return;
        }
        const long off = offset_of(mu);
        const int mdeg = mu.total_degree();
        auto step = [&](long c) {
            if (degree_[c] > dres_ || degree_[c] < mdeg || !fits(c, mu)) return;
            std::int64_t* dst = row(c);
            const std::int64_t* src = row(c - off);
            const int from = std::max(0, dv);
            const int to = std::min(width_ - 1, width_ - 1 + dv);
            for (int v = from; v <= to; ++v) {
                const std::int64_t s = src[v - dv];
                if (s == 0) continue;
                dst[v] = power < 0 ? checked_add(dst[v], s) : checked_sub(dst[v], s);
            }
        };
        if (power < 0)
            for (long c = 0; c < cells_; ++c) step(c);
        else
            for (long c = cells_ - 1; c >= 0; --c) step(c);
    }

private:
    std::size_t rank_;
    int side_, dres_, vlo_, width_;
    long cells_;
    std::vector<std::int64_t> data_;
    std::vector<int> degree_;
};

std::int64_t to_i64(const Integer& x) {
    if (!x.fits_slong_p()) throw Error(ErrorKind::Overflow, "coefficient does not fit in 64 bits");
    return x.get_si();
}

}  // namespace

int expansion_min_degree(const FactoredExpr& e) { return prepare(e, e.rank()).mono.total_degree(); }

TruncSeries expand(const FactoredExpr& e, std::size_t rank, const TruncSpec& spec) {
    TruncSeries out(rank, spec);
    if (e.is_zero()) return out;
    const Prepared p = prepare(e, rank);

    int excess = 0;
    for (std::size_t i = 0; i < rank; ++i) excess += p.mono[i] - spec.zmin_at(i);
    const int dres = spec.max_degree - excess;
    if (dres < 0) return out;

    const LaurentPoly& num = e.coeff().num();
    const LaurentPoly& den = e.coeff().den();
    const Integer& d0 = den.coeffs().front();
    if (d0 != 1 && d0 != -1)
        throw Error(ErrorKind::Precondition, "coefficient denominator must have constant term +-1 for expansion");

    // Largest possible v-descent of later factors per unit of z-degree.
    long slack = 0;
    for (const auto& f : p.factors) {
        if (f.mu.is_one() || f.a >= 0) continue;
        if (f.mu.total_degree() > dres) continue;
        const long rate = (2L * -f.a * dres + f.mu.total_degree() - 1) / f.mu.total_degree();
        slack = std::max(slack, rate);
    }
    const long vtop = static_cast<long>(spec.vmax) - p.vshift - num.low() + slack;
    if (vtop < -slack) return out;
    Cube cube(rank, dres, static_cast<int>(-slack), static_cast<int>(vtop));
    cube.row(0)[-cube.vlo()] = 1;

    const int width = cube.width();
    for (const auto& f : p.factors) {
        if (!f.infinite) {
            cube.apply(f.a, f.mu, f.power);
            continue;
        }
        const int mdeg = f.mu.total_degree();
        if (mdeg > dres) continue;
        for (int j = 0;; ++j) {
            const int a = f.a + j;
            if (2 * a >= width) break;
            if (f.mu.is_one() && a <= 0) continue;
            cube.apply(a, f.mu, f.power);
        }
    }

    std::vector<std::int64_t> dcoef;
    for (const auto& c : den.coeffs()) dcoef.push_back(to_i64(c));
    std::vector<std::int64_t> ncoef;
    for (const auto& c : num.coeffs()) ncoef.push_back(to_i64(c));

    for (long c = 0; c < cube.cells(); ++c) {
        if (cube.degree(c) > dres) continue;
        std::int64_t* r = cube.row(c);
        if (std::all_of(r, r + width, [](std::int64_t x) { return x == 0; })) continue;
        std::vector<std::int64_t> row(r, r + width);
        if (dcoef.size() > 1 || dcoef[0] != 1) {
            for (int v = 0; v < width; ++v) {
                std::int64_t acc = row[v];
                for (std::size_t k = 1; k < dcoef.size() && static_cast<int>(k) <= v; ++k)
                    acc = checked_sub(acc, checked_mul(dcoef[k], row[v - k]));
                row[v] = dcoef[0] == 1 ? acc : checked_mul(acc, -1);
            }
        }
        std::vector<std::int64_t> full(width + ncoef.size() - 1, 0);
        for (int v = 0; v < width; ++v) {
            if (row[v] == 0) continue;
            for (std::size_t k = 0; k < ncoef.size(); ++k)
                full[v + k] = checked_add(full[v + k], checked_mul(row[v], ncoef[k]));
        }
        if (p.sign < 0)
            for (auto& x : full) x = -x;
        out.add_row(p.mono + cube.monomial(c), cube.vlo() + p.vshift + num.low(), full);
    }
    out.prune();
    return out;
}

TruncSeries expand(const TermSum& s, const TruncSpec& spec) {
    TruncSeries out(s.rank(), spec);
    for (const auto& t : s.terms()) out += expand(t, s.rank(), spec);
    return out;
}

// ----------------------------------------------------------------------- JSON

namespace {

json factors_json(const std::vector<PochFactor>& fs) {
    json arr = json::array();
    for (const auto& f : fs) {
        json len = f.infinite() ? json("inf") : json(*f.length);
        arr.push_back(json::array({f.q_shift, f.z.e, len}));
    }
    return arr;
}

std::vector<PochFactor> factors_from(const json& arr) {
    std::vector<PochFactor> out;
    for (const auto& f : arr) {
        PochFactor p;
        p.q_shift = f.at(0).get<int>();
        p.z = ZMonomial(f.at(1).get<std::vector<int>>());
        if (!(f.at(2).is_string() && f.at(2).get<std::string>() == "inf")) p.length = f.at(2).get<int>();
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

std::string termsum_to_json(const TermSum& s) {
    json terms = json::array();
    for (const auto& t : s.terms()) {
        json j;
        j["coeff"] = t.coeff().to_string();
        j["z"] = t.mono().e;
        j["num"] = factors_json(t.num());
        j["den"] = factors_json(t.den());
        if (!t.den_polys().empty()) {
            json polys = json::array();
            for (const auto& p : t.den_polys()) {
                json terms_json = json::array();
                for (const auto& pt : p.terms)
                    terms_json.push_back(json{{"c", pt.coeff.get_str()}, {"v", pt.vpow}, {"z", pt.z.e}});
                polys.push_back(std::move(terms_json));
            }
            j["den_poly"] = std::move(polys);
        }
        terms.push_back(std::move(j));
    }
    json out;
    out["rank"] = s.rank();
    out["terms"] = std::move(terms);
    return out.dump();
}

TermSum termsum_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        TermSum s(j.at("rank").get<std::size_t>());
        for (const auto& t : j.at("terms")) {
            std::vector<SparsePoly> polys;
            if (t.contains("den_poly")) {
                for (const auto& p : t.at("den_poly")) {
                    SparsePoly sp;
                    for (const auto& pt : p)
                        sp.terms.push_back(PolyTerm{Integer(pt.at("c").get<std::string>()), pt.at("v").get<int>(),
                                                    ZMonomial(pt.at("z").get<std::vector<int>>())});
                    polys.push_back(std::move(sp));
                }
            }
            s.add(FactoredExpr(VScalar::parse(t.at("coeff").get<std::string>()),
                               ZMonomial(t.at("z").get<std::vector<int>>()), factors_from(t.at("num")),
                               factors_from(t.at("den")), std::move(polys)));
        }
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

}  // namespace qchar
