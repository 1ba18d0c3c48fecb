#include "vaforge/rationalfn.hpp"

#include <algorithm>

namespace vaforge {

namespace {

VarList sorted_union(const VarList& a, const VarList& b) {
    VarList out = a;
    for (auto v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

std::map<ExpVec, Cyc> align_terms(const VarList& from, const std::map<ExpVec, Cyc>& terms,
                                  const VarList& to) {
    std::vector<int> pos(from.size(), -1);
    for (size_t i = 0; i < from.size(); ++i) {
        for (size_t j = 0; j < to.size(); ++j)
            if (to[j] == from[i]) pos[i] = static_cast<int>(j);
        if (pos[i] < 0) throw std::logic_error("align_terms: missing variable");
    }
    std::map<ExpVec, Cyc> out;
    for (const auto& [e, c] : terms) {
        ExpVec ne(to.size(), 0);
        for (size_t i = 0; i < from.size(); ++i) ne[pos[i]] = e[i];
        out.emplace(std::move(ne), c);
    }
    return out;
}

std::map<ExpVec, Cyc> mul_terms(const std::map<ExpVec, Cyc>& a, const std::map<ExpVec, Cyc>& b,
                                const std::vector<int>* hi) {
    std::map<ExpVec, Cyc> out;
    for (const auto& [e1, c1] : a) {
        for (const auto& [e2, c2] : b) {
            ExpVec e(e1.size());
            bool keep = true;
            for (size_t i = 0; i < e.size(); ++i) {
                e[i] = e1[i] + e2[i];
                if (hi && e[i] > (*hi)[i]) {
                    keep = false;
                    break;
                }
            }
            if (!keep) continue;
            Cyc prod = c1 * c2;
            auto [it, inserted] = out.emplace(std::move(e), prod);
            if (!inserted) it->second += prod;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

// Inverse of a unit polynomial modulo x^{T+1}.
std::vector<Cyc> unit_inverse(const std::map<int, Cyc>& q, int T) {
    Cyc q0inv = q.at(0).inverse();
    std::vector<Cyc> r(T + 1, Cyc(0));
    r[0] = q0inv;
    for (int n = 1; n <= T; ++n) {
        Cyc acc(0);
        for (const auto& [j, qj] : q) {
            if (j <= 0 || j > n) continue;
            acc += qj * r[n - j];
        }
        r[n] = -(acc * q0inv);
    }
    return r;
}

}  // namespace

FactoredRational FactoredRational::from_terms(const VarList& vars, std::map<ExpVec, Cyc> terms) {
    FactoredRational f;
    f.m_numer_vars = vars;
    f.m_numer = std::move(terms);
    VarList sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != vars) {
        f.m_numer = align_terms(vars, f.m_numer, sorted);
        f.m_numer_vars = sorted;
    }
    for (auto it = f.m_numer.begin(); it != f.m_numer.end();) {
        if (it->second.is_zero())
            it = f.m_numer.erase(it);
        else
            ++it;
    }
    if (f.m_numer.empty()) f.m_scalar = Cyc(0);
    return f;
}

FactoredRational FactoredRational::linear_power(VarId a, VarId b, const Cyc& c, long m) {
    if (c.is_zero()) throw std::domain_error("linear_power: c must be nonzero");
    FactoredRational f;
    if (m != 0) f.m_linear.push_back({a, b, c, m});
    return f;
}

FactoredRational FactoredRational::unit_power(VarId v, std::map<int, Cyc> q, long m) {
    auto it0 = q.find(0);
    if (it0 == q.end() || it0->second.is_zero())
        throw std::domain_error("unit_power: constant term must be invertible");
    for (auto& [e, c] : q)
        if (e < 0) throw std::domain_error("unit_power: negative exponent in unit");
    FactoredRational f;
    if (m != 0) f.m_units.push_back({v, std::move(q), m});
    return f;
}

FactoredRational FactoredRational::monomial(VarId v, int e, const Cyc& coef) {
    FactoredRational f;
    f.m_scalar = coef;
    if (e != 0) {
        f.m_numer_vars = {v};
        f.m_numer.emplace(ExpVec{e}, Cyc(1));
    }
    return f;
}

bool FactoredRational::numer_zero() const { return m_scalar.is_zero(); }

FactoredRational& FactoredRational::operator*=(const FactoredRational& other) {
    m_scalar *= other.m_scalar;
    if (!other.m_numer.empty()) {
        if (m_numer.empty()) {
            m_numer_vars = other.m_numer_vars;
            m_numer = other.m_numer;
        } else {
            VarList vars = sorted_union(m_numer_vars, other.m_numer_vars);
            auto a = align_terms(m_numer_vars, m_numer, vars);
            auto b = align_terms(other.m_numer_vars, other.m_numer, vars);
            m_numer_vars = vars;
            m_numer = mul_terms(a, b, nullptr);
        }
    }
    for (auto& lf : other.m_linear) m_linear.push_back(lf);
    for (auto& uf : other.m_units) m_units.push_back(uf);
    return *this;
}

FactoredRational& FactoredRational::scale(const Cyc& c) {
    m_scalar *= c;
    return *this;
}

std::vector<FactoredRational> FactoredRational::derivative(VarId v) const {
    std::vector<FactoredRational> out;
    if (m_scalar.is_zero()) return out;
    {
        int vi = -1;
        for (size_t i = 0; i < m_numer_vars.size(); ++i)
            if (m_numer_vars[i] == v) vi = static_cast<int>(i);
        if (vi >= 0) {
            std::map<ExpVec, Cyc> dn;
            for (const auto& [e, c] : m_numer) {
                if (e[vi] == 0) continue;
                ExpVec ne = e;
                ne[vi] -= 1;
                dn.emplace(std::move(ne), c * Cyc(e[vi]));
            }
            if (!dn.empty()) {
                FactoredRational t = *this;
                t.m_numer = std::move(dn);
                out.push_back(std::move(t));
            }
        }
    }
    for (size_t k = 0; k < m_linear.size(); ++k) {
        const auto& lf = m_linear[k];
        Cyc dcoef(0);
        if (lf.a == v) dcoef = Cyc(1);
        if (lf.b == v) dcoef = dcoef - lf.c;
        if (dcoef.is_zero()) continue;
        FactoredRational t = *this;
        Cyc factor = Cyc(lf.m) * dcoef;
        t.m_linear[k].m -= 1;
        if (t.m_linear[k].m == 0) t.m_linear.erase(t.m_linear.begin() + k);
        t.m_scalar *= factor;
        out.push_back(std::move(t));
    }
    for (size_t k = 0; k < m_units.size(); ++k) {
        const auto& uf = m_units[k];
        if (uf.v != v) continue;
        std::map<ExpVec, Cyc> dq_terms;
        for (const auto& [e, c] : uf.q) {
            if (e == 0) continue;
            Cyc nc = c * Cyc(e);
            if (!nc.is_zero()) dq_terms.emplace(ExpVec{e - 1}, nc);
        }
        if (dq_terms.empty()) continue;
        FactoredRational t = *this;
        Cyc factor = Cyc(uf.m);
        t.m_units[k].m -= 1;
        if (t.m_units[k].m == 0) t.m_units.erase(t.m_units.begin() + k);
        t.m_scalar *= factor;
        t *= FactoredRational::from_terms({v}, std::move(dq_terms));
        out.push_back(std::move(t));
    }
    return out;
}

Series FactoredRational::expand(const VarList& ordering, const std::vector<int>& hi) const {
    if (ordering.size() != hi.size())
        throw std::logic_error("FactoredRational::expand: ordering/hi size mismatch");
    auto position = [&](VarId v) -> int {
        for (size_t i = 0; i < ordering.size(); ++i)
            if (ordering[i] == v) return static_cast<int>(i);
        return -1;
    };
    for (auto v : m_numer_vars)
        if (position(v) < 0) throw RegionError("expand: numerator variable not in ordering");
    for (auto& uf : m_units)
        if (position(uf.v) < 0) throw RegionError("expand: unit variable not in ordering");
    for (auto& lf : m_linear)
        if (position(lf.a) < 0 || position(lf.b) < 0)
            throw RegionError("expand: linear-form variable not in ordering");

    VarList vars = ordering;
    std::sort(vars.begin(), vars.end());
    auto sorted_index = [&](VarId v) -> int {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v) return static_cast<int>(i);
        return -1;
    };
    std::vector<int> hi_sorted(vars.size());
    for (size_t i = 0; i < ordering.size(); ++i) hi_sorted[sorted_index(ordering[i])] = hi[i];

    Window zero_w;
    zero_w.b.resize(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) zero_w.b[i] = {hi_sorted[i], hi_sorted[i]};
    if (m_scalar.is_zero()) return Series::zero(vars, zero_w, true);

    std::map<ExpVec, Cyc> acc;
    if (m_numer.empty()) {
        acc.emplace(ExpVec(vars.size(), 0), m_scalar);
    } else {
        acc = align_terms(m_numer_vars, m_numer, vars);
        for (auto& [e, c] : acc) c = c * m_scalar;
    }
    ExpVec numer_min(vars.size(), 0);
    {
        bool first = true;
        for (const auto& [e, c] : acc) {
            for (size_t i = 0; i < vars.size(); ++i)
                numer_min[i] = first ? e[i] : std::min(numer_min[i], e[i]);
            first = false;
        }
    }

    // Truncation bounds, resolved back-to-front over the ordering: once a
    // factor's expansion variable is reached, the minimal exponents of every
    // factor expanded later are already known.
    struct FactorPlan {
        bool is_linear;
        size_t idx;
        int small_pos;
        long T = -2;
    };
    std::vector<FactorPlan> plans;
    for (size_t k = 0; k < m_linear.size(); ++k) {
        const auto& lf = m_linear[k];
        if (lf.a == lf.b) throw RegionError("expand: degenerate linear form");
        plans.push_back({true, k, std::max(position(lf.a), position(lf.b)), -2});
    }
    for (size_t k = 0; k < m_units.size(); ++k)
        plans.push_back({false, k, position(m_units[k].v), -2});

    std::vector<ExpVec> minc(plans.size(), ExpVec(vars.size(), 0));
    for (size_t pi = 0; pi < plans.size(); ++pi) {
        long m = plans[pi].is_linear ? m_linear[plans[pi].idx].m : m_units[plans[pi].idx].m;
        if (m >= 0) plans[pi].T = m;
    }
    for (int pos = static_cast<int>(ordering.size()) - 1; pos >= 0; --pos) {
        for (size_t pi = 0; pi < plans.size(); ++pi) {
            auto& pl = plans[pi];
            if (pl.T != -2 || pl.small_pos != pos) continue;
            VarId sv = ordering[pos];
            int svi = sorted_index(sv);
            long other_min = numer_min[svi];
            for (size_t pj = 0; pj < plans.size(); ++pj)
                if (pj != pi) other_min += minc[pj][svi];
            long T = hi_sorted[svi] - other_min;
            if (T < 0) return Series::zero(vars, zero_w, m_linear.empty());
            pl.T = T;
            if (pl.is_linear) {
                const auto& lf = m_linear[pl.idx];
                long m = lf.m;
                VarId big = (position(lf.a) == pl.small_pos) ? lf.b : lf.a;
                minc[pi][sorted_index(big)] = static_cast<int>(m - T);
            }
        }
    }
    for (auto& pl : plans)
        if (pl.T == -2) throw RegionError("expand: unresolved truncation order");
    for (auto& pl : plans)
        if (pl.T > (1 << 20)) throw RegionError("expand: truncation variable needs a finite window");

    // Truncation only bites in the expansion variables of inverse factors;
    // everywhere else the product is exact.
    std::vector<int> caps(vars.size(), kInfExp);
    for (size_t pi = 0; pi < plans.size(); ++pi) {
        long m = plans[pi].is_linear ? m_linear[plans[pi].idx].m : m_units[plans[pi].idx].m;
        if (m >= 0) continue;
        int svi = sorted_index(ordering[plans[pi].small_pos]);
        caps[svi] = std::min(caps[svi], hi_sorted[svi]);
    }

    ExpVec shift(vars.size(), 0);
    std::vector<std::map<ExpVec, Cyc>> polys;
    for (auto& pl : plans) {
        std::map<ExpVec, Cyc> poly;
        if (pl.is_linear) {
            const auto& lf = m_linear[pl.idx];
            int ia = sorted_index(lf.a), ib = sorted_index(lf.b);
            long m = lf.m;
            if (m >= 0) {
                for (long t = 0; t <= m; ++t) {
                    ExpVec e(vars.size(), 0);
                    e[ia] = static_cast<int>(m - t);
                    e[ib] = static_cast<int>(t);
                    poly.emplace(std::move(e), Cyc(binomial(m, t)) * (-lf.c).pow(t));
                }
            } else if (position(lf.b) == pl.small_pos) {
                shift[ia] += static_cast<int>(m - pl.T);
                for (long t = 0; t <= pl.T; ++t) {
                    ExpVec e(vars.size(), 0);
                    e[ia] = static_cast<int>(pl.T - t);
                    e[ib] = static_cast<int>(t);
                    poly.emplace(std::move(e), Cyc(binomial(m, t)) * (-lf.c).pow(t));
                }
            } else {
                shift[ib] += static_cast<int>(m - pl.T);
                Cyc lead = (-lf.c).pow(m);
                Cyc cinv = lf.c.inverse();
                for (long t = 0; t <= pl.T; ++t) {
                    ExpVec e(vars.size(), 0);
                    e[ib] = static_cast<int>(pl.T - t);
                    e[ia] = static_cast<int>(t);
                    poly.emplace(std::move(e), lead * Cyc(binomial(m, t)) * (-cinv).pow(t));
                }
            }
        } else {
            const auto& uf = m_units[pl.idx];
            int iv = sorted_index(uf.v);
            std::map<ExpVec, Cyc> base;
            if (uf.m >= 0) {
                for (auto& [e, c] : uf.q) {
                    ExpVec ee(vars.size(), 0);
                    ee[iv] = e;
                    base.emplace(std::move(ee), c);
                }
                poly.emplace(ExpVec(vars.size(), 0), Cyc(1));
                for (long rep = 0; rep < uf.m; ++rep) poly = mul_terms(poly, base, nullptr);
            } else {
                std::vector<Cyc> inv = unit_inverse(uf.q, static_cast<int>(pl.T));
                for (int e = 0; e <= pl.T; ++e) {
                    if (inv[e].is_zero()) continue;
                    ExpVec ee(vars.size(), 0);
                    ee[iv] = e;
                    base.emplace(std::move(ee), inv[e]);
                }
                poly.emplace(ExpVec(vars.size(), 0), Cyc(1));
                std::vector<int> cap(vars.size(), kInfExp);
                cap[iv] = static_cast<int>(pl.T);
                for (long rep = 0; rep < -uf.m; ++rep) poly = mul_terms(poly, base, &cap);
            }
        }
        polys.push_back(std::move(poly));
    }

    std::map<ExpVec, Cyc> prod;
    for (const auto& [e, c] : acc) {
        ExpVec ne = e;
        for (size_t i = 0; i < vars.size(); ++i) ne[i] += shift[i];
        prod.emplace(std::move(ne), c);
    }
    for (auto& poly : polys) prod = mul_terms(prod, poly, &caps);

    Window w;
    w.b.resize(vars.size());
    bool tame = true;
    for (auto& lf : m_linear) tame &= (lf.m >= 0);
    for (size_t i = 0; i < vars.size(); ++i) {
        long lo = numer_min[i];
        for (size_t pi = 0; pi < plans.size(); ++pi) lo += minc[pi][i];
        w.b[i] = {static_cast<int>(std::min<long>(lo, caps[i])), caps[i]};
    }
    return Series::raw(vars, std::move(prod), std::move(w), tame);
}

Series expand_sum(const RationalSum& sum, const VarList& ordering, const std::vector<int>& hi) {
    if (sum.empty()) throw std::logic_error("expand_sum: empty sum");
    Series acc = sum.front().expand(ordering, hi);
    for (size_t i = 1; i < sum.size(); ++i) acc = acc + sum[i].expand(ordering, hi);
    return acc;
}

RationalSum apply_p_derivation(const RationalSum& sum, const std::map<int, Cyc>& p, VarId v) {
    std::map<ExpVec, Cyc> p_terms;
    for (auto& [e, c] : p) p_terms.emplace(ExpVec{e}, c);
    RationalSum out;
    for (const auto& fr : sum) {
        for (auto& t : fr.derivative(v)) {
            t *= FactoredRational::from_terms({v}, p_terms);
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace vaforge
