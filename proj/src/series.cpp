#include "vaforge/series.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace vaforge {

std::string Window::str(const VarList& vars) const {
    std::ostringstream os;
    for (size_t i = 0; i < b.size(); ++i) {
        if (i) os << " ";
        os << vars[i].name() << ":[";
        if (b[i].first <= -kInfExp)
            os << "-inf";
        else
            os << b[i].first;
        os << "..";
        if (b[i].second >= kInfExp)
            os << "inf";
        else
            os << b[i].second;
        os << "]";
    }
    return os.str();
}

void Series::prune() {
    for (auto it = m_terms.begin(); it != m_terms.end();) {
        if (it->second.is_zero())
            it = m_terms.erase(it);
        else
            ++it;
    }
}

void Series::clip_to_window() {
    for (auto it = m_terms.begin(); it != m_terms.end();) {
        bool inside = true;
        for (size_t i = 0; i < m_vars.size(); ++i) {
            if (it->first[i] < m_window.b[i].first || it->first[i] > m_window.b[i].second) {
                inside = false;
                break;
            }
        }
        if (!inside)
            it = m_terms.erase(it);
        else
            ++it;
    }
}

Series Series::zero(const VarList& vars, const Window& w, bool tame) {
    Series s;
    s.m_vars = vars;
    s.m_window = w;
    s.m_tame = tame;
    return s;
}

Series Series::constant(const Cyc& c) {
    Series s;
    s.m_tame = true;
    if (!c.is_zero()) s.m_terms.emplace(ExpVec{}, c);
    return s;
}

Series Series::poly(const VarList& vars, std::map<ExpVec, Cyc> terms) {
    Series s;
    s.m_vars = vars;
    s.m_terms = std::move(terms);
    s.m_tame = true;
    s.prune();
    s.m_window.b.assign(vars.size(), {0, kInfExp});
    for (size_t i = 0; i < vars.size(); ++i) {
        int lo = kInfExp;
        for (auto& [e, c] : s.m_terms) lo = std::min(lo, e[i]);
        s.m_window.b[i].first = s.m_terms.empty() ? 0 : lo;
    }
    return s;
}

Series Series::monomial(VarId v, int e, const Cyc& c) {
    std::map<ExpVec, Cyc> t;
    t.emplace(ExpVec{e}, c);
    return poly({v}, std::move(t));
}

int Series::var_index(VarId v) const {
    for (size_t i = 0; i < m_vars.size(); ++i)
        if (m_vars[i] == v) return static_cast<int>(i);
    return -1;
}

int Series::lo(VarId v) const {
    int i = var_index(v);
    return i < 0 ? 0 : m_window.b[i].first;
}

int Series::hi(VarId v) const {
    int i = var_index(v);
    return i < 0 ? kInfExp : m_window.b[i].second;
}

Series Series::with_vars(const VarList& vars) const {
    Series out;
    out.m_vars = vars;
    out.m_tame = m_tame;
    out.m_window.b.assign(vars.size(), {0, kInfExp});
    std::vector<int> pos(vars.size(), -1);
    for (size_t i = 0; i < vars.size(); ++i) {
        int j = var_index(vars[i]);
        pos[i] = j;
        if (j >= 0) out.m_window.b[i] = m_window.b[j];
    }
    for (int j = 0; j < static_cast<int>(m_vars.size()); ++j) {
        bool found = false;
        for (size_t i = 0; i < vars.size(); ++i) found |= (pos[i] == j);
        if (!found) throw std::logic_error("with_vars: variable set must be a superset");
    }
    for (const auto& [e, c] : m_terms) {
        ExpVec ne(vars.size(), 0);
        for (size_t i = 0; i < vars.size(); ++i)
            if (pos[i] >= 0) ne[i] = e[pos[i]];
        out.m_terms.emplace(std::move(ne), c);
    }
    return out;
}

Cyc Series::coeff(const ExpVec& e) const {
    auto it = m_terms.find(e);
    return it == m_terms.end() ? Cyc(0) : it->second;
}

Series Series::slice(VarId v, int k) const {
    int vi = var_index(v);
    if (vi < 0) {
        if (k == 0) return *this;
        return Series::zero(m_vars, m_window, m_tame);
    }
    if (k > m_window.b[vi].second)
        throw WindowUnderflow("slice: exponent " + std::to_string(k) + " of " + v.name() +
                              " outside certified window");
    Series out;
    out.m_tame = m_tame;
    for (size_t i = 0; i < m_vars.size(); ++i) {
        if (static_cast<int>(i) == vi) continue;
        out.m_vars.push_back(m_vars[i]);
        out.m_window.b.push_back(m_window.b[i]);
    }
    for (const auto& [e, c] : m_terms) {
        if (e[vi] != k) continue;
        ExpVec ne;
        ne.reserve(e.size() - 1);
        for (size_t i = 0; i < e.size(); ++i)
            if (static_cast<int>(i) != vi) ne.push_back(e[i]);
        out.m_terms.emplace(std::move(ne), c);
    }
    return out;
}

Series Series::residue(VarId v) const { return slice(v, -1); }

namespace {
VarList merge_vars(const VarList& a, const VarList& b) {
    VarList out = a;
    for (auto v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace

Series Series::add_like(const Series& a, const Series& b, bool subtract) {
    VarList vars = merge_vars(a.m_vars, b.m_vars);
    Series ea = a.with_vars(vars), eb = b.with_vars(vars);
    Series out;
    out.m_vars = vars;
    out.m_tame = ea.m_tame && eb.m_tame;
    out.m_window.b.resize(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
        out.m_window.b[i].first = std::min(ea.m_window.b[i].first, eb.m_window.b[i].first);
        out.m_window.b[i].second = std::min(ea.m_window.b[i].second, eb.m_window.b[i].second);
    }
    out.m_terms = std::move(ea.m_terms);
    for (auto& [e, c] : eb.m_terms) {
        auto [it, inserted] = out.m_terms.emplace(e, subtract ? -c : c);
        if (!inserted) it->second = subtract ? it->second - c : it->second + c;
    }
    out.prune();
    out.clip_to_window();
    return out;
}

Series operator+(const Series& a, const Series& b) { return Series::add_like(a, b, false); }
Series operator-(const Series& a, const Series& b) { return Series::add_like(a, b, true); }

Series Series::operator-() const { return scaled(Cyc(-1)); }

Series Series::scaled(const Cyc& c) const {
    Series out = *this;
    if (c.is_zero()) {
        out.m_terms.clear();
        return out;
    }
    for (auto& [e, v] : out.m_terms) v = v * c;
    return out;
}

ExpVec Series::eff_lo() const {
    ExpVec lo(m_vars.size());
    for (size_t i = 0; i < m_vars.size(); ++i) lo[i] = m_window.b[i].second;  // zero series
    bool first = true;
    for (const auto& [e, c] : m_terms) {
        for (size_t i = 0; i < m_vars.size(); ++i)
            lo[i] = first ? e[i] : std::min(lo[i], e[i]);
        first = false;
    }
    return lo;
}

Series operator*(const Series& a, const Series& b) {
    if (!a.m_tame && !b.m_tame)
        throw std::logic_error(
            "series mul: both factors have cross-variable support ties; "
            "expand the product as a single rational expression instead");
    VarList vars = merge_vars(a.m_vars, b.m_vars);
    Series ea = a.with_vars(vars), eb = b.with_vars(vars);
    ExpVec la = ea.eff_lo(), lb = eb.eff_lo();
    Series out;
    out.m_vars = vars;
    out.m_tame = a.m_tame && b.m_tame;
    out.m_window.b.resize(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
        out.m_window.b[i].first = sat_add(la[i], lb[i]);
        out.m_window.b[i].second = std::min(sat_add(ea.m_window.b[i].second, lb[i]),
                                            sat_add(la[i], eb.m_window.b[i].second));
    }
    if (out.m_window.empty())
        throw WindowUnderflow("series mul: empty output window (" +
                              out.m_window.str(vars) + ")");
    for (const auto& [e1, c1] : ea.m_terms) {
        for (const auto& [e2, c2] : eb.m_terms) {
            ExpVec e(vars.size());
            bool inside = true;
            for (size_t i = 0; i < vars.size(); ++i) {
                e[i] = e1[i] + e2[i];
                if (e[i] > out.m_window.b[i].second) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            Cyc prod = c1 * c2;
            auto [it, inserted] = out.m_terms.emplace(std::move(e), prod);
            if (!inserted) it->second += prod;
        }
    }
    out.prune();
    return out;
}

Series Series::shifted(VarId v, int k) const {
    if (k == 0) return *this;
    Series out = *this;
    int vi = out.var_index(v);
    if (vi < 0) {
        out = with_vars(merge_vars(m_vars, {v}));
        vi = out.var_index(v);
    }
    std::map<ExpVec, Cyc> nt;
    for (auto& [e, c] : out.m_terms) {
        ExpVec ne = e;
        ne[vi] += k;
        nt.emplace(std::move(ne), c);
    }
    out.m_terms = std::move(nt);
    out.m_window.b[vi].first = sat_add(out.m_window.b[vi].first, k);
    out.m_window.b[vi].second = sat_add(out.m_window.b[vi].second, k);
    return out;
}

Series Series::derivative(VarId v) const {
    int vi = var_index(v);
    if (vi < 0) {
        Series out = with_vars(merge_vars(m_vars, {v}));
        return Series::zero(out.m_vars, out.m_window, out.m_tame);
    }
    Series out;
    out.m_vars = m_vars;
    out.m_tame = m_tame;
    out.m_window = m_window;
    out.m_window.b[vi].first = sat_add(m_window.b[vi].first, -1);
    out.m_window.b[vi].second = sat_add(m_window.b[vi].second, -1);
    for (const auto& [e, c] : m_terms) {
        if (e[vi] == 0) continue;
        ExpVec ne = e;
        ne[vi] -= 1;
        out.m_terms.emplace(std::move(ne), c * Cyc(e[vi]));
    }
    return out;
}

Series Series::scaled_var(VarId v, const Cyc& c) const {
    if (c.is_zero()) throw std::domain_error("scaled_var: zero scale");
    int vi = var_index(v);
    if (vi < 0) return *this;
    Series out = *this;
    for (auto& [e, coef] : out.m_terms) coef = coef * c.pow(e[vi]);
    out.prune();
    return out;
}

Series Series::renamed(VarId from, VarId to) const {
    int vi = var_index(from);
    if (vi < 0) return *this;
    if (var_index(to) >= 0) throw std::logic_error("renamed: target variable already present");
    VarList vars;
    for (auto v : m_vars) vars.push_back(v == from ? to : v);
    std::vector<size_t> order(vars.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vars[a] < vars[b]; });
    Series out;
    out.m_tame = m_tame;
    for (size_t i : order) {
        out.m_vars.push_back(vars[i]);
        out.m_window.b.push_back(m_window.b[i]);
    }
    for (const auto& [e, c] : m_terms) {
        ExpVec ne(e.size());
        for (size_t i = 0; i < order.size(); ++i) ne[i] = e[order[i]];
        out.m_terms.emplace(std::move(ne), c);
    }
    return out;
}

Series Series::truncated(VarId v, int nlo, int nhi) const {
    Series out = *this;
    int vi = out.var_index(v);
    if (vi < 0) return out;
    out.m_window.b[vi].first = std::max(out.m_window.b[vi].first, nlo);
    out.m_window.b[vi].second = std::min(out.m_window.b[vi].second, nhi);
    out.clip_to_window();
    return out;
}

Series Series::capped_hi(VarId v, int nhi) const {
    Series out = *this;
    int vi = out.var_index(v);
    if (vi < 0) return out;
    out.m_window.b[vi].second = std::min(out.m_window.b[vi].second, nhi);
    out.clip_to_window();
    return out;
}

namespace {
int total_degree(const ExpVec& e, const std::vector<int>& grade_idx) {
    int d = 0;
    for (int i : grade_idx) d += e[i];
    return d;
}
}  // namespace

Series Series::pow(long n, const VarList& grade, int target_total_degree) const {
    if (n == 0) return Series::constant(Cyc(1));
    if (n == 1) return *this;
    if (m_terms.empty()) {
        if (n < 0) throw std::domain_error("Series::pow: zero base with negative exponent");
        return *this;
    }
    std::vector<int> gidx;
    for (auto v : grade) {
        int i = var_index(v);
        if (i >= 0) gidx.push_back(i);
    }
    // Minimal total grade-degree slice must be a lone monomial.
    int d0 = kInfExp;
    for (const auto& [e, c] : m_terms) d0 = std::min(d0, total_degree(e, gidx));
    const ExpVec* lead = nullptr;
    for (const auto& [e, c] : m_terms) {
        if (total_degree(e, gidx) != d0) continue;
        if (lead) throw CompositionError("Series::pow: leading grade slice is not a monomial");
        lead = &e;
    }
    ExpVec mexp = *lead;
    Cyc mcoef = m_terms.at(mexp);

    // g = M (1 + h), h of positive grade-valuation.
    Series mono_inv;
    {
        Series m;
        m.m_vars = m_vars;
        m.m_tame = true;
        m.m_window.b.assign(m_vars.size(), {0, kInfExp});
        ExpVec me(m_vars.size());
        for (size_t i = 0; i < m_vars.size(); ++i) {
            me[i] = -mexp[i];
            m.m_window.b[i].first = me[i];
        }
        m.m_terms.emplace(std::move(me), mcoef.inverse());
        mono_inv = m;
    }
    Series h = (*this) * mono_inv - Series::constant(Cyc(1));
    {
        std::vector<int> hidx;
        for (auto v : grade) {
            int i = h.var_index(v);
            if (i >= 0) hidx.push_back(i);
        }
        for (const auto& [e, c] : h.m_terms)
            if (total_degree(e, hidx) < 1)
                throw CompositionError("Series::pow: non-unit tail below leading monomial");
    }

    Series mono_n;
    {
        Series m;
        m.m_vars = m_vars;
        m.m_tame = true;
        m.m_window.b.assign(m_vars.size(), {0, kInfExp});
        ExpVec me(m_vars.size());
        for (size_t i = 0; i < m_vars.size(); ++i) {
            me[i] = static_cast<int>(n) * mexp[i];
            m.m_window.b[i].first = me[i];
        }
        m.m_terms.emplace(std::move(me), mcoef.pow(n));
        mono_n = m;
    }

    long kmax = std::max<long>(0, target_total_degree - static_cast<long>(n) * d0);
    Series acc = Series::constant(Cyc(1));
    Series hpow = Series::constant(Cyc(1));
    for (long k = 1; k <= kmax; ++k) {
        if (n >= 0 && k > n) break;
        hpow = hpow * h;
        acc = acc + hpow.scaled(Cyc(binomial(n, k)));
        if (hpow.is_zero()) {
            bool exact = true;
            for (auto& [wlo, whi] : hpow.m_window.b) exact &= (whi >= kInfExp);
            if (exact) break;
        }
    }
    Series out = mono_n * acc;
    // Truncation of the binomial tail: certified only up to the requested
    // total grade-degree.
    std::vector<int> oidx;
    for (auto v : grade) {
        int i = out.var_index(v);
        if (i >= 0) oidx.push_back(i);
    }
    if (!oidx.empty()) {
        // keep per-variable hi caps consistent with the total-degree stop
        for (int i : oidx) {
            int others_min = 0;
            for (int j : oidx)
                if (j != i) others_min += out.m_window.b[j].first;
            out.m_window.b[i].second =
                std::min(out.m_window.b[i].second, target_total_degree - others_min);
        }
        if (out.m_window.empty())
            throw WindowUnderflow("Series::pow: empty window after truncation cap");
        out.clip_to_window();
    }
    return out;
}

Series Series::substituted(VarId v, const Series& g, const VarList& grade_for_inverse,
                           int pow_total_degree) const {
    int vi = var_index(v);
    if (vi < 0) return *this;
    if (!g.m_tame)
        throw CompositionError("substituted: replacement series must be tame");
    if (!m_tame) {
        for (auto u : g.m_vars)
            if (u != v && var_index(u) >= 0)
                throw CompositionError(
                    "substituted: untame target may not share variables with replacement");
    }

    // Certified valuation of g per variable.
    std::vector<std::pair<VarId, int>> gval;
    for (size_t i = 0; i < g.m_vars.size(); ++i)
        gval.emplace_back(g.m_vars[i], g.m_window.b[i].first);

    int hi_v = m_window.b[vi].second;
    bool f_exact_in_v = hi_v >= kInfExp;
    if (!f_exact_in_v) {
        if (hi_v < 0)
            throw CompositionError("substituted: negative truncation order in " + v.name());
        bool some_positive = false;
        for (auto& [u, val] : gval) some_positive |= (val >= 1);
        if (!some_positive)
            throw CompositionError("substituted: replacement has no variable of positive valuation "
                                   "and target is truncated in " + v.name());
    }

    // Gather needed powers of g: nonnegative ones by iterated multiplication,
    // negative ones through the graded binomial inverse.
    std::map<int, Series> powers;
    for (const auto& [e, c] : m_terms) powers.emplace(e[vi], Series());
    int max_pos = 0;
    for (auto& [n, s] : powers) max_pos = std::max(max_pos, n);
    std::vector<Series> pos_cache;
    pos_cache.push_back(Series::constant(Cyc(1)));
    for (int k = 1; k <= max_pos; ++k) pos_cache.push_back(pos_cache.back() * g);
    for (auto& [n, s] : powers)
        s = n >= 0 ? pos_cache[n] : g.pow(n, grade_for_inverse, pow_total_degree);

    VarList rvars;
    for (auto u : m_vars)
        if (u != v) rvars.push_back(u);
    rvars = merge_vars(rvars, g.m_vars);

    // Start from an exact zero so genuinely zero images keep a usable window;
    // window narrowing happens through the term sums and the caps below.
    Window wide;
    wide.b.assign(rvars.size(), {-kInfExp, kInfExp});
    Series acc = Series::zero(rvars, wide, true);
    for (const auto& [e, c] : m_terms) {
        std::map<ExpVec, Cyc> mono;
        ExpVec me;
        VarList mv;
        for (size_t i = 0; i < m_vars.size(); ++i) {
            if (static_cast<int>(i) == vi) continue;
            mv.push_back(m_vars[i]);
            me.push_back(e[i]);
        }
        mono.emplace(std::move(me), c);
        Series rest = Series::poly(mv, std::move(mono));
        acc = acc + rest * powers.at(e[vi]);
    }
    acc.m_tame = m_tame && g.m_tame;

    // Caps from the unknown v-region of f: images of v^n for n > hi_v live at
    // u-exponents >= f.lo_u + (hi_v+1)*val_u whenever val_u >= 1.
    if (!f_exact_in_v) {
        for (auto& [u, val] : gval) {
            if (val < 1) continue;
            int fl = 0;
            int ui = var_index(u);
            if (ui >= 0 && ui != vi) fl = m_window.b[ui].first;
            int cap = sat_add(fl, sat_add((hi_v + 1) * val, -1));
            acc = acc.capped_hi(u, cap);
        }
    }
    // Caps from the unknown region of f in its other variables: those
    // exponents are preserved (or shifted by the g-contribution when the
    // variable also occurs in g).
    for (size_t i = 0; i < m_vars.size(); ++i) {
        if (static_cast<int>(i) == vi) continue;
        int fhi = m_window.b[i].second;
        if (fhi >= kInfExp) continue;
        int shift = 0;
        int gi = g.var_index(m_vars[i]);
        if (gi >= 0) {
            int val = g.m_window.b[gi].first;
            int lov = m_window.b[vi].first;
            shift = std::min({0, lov * val, hi_v >= kInfExp ? 0 : hi_v * val});
        }
        acc = acc.capped_hi(m_vars[i], sat_add(fhi, shift));
    }
    if (acc.m_window.empty())
        throw WindowUnderflow("substituted: empty certified window after composition caps");
    return acc;
}

Series Series::substituted_sum(VarId v, VarId v1, VarId v2, int hi1, int hi2) const {
    int vi = var_index(v);
    if (vi < 0) return *this;
    if (v1 == v || v2 == v) {
        VarId tmp("__sum_tmp");
        return renamed(v, tmp).substituted_sum(tmp, v1, v2, hi1, hi2);
    }
    if (var_index(v1) >= 0 || var_index(v2) >= 0)
        throw CompositionError("substituted_sum: target variables must be fresh");
    int hi_v = m_window.b[vi].second;
    if (hi_v < kInfExp && hi1 + hi2 > hi_v)
        throw CompositionError("substituted_sum: requested bi-window exceeds certified order (" +
                               std::to_string(hi1) + "+" + std::to_string(hi2) + " > " +
                               std::to_string(hi_v) + ")");
    bool has_negative = false;
    for (const auto& [e, c] : m_terms) has_negative |= (e[vi] < 0);

    VarList rvars;
    for (auto u : m_vars)
        if (u != v) rvars.push_back(u);
    rvars = merge_vars(rvars, {v1, v2});

    Window wide;
    wide.b.assign(rvars.size(), {-kInfExp, kInfExp});
    Series acc = Series::zero(rvars, wide, m_tame && !has_negative);

    for (const auto& [e, c] : m_terms) {
        int n = e[vi];
        long tmax = n >= 0 ? n : hi2;
        Series image;
        {
            std::map<ExpVec, Cyc> t;
            for (long k = 0; k <= tmax; ++k) {
                Cyc coef = Cyc(binomial(n, k));
                if (coef.is_zero()) continue;
                t.emplace(ExpVec{static_cast<int>(n - k), static_cast<int>(k)}, coef);
            }
            VarList iv{v1, v2};
            if (!(v1 < v2)) {
                std::swap(iv[0], iv[1]);
                std::map<ExpVec, Cyc> t2;
                for (auto& [ee, cc] : t) t2.emplace(ExpVec{ee[1], ee[0]}, cc);
                t = std::move(t2);
            }
            image = Series::poly(iv, std::move(t));
            if (n < 0) {
                // (v1+v2)^n with v1 dominant: support ties v1-exp + v2-exp = n,
                // so above the line everything is certified zero.
                image.m_tame = false;
                int i1 = image.var_index(v1), i2 = image.var_index(v2);
                image.m_window.b[i1] = {n - hi2, kInfExp};
                image.m_window.b[i2] = {0, hi2};
            }
        }
        std::map<ExpVec, Cyc> mono;
        ExpVec me;
        VarList mv;
        for (size_t i = 0; i < m_vars.size(); ++i) {
            if (static_cast<int>(i) == vi) continue;
            mv.push_back(m_vars[i]);
            me.push_back(e[i]);
        }
        mono.emplace(std::move(me), c);
        acc = acc + Series::poly(mv, std::move(mono)) * image;
    }
    // Unknown v-region images are homogeneous of total degree > hi1+hi2.
    acc = acc.capped_hi(v1, hi1).capped_hi(v2, hi2);
    for (size_t i = 0; i < m_vars.size(); ++i) {
        if (static_cast<int>(i) == vi) continue;
        acc = acc.capped_hi(m_vars[i], m_window.b[i].second);
    }
    acc.m_tame = acc.m_tame && m_tame && !has_negative;
    return acc;
}

Series Series::derivation_exp(const std::map<int, Cyc>& p, VarId x, VarId z, int order) const {
    if (var_index(z) >= 0) throw CompositionError("derivation_exp: z already present");
    Series pser;
    {
        std::map<ExpVec, Cyc> t;
        for (auto& [e, c] : p) t.emplace(ExpVec{e}, c);
        pser = Series::poly({x}, std::move(t));
    }
    Series acc = *this;
    Series cur = *this;
    Rat kfact(1);
    for (int k = 1; k <= order; ++k) {
        cur = pser * cur.derivative(x);
        kfact *= k;
        acc = acc + cur.scaled(Cyc(Rat(1) / kfact)).shifted(z, k);
    }
    int zi = acc.var_index(z);
    if (zi < 0) {
        acc = acc.with_vars(merge_vars(acc.vars(), {z}));
        zi = acc.var_index(z);
    }
    acc.m_window.b[zi] = {0, order};
    acc.clip_to_window();
    return acc;
}

bool Series::covers(const std::vector<std::pair<VarId, std::pair<int, int>>>& box) const {
    for (auto& [v, range] : box) {
        int i = var_index(v);
        int h = i < 0 ? kInfExp : m_window.b[i].second;
        if (range.second > h) return false;
    }
    return true;
}

std::optional<std::pair<ExpVec, Cyc>> Series::first_term() const {
    if (m_terms.empty()) return std::nullopt;
    return *m_terms.begin();
}

std::string Series::str() const {
    if (m_terms.empty()) return "0   [" + m_window.str(m_vars) + "]";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : m_terms) {
        if (!first) os << "\n";
        first = false;
        os << c.str();
        for (size_t i = 0; i < m_vars.size(); ++i) {
            if (e[i] == 0) continue;
            os << " * " << m_vars[i].name() << "^" << e[i];
        }
    }
    os << "\n[" << m_window.str(m_vars) << "]";
    return os.str();
}

Series Series::raw(const VarList& vars, std::map<ExpVec, Cyc> terms, Window w, bool tame) {
    Series s;
    s.m_vars = vars;
    s.m_terms = std::move(terms);
    s.m_window = std::move(w);
    s.m_tame = tame;
    s.prune();
    s.clip_to_window();
    return s;
}

Series delta_series(const Cyc& c, VarId x1, VarId x2, int hi1, int hi2) {
    if (c.is_zero()) throw std::domain_error("delta_series: c must be nonzero");
    VarList vars{x1, x2};
    bool swapped = !(x1 < x2);
    if (swapped) std::swap(vars[0], vars[1]);
    Window w;
    w.b.resize(2);
    int i1 = swapped ? 1 : 0, i2 = swapped ? 0 : 1;
    w.b[i1] = {-1 - hi2, hi1};
    w.b[i2] = {-1 - hi1, hi2};
    std::map<ExpVec, Cyc> terms;
    for (int n = -1 - hi1; n <= hi2; ++n) {
        ExpVec e(2);
        e[i1] = -n - 1;
        e[i2] = n;
        terms.emplace(std::move(e), c.pow(n));
    }
    return Series::raw(vars, std::move(terms), std::move(w), false);
}

Series linear_form_pow(VarId xa, VarId xb, const Cyc& c, long m, VarId small_var, int order) {
    if (m >= 0) {
        std::map<ExpVec, Cyc> terms;
        VarList vars{xa, xb};
        bool swapped = !(xa < xb);
        if (swapped) std::swap(vars[0], vars[1]);
        int ia = swapped ? 1 : 0, ib = swapped ? 0 : 1;
        for (long t = 0; t <= m; ++t) {
            ExpVec e(2);
            e[ia] = static_cast<int>(m - t);
            e[ib] = static_cast<int>(t);
            terms.emplace(std::move(e), Cyc(binomial(m, t)) * (-c).pow(t));
        }
        return Series::poly(vars, std::move(terms));
    }
    // Inverse power: expand with small_var small.
    VarList vars{xa, xb};
    bool swapped = !(xa < xb);
    if (swapped) std::swap(vars[0], vars[1]);
    int ia = swapped ? 1 : 0, ib = swapped ? 0 : 1;
    std::map<ExpVec, Cyc> terms;
    Window w;
    w.b.resize(2);
    if (small_var == xb) {
        // (xa - c xb)^m = xa^m (1 - c xb/xa)^m
        for (long t = 0; t <= order; ++t) {
            ExpVec e(2);
            e[ia] = static_cast<int>(m - t);
            e[ib] = static_cast<int>(t);
            terms.emplace(std::move(e), Cyc(binomial(m, t)) * (-c).pow(t));
        }
        w.b[ia] = {static_cast<int>(m) - order, kInfExp};
        w.b[ib] = {0, order};
    } else if (small_var == xa) {
        // (xa - c xb)^m = (-c)^m xb^m (1 - c^{-1} xa/xb)^m
        Cyc lead = (-c).pow(m);
        Cyc cinv = c.inverse();
        for (long t = 0; t <= order; ++t) {
            ExpVec e(2);
            e[ib] = static_cast<int>(m - t);
            e[ia] = static_cast<int>(t);
            terms.emplace(std::move(e), lead * Cyc(binomial(m, t)) * (-cinv).pow(t));
        }
        w.b[ib] = {static_cast<int>(m) - order, kInfExp};
        w.b[ia] = {0, order};
    } else {
        throw RegionError("linear_form_pow: small variable not part of the form");
    }
    return Series::raw(vars, std::move(terms), std::move(w), false);
}

}  // namespace vaforge
