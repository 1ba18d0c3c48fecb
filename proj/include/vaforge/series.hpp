#pragma once

#include "vaforge/cyclotomic.hpp"
#include "vaforge/variables.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vaforge {

/// Exponent sentinel for "exact in this variable" (no upper truncation).
constexpr int kInfExp = 1 << 24;

inline int sat_add(int a, int b) {
    long s = static_cast<long>(a) + b;
    if (s >= kInfExp) return kInfExp;
    if (s <= -kInfExp) return -kInfExp;
    return static_cast<int>(s);
}

struct WindowUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RegionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ExpVec = std::vector<int>;

/// Per-variable exponent bounds [lo, hi], aligned with a Series' variable
/// list. Coefficients of the underlying object are certified for every
/// exponent vector e with e <= hi componentwise: they equal the stored value
/// inside [lo, hi] and vanish as soon as some component drops below lo.
/// For a "tame" series the vanishing below lo holds unconditionally; for an
/// untame one (delta kernels and other expansions whose support is tied
/// across variables) it is certified only inside the e <= hi box.
struct Window {
    std::vector<std::pair<int, int>> b;  // (lo, hi) per variable

    bool empty() const {
        for (auto& [lo, hi] : b)
            if (lo > hi) return true;
        return false;
    }
    std::string str(const VarList& vars) const;
};

/// Sparse multivariate Laurent series truncated to an explicit window.
/// Terms map exponent vectors (aligned with vars(), sorted by name) to
/// nonzero cyclotomic coefficients.
class Series {
  public:
    Series() : m_tame(true) {}

    static Series zero(const VarList& vars, const Window& w, bool tame = true);
    static Series constant(const Cyc& c);
    /// Exact Laurent polynomial: window [support-min, +inf).
    static Series poly(const VarList& vars, std::map<ExpVec, Cyc> terms);
    static Series monomial(VarId v, int e, const Cyc& c = Cyc(1));

    const VarList& vars() const { return m_vars; }
    const Window& window() const { return m_window; }
    const std::map<ExpVec, Cyc>& terms() const { return m_terms; }
    bool tame() const { return m_tame; }
    bool is_zero() const { return m_terms.empty(); }

    int var_index(VarId v) const;  // -1 if absent
    int lo(VarId v) const;
    int hi(VarId v) const;

    /// Re-aligns onto a variable superset (absent variables get exponent 0
    /// and an unconstrained window).
    Series with_vars(const VarList& vars) const;

    Cyc coeff(const ExpVec& e) const;
    /// Coefficient of v^k as a series in the remaining variables.
    Series slice(VarId v, int k) const;
    Series residue(VarId v) const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series operator-() const;
    Series scaled(const Cyc& c) const;

    /// Multiplication by the exact monomial v^k.
    Series shifted(VarId v, int k) const;
    /// Termwise d/dv.
    Series derivative(VarId v) const;
    /// Substitution v -> c*v (exponentwise scaling by c^e).
    Series scaled_var(VarId v, const Cyc& c) const;
    /// Renames a variable (target must not collide).
    Series renamed(VarId from, VarId to) const;

    /// Restricts the window (dropping terms outside) without changing
    /// certified content.
    Series truncated(VarId v, int lo, int hi) const;
    Series capped_hi(VarId v, int hi) const;

    /// g^n for integer n. The minimal slice of g along the total degree in
    /// `grade` must be a single monomial; `target_hi` bounds the total
    /// grade-degree of the result (truncation stop for exact inputs).
    Series pow(long n, const VarList& grade, int target_total_degree) const;

    /// Composition f|_{v:=g}. g must be tame. Certification caps follow the
    /// valuation of g; throws CompositionError when no variable of g has
    /// positive valuation while f is truncated in v.
    Series substituted(VarId v, const Series& g, const VarList& grade_for_inverse,
                       int pow_total_degree) const;

    /// Composition f|_{v := v1 + v2} with the binomial expanded exactly for
    /// nonnegative exponents; for negative exponents v1 is the dominant
    /// variable. Requires hi1 + hi2 <= window hi of v.
    Series substituted_sum(VarId v, VarId v1, VarId v2, int hi1, int hi2) const;

    /// Sum_{k=0}^{order} z^k/k! (p(x) d/dx)^k f, with p an exact Laurent
    /// polynomial in x given as exponent->coefficient.
    Series derivation_exp(const std::map<int, Cyc>& p, VarId x, VarId z, int order) const;

    /// Certified support minimum per variable (window lo when empty).
    ExpVec eff_lo() const;

    /// True when the target box (per-var hi bounds) lies inside the certified
    /// region.
    bool covers(const std::vector<std::pair<VarId, std::pair<int, int>>>& box) const;

    std::string str() const;

    /// First nonzero stored coefficient (lex order on exponents) — the
    /// counterexample locator for identity checks.
    std::optional<std::pair<ExpVec, Cyc>> first_term() const;

    static Series add_like(const Series& a, const Series& b, bool subtract);
    /// Internal factory with explicit window and tameness (kernel use only).
    static Series raw(const VarList& vars, std::map<ExpVec, Cyc> terms, Window w, bool tame);

  private:
    void prune();
    void clip_to_window();

    VarList m_vars;
    std::map<ExpVec, Cyc> m_terms;
    Window m_window;
    bool m_tame;

    friend class SeriesBuilder;
};

/// x1^{-1} delta(c x2/x1) truncated to hi bounds: sum_n c^n x1^{-n-1} x2^n.
Series delta_series(const Cyc& c, VarId x1, VarId x2, int hi1, int hi2);

/// Geometric|binomial expansion of (xa - c*xb)^m with `small_var` expanded as
/// the small variable; `order` bounds the number of expansion terms.
Series linear_form_pow(VarId xa, VarId xb, const Cyc& c, long m, VarId small_var, int order);

}  // namespace vaforge
