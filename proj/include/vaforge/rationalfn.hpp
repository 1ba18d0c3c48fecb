#pragma once

#include "vaforge/series.hpp"

#include <vector>

namespace vaforge {

/// Element of the fraction field C_*((x_1,...,x_n)) kept in factored form:
/// a Laurent-polynomial numerator times powers of linear forms (x_a - c*x_b)
/// and of single-variable series units q(x_v) with q(0) != 0.
///
/// The iota expansion in a declared variable ordering (earlier = "large")
/// expands every inverse factor with its later variable small; the product
/// over all factors is carried out exactly, with truncation bounds derived
/// back-to-front from the requested window so every reported coefficient is
/// complete.
class FactoredRational {
  public:
    struct LinearFactor {
        VarId a, b;
        Cyc c;   // the form x_a - c*x_b, c != 0
        long m;  // exponent, possibly negative
    };
    struct UnitFactor {
        VarId v;
        std::map<int, Cyc> q;  // exponents >= 0, q[0] != 0
        long m;
    };

    FactoredRational() : m_scalar(1) {}

    static FactoredRational from_terms(const VarList& vars, std::map<ExpVec, Cyc> terms);
    static FactoredRational linear_power(VarId a, VarId b, const Cyc& c, long m);
    static FactoredRational unit_power(VarId v, std::map<int, Cyc> q, long m);
    static FactoredRational monomial(VarId v, int e, const Cyc& coef = Cyc(1));

    FactoredRational& operator*=(const FactoredRational& other);
    friend FactoredRational operator*(FactoredRational a, const FactoredRational& b) {
        a *= b;
        return a;
    }
    FactoredRational& scale(const Cyc& c);

    bool numer_zero() const;

    /// d/dv as a sum of factored rationals.
    std::vector<FactoredRational> derivative(VarId v) const;

    /// iota expansion in the ordering, certified on {e <= hi}; `hi` is aligned
    /// with `ordering`.
    Series expand(const VarList& ordering, const std::vector<int>& hi) const;

    const std::vector<LinearFactor>& linear_factors() const { return m_linear; }

  private:
    Cyc m_scalar;
    VarList m_numer_vars;                // numerator variables, sorted
    std::map<ExpVec, Cyc> m_numer;       // empty numerator means the constant 1
    std::vector<LinearFactor> m_linear;
    std::vector<UnitFactor> m_units;
};

using RationalSum = std::vector<FactoredRational>;

Series expand_sum(const RationalSum& sum, const VarList& ordering, const std::vector<int>& hi);

/// (p(x_v) d/dv) applied once to each term, flattened.
RationalSum apply_p_derivation(const RationalSum& sum, const std::map<int, Cyc>& p, VarId v);

}  // namespace vaforge
