#pragma once

#include "vaforge/rationalfn.hpp"
#include "vaforge/report.hpp"
#include "vaforge/series.hpp"

#include <mutex>

namespace vaforge {

/// Associate of the additive formal group: phi(x,z) = e^{z p(x) d/dx} x with
/// p(x) = x^{r+1} p0(x^N), p0 a polynomial with p0(0) != 0. For period N > 1
/// this shape is exactly what makes p transform by a character under
/// x -> zeta_N x, which is checked at construction.
class Associate {
  public:
    Associate(long r, std::vector<Rat> p0, long period);

    long r() const { return m_r; }
    long period() const { return m_period; }
    const std::vector<Rat>& p0() const { return m_p0; }
    bool p_is_monomial() const { return m_p.size() == 1; }

    /// p(x) as an exponent -> coefficient map.
    const std::map<int, Cyc>& p() const { return m_p; }
    /// p as a factored rational in the variable v (monomial times unit).
    FactoredRational p_factored(VarId v) const;
    /// p'(x).
    std::map<int, Cyc> p_prime() const;

    /// phi(x,z) to z-order `order` (exact in x); cached per (x,z,order).
    Series phi(VarId x, VarId z, int order) const;

    /// (phi(x,z) - x) / (z p(x)), a unit power series with constant term 1.
    Series phi_shift_unit(VarId x, VarId z, int order) const;

  private:
    long m_r;
    std::vector<Rat> m_p0;
    long m_period;
    std::map<int, Cyc> m_p;
    mutable std::mutex m_mutex;
    mutable std::map<std::tuple<unsigned, unsigned, int>, Series> m_cache;
};

/// phi(x,0) = x, the composition law phi(phi(x,y),z) = phi(x,y+z), parameter
/// exchange, and (for monomial p) the closed-form identity
/// phi^{-r} = x^{-r} - r z  (resp. phi = x e^z when r = 0).
std::vector<IdentityRecord> verify_associate_axioms(const Associate& a, int order);

/// Kernel Delta_c(x1,x2,z) = e^{z p(x2) d_{x2}} p(x1)/(x1 - c x2), iota
/// expanded in the given two-variable ordering and truncated to `hi` with
/// z-order `zorder`.
Series delta_c_expand(const Cyc& c, const Associate& a, const VarList& ordering2, VarId z,
                      const std::vector<int>& hi2, int zorder);

/// The four delta-function identities for the kernel Delta_c.
std::vector<IdentityRecord> verify_delta_lemma(const Cyc& c, const Associate& a, int order);

/// Derivative forms: both expansion-difference identities for
/// F_k = (p(x2) d_{x2})^k (p(x1)/(x1-x2)), k <= kmax.
std::vector<IdentityRecord> verify_delta_derivatives(const Associate& a, int kmax, int order);

/// Product kernel Delta_Gamma = prod_i Delta_{c_i}(x1,x2,z_i): the
/// expansion-difference formula and regularity of the residual factors.
std::vector<IdentityRecord> verify_delta_product_lemma(const std::vector<Cyc>& gamma,
                                                       const Associate& a, int order);

/// The pair (Psi_r, psi_r) with Psi_r(phi_r(x,x1), phi_r(x,x2)) = psi_r(x1-x2).
struct PsiPair {
    long r;
    std::map<ExpVec, Cyc> Psi;   // Laurent polynomial in (z1, z2)
    std::vector<Cyc> psi;        // power series coefficients of psi(z)
};

PsiPair psi_pair(long r, int order);
std::vector<IdentityRecord> verify_psi_pair(long r, int order);

}  // namespace vaforge
