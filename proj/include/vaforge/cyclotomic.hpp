#pragma once

#include "vaforge/rational.hpp"

#include <iosfwd>
#include <vector>

namespace vaforge {

/// Element of the cyclotomic field Q(zeta_M): a polynomial in zeta_M with
/// rational coefficients, kept reduced modulo the M-th cyclotomic polynomial.
/// The representation is canonical, so equality is coefficientwise (after
/// embedding into a common conductor).
///
/// Arithmetic between different conductors embeds both operands into
/// Q(zeta_lcm) first. Values are immutable in spirit: every operation
/// returns a fresh reduced value.
class Cyc {
  public:
    Cyc() : m_conductor(1), m_coeffs{Rat(0)} {}
    /*implicit*/ Cyc(const Rat& r) : m_conductor(1), m_coeffs{r} {}
    /*implicit*/ Cyc(long n) : m_conductor(1), m_coeffs{Rat(n)} {}
    /*implicit*/ Cyc(int n) : m_conductor(1), m_coeffs{Rat(n)} {}

    /// zeta_M^k in canonical form.
    static Cyc root_of_unity(long M, long k);

    long conductor() const { return m_conductor; }
    const std::vector<Rat>& coeffs() const { return m_coeffs; }

    bool is_zero() const;
    bool is_rational() const;
    /// Value as a rational; throws if the element is not rational.
    Rat to_rational() const;

    /// Image of this element in Q(zeta_M); M must be a multiple of the
    /// current conductor.
    Cyc embedded(long M) const;

    Cyc operator-() const;
    friend Cyc operator+(const Cyc& a, const Cyc& b);
    friend Cyc operator-(const Cyc& a, const Cyc& b);
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    /// Field division; throws std::domain_error on zero divisor.
    friend Cyc operator/(const Cyc& a, const Cyc& b);
    Cyc inverse() const;
    Cyc pow(long e) const;

    Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
    Cyc& operator-=(const Cyc& b) { return *this = *this - b; }
    Cyc& operator*=(const Cyc& b) { return *this = *this * b; }

    friend bool operator==(const Cyc& a, const Cyc& b);
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }
    /// Total order (conductor-lex); used only to key deterministic containers.
    friend bool operator<(const Cyc& a, const Cyc& b);

    /// Multiplicative order when the element is a root of unity, 0 otherwise.
    long root_order(long bound = 256) const;

    /// Report form "(c_0, c_1, ...)/Phi_M".
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Cyc& c);

    /// Coefficients of the M-th cyclotomic polynomial (degree phi(M), monic).
    static const std::vector<Rat>& cyclotomic_poly(long M);
    static long totient(long M);

  private:
    Cyc(long conductor, std::vector<Rat> coeffs);
    static Cyc from_poly(long conductor, std::vector<Rat> poly);
    void reduce_conductor_if_trivial();
    /// Reduced coefficients of this value viewed in Q(zeta_M).
    std::vector<Rat> coeffs_at(long M) const;

    long m_conductor;
    std::vector<Rat> m_coeffs;  // length phi(conductor)
};

inline Cyc operator*(const Rat& a, const Cyc& b) { return Cyc(a) * b; }

}  // namespace vaforge
