#include "vaforge/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace vaforge {

namespace {

// Dense polynomial helpers over Rat, lowest degree first.
using Poly = std::vector<Rat>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

// Division with remainder by a monic divisor.
std::pair<Poly, Poly> poly_divmod(Poly num, const Poly& den) {
    Poly quot;
    if (den.empty() || den.back() != 1)
        throw std::logic_error("poly_divmod: divisor must be monic");
    if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rat(0));
    while (num.size() >= den.size()) {
        Rat lead = num.back();
        size_t shift = num.size() - den.size();
        quot[shift] = lead;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= lead * den[i];
        trim(num);
        if (num.size() >= den.size() && num.back() == 0) trim(num);
    }
    trim(quot);
    return {quot, num};
}

// Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g, g monic.
std::tuple<Poly, Poly, Poly> poly_xgcd(Poly a, Poly b) {
    Poly s0{Rat(1)}, s1{}, t0{}, t1{Rat(1)};
    while (!b.empty()) {
        Rat lead = b.back();
        Poly bm = b;
        for (auto& c : bm) c /= lead;
        auto [q, r] = poly_divmod(a, bm);
        for (auto& c : q) c /= lead;
        // a = q*b + r
        Poly s2 = s0, t2 = t0;
        Poly qs = poly_mul(q, s1), qt = poly_mul(q, t1);
        s2.resize(std::max(s2.size(), qs.size()), Rat(0));
        t2.resize(std::max(t2.size(), qt.size()), Rat(0));
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
        trim(s2);
        trim(t2);
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.empty()) throw std::domain_error("poly_xgcd of zero polynomials");
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
    for (auto& c : s0) c /= lead;
    for (auto& c : t0) c /= lead;
    return {a, s0, t0};
}

std::mutex g_cyclo_mutex;
std::map<long, Poly> g_cyclo_cache;

Poly cyclotomic_poly_impl(long M) {
    // x^M - 1 = prod_{d | M} Phi_d(x); divide out the proper divisors.
    Poly num(M + 1, Rat(0));
    num[0] = Rat(-1);
    num[M] = Rat(1);
    for (long d = 1; d < M; ++d) {
        if (M % d != 0) continue;
        auto it = g_cyclo_cache.find(d);
        Poly phi_d = (it != g_cyclo_cache.end()) ? it->second : cyclotomic_poly_impl(d);
        auto [q, r] = poly_divmod(num, phi_d);
        if (!r.empty()) throw std::logic_error("cyclotomic division not exact");
        num = std::move(q);
    }
    g_cyclo_cache.emplace(M, num);
    return num;
}

}  // namespace

const std::vector<Rat>& Cyc::cyclotomic_poly(long M) {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(M);
    if (it == g_cyclo_cache.end()) {
        cyclotomic_poly_impl(M);
        it = g_cyclo_cache.find(M);
    }
    return it->second;
}

long Cyc::totient(long M) {
    long result = M, n = M;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

Cyc::Cyc(long conductor, std::vector<Rat> coeffs)
    : m_conductor(conductor), m_coeffs(std::move(coeffs)) {
    reduce_conductor_if_trivial();
}

void Cyc::reduce_conductor_if_trivial() {
    // Keep rational values at conductor 1 so scalar-heavy paths stay cheap.
    if (m_conductor == 1) return;
    for (size_t i = 1; i < m_coeffs.size(); ++i)
        if (m_coeffs[i] != 0) return;
    Rat c0 = m_coeffs.empty() ? Rat(0) : m_coeffs[0];
    m_conductor = 1;
    m_coeffs.assign(1, c0);
}

Cyc Cyc::from_poly(long conductor, std::vector<Rat> poly) {
    const Poly& phi = cyclotomic_poly(conductor);
    trim(poly);
    if (poly.size() >= phi.size()) {
        auto [q, r] = poly_divmod(std::move(poly), phi);
        poly = std::move(r);
    }
    poly.resize(phi.size() - 1, Rat(0));
    return Cyc(conductor, std::move(poly));
}

Cyc Cyc::root_of_unity(long M, long k) {
    if (M < 1) throw std::domain_error("root_of_unity: conductor must be positive");
    k %= M;
    if (k < 0) k += M;
    Poly p(k + 1, Rat(0));
    p[k] = Rat(1);
    return from_poly(M, std::move(p));
}

bool Cyc::is_zero() const {
    for (const auto& c : m_coeffs)
        if (c != 0) return false;
    return true;
}

bool Cyc::is_rational() const {
    for (size_t i = 1; i < m_coeffs.size(); ++i)
        if (m_coeffs[i] != 0) return false;
    return true;
}

Rat Cyc::to_rational() const {
    if (!is_rational()) throw std::domain_error("Cyc::to_rational: value not rational: " + str());
    return m_coeffs.empty() ? Rat(0) : m_coeffs[0];
}

std::vector<Rat> Cyc::coeffs_at(long M) const {
    if (M == m_conductor) return m_coeffs;
    if (M % m_conductor != 0)
        throw std::domain_error("Cyc::coeffs_at: target conductor not a multiple");
    long step = M / m_conductor;  // zeta_m = zeta_M^step
    Poly p(static_cast<size_t>(step) * (m_coeffs.empty() ? 1 : m_coeffs.size()) + 1, Rat(0));
    for (size_t i = 0; i < m_coeffs.size(); ++i) p[i * step] = m_coeffs[i];
    const Poly& phi = cyclotomic_poly(M);
    trim(p);
    if (p.size() >= phi.size()) {
        auto [q, r] = poly_divmod(std::move(p), phi);
        p = std::move(r);
    }
    p.resize(phi.size() - 1, Rat(0));
    return p;
}

Cyc Cyc::embedded(long M) const { return Cyc(M, coeffs_at(M)); }

Cyc Cyc::operator-() const {
    Cyc out = *this;
    for (auto& c : out.m_coeffs) c = -c;
    return out;
}

Cyc operator+(const Cyc& a, const Cyc& b) {
    long M = std::lcm(a.m_conductor, b.m_conductor);
    auto va = a.coeffs_at(M), vb = b.coeffs_at(M);
    for (size_t i = 0; i < va.size(); ++i) va[i] += vb[i];
    return Cyc(M, std::move(va));
}

Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }

Cyc operator*(const Cyc& a, const Cyc& b) {
    if (a.m_conductor == 1 && b.m_conductor == 1)
        return Cyc(a.m_coeffs[0] * b.m_coeffs[0]);
    long M = std::lcm(a.m_conductor, b.m_conductor);
    return Cyc::from_poly(M, poly_mul(a.coeffs_at(M), b.coeffs_at(M)));
}

Cyc Cyc::inverse() const {
    if (is_zero()) throw std::domain_error("Cyc: division by zero");
    if (m_conductor == 1) return Cyc(Rat(1) / m_coeffs[0]);
    Poly a = m_coeffs;
    trim(a);
    auto [g, s, t] = poly_xgcd(a, cyclotomic_poly(m_conductor));
    if (g.size() != 1)
        throw std::logic_error("Cyc::inverse: gcd with cyclotomic polynomial not constant");
    return from_poly(m_conductor, std::move(s));
}

Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

Cyc Cyc::pow(long e) const {
    if (e == 0) return Cyc(1);
    Cyc base = e < 0 ? inverse() : *this;
    long n = e < 0 ? -e : e;
    Cyc acc(1);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

bool operator==(const Cyc& a, const Cyc& b) {
    if (a.m_conductor == b.m_conductor) return a.m_coeffs == b.m_coeffs;
    long M = std::lcm(a.m_conductor, b.m_conductor);
    return a.coeffs_at(M) == b.coeffs_at(M);
}

bool operator<(const Cyc& a, const Cyc& b) {
    if (a.m_conductor == b.m_conductor) return a.m_coeffs < b.m_coeffs;
    long M = std::lcm(a.m_conductor, b.m_conductor);
    return a.coeffs_at(M) < b.coeffs_at(M);
}

long Cyc::root_order(long bound) const {
    Cyc acc(1);
    for (long n = 1; n <= bound; ++n) {
        acc *= *this;
        if (acc == Cyc(1)) return n;
    }
    return 0;
}

std::string Cyc::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < m_coeffs.size(); ++i) {
        if (i) os << ", ";
        os << m_coeffs[i];
    }
    os << ")/Phi_" << m_conductor;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyc& c) { return os << c.str(); }

}  // namespace vaforge
