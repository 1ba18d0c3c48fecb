#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vaforge/rationalfn.hpp"

using namespace vaforge;

namespace {
const VarId X1("x1"), X2("x2"), Z("z");
}

TEST_CASE("geometric expansions of 1/(x1-x2) in both regions") {
    FactoredRational f = FactoredRational::linear_power(X1, X2, Cyc(1), -1);
    Series a = f.expand({X1, X2}, {6, 6});
    // sum_{n>=0} x1^{-n-1} x2^n
    for (int n = 0; n <= 6; ++n) CHECK(a.coeff({-n - 1, n}) == Cyc(1));
    CHECK(a.coeff({0, 0}) == Cyc(0));
    Series b = f.expand({X2, X1}, {6, 6});
    for (int n = 0; n <= 6; ++n) CHECK(b.coeff({n, -n - 1}) == Cyc(-1));
    // difference is the delta function
    Series d = a - b;
    Series expected = delta_series(Cyc(1), X1, X2, 6, 6);
    CHECK((d - expected).is_zero());
    CHECK((d - expected).covers({{X1, {-6, 6}}, {X2, {-6, 6}}}));
}

TEST_CASE("iota is a ring homomorphism on products") {
    FactoredRational f = FactoredRational::linear_power(X1, X2, Cyc(1), -2);
    std::map<ExpVec, Cyc> nt;
    nt.emplace(ExpVec{1, 2}, Cyc(3));
    nt.emplace(ExpVec{0, 0}, Cyc(Rat(1, 2)));
    FactoredRational g = FactoredRational::from_terms({X1, X2}, std::move(nt));
    g *= FactoredRational::unit_power(X2, {{0, Cyc(1)}, {1, Cyc(-2)}}, -1);
    Series prod_expanded = (f * g).expand({X1, X2}, {5, 5});
    // one untame iota image times one tame factor through the series kernel
    Series fa = f.expand({X1, X2}, {9, 9});
    Series gb = g.expand({X1, X2}, {9, 9});
    Series prod_series = fa * gb;
    Series diff = prod_expanded - prod_series;
    CHECK(diff.is_zero());
    CHECK(diff.covers({{X1, {-2, 2}}, {X2, {-2, 2}}}));
}

TEST_CASE("unit factor inversion: 1/(1+x2)") {
    FactoredRational f =
        FactoredRational::unit_power(X2, {{0, Cyc(1)}, {1, Cyc(1)}}, -1);
    Series s = f.expand({X1, X2}, {3, 6});
    for (int n = 0; n <= 6; ++n) CHECK(s.coeff({0, n}) == Cyc((n % 2) ? -1 : 1));
}

TEST_CASE("derivative of factored rational matches series derivative") {
    FactoredRational f = FactoredRational::linear_power(X1, X2, Cyc(2), -1);
    Series direct = f.expand({X1, X2}, {8, 8}).derivative(X2);
    RationalSum df = f.derivative(X2);
    REQUIRE(df.size() == 1);
    Series sym = expand_sum(df, {X1, X2}, {8, 8});
    Series diff = direct - sym;
    CHECK(diff.is_zero());
    CHECK(diff.covers({{X1, {-4, 4}}, {X2, {-4, 4}}}));
}

TEST_CASE("(p d/dx2)^k symbolic route matches series route") {
    // p(x2) = x2^2, f = p(x1)/(x1 - x2) with p(x1) = x1^2
    std::map<int, Cyc> p{{2, Cyc(1)}};
    FactoredRational base = FactoredRational::monomial(X1, 2);
    base *= FactoredRational::linear_power(X1, X2, Cyc(1), -1);
    RationalSum fk{base};
    Series route_series = base.expand({X1, X2}, {10, 10});
    for (int k = 1; k <= 3; ++k) {
        fk = apply_p_derivation(fk, p, X2);
        Series pser = Series::monomial(X2, 2);
        route_series = pser * route_series.derivative(X2);
        Series sym = expand_sum(fk, {X1, X2}, {10, 10});
        Series diff = route_series - sym;
        CHECK(diff.is_zero());
        CHECK(diff.covers({{X1, {-2, 2}}, {X2, {-2, 2}}}));
    }
}

TEST_CASE("region error when factor variables missing from ordering") {
    FactoredRational f = FactoredRational::linear_power(X1, X2, Cyc(1), -1);
    CHECK_THROWS_AS(f.expand({X1, Z}, {4, 4}), RegionError);
}

TEST_CASE("three-factor product expansion stays exact") {
    // 1/((x1-x2)(x1+x2)) expanded x1-large; annihilation by (x1^2 - x2^2)
    FactoredRational f = FactoredRational::linear_power(X1, X2, Cyc(1), -1) *
                         FactoredRational::linear_power(X1, X2, Cyc(-1), -1);
    Series s = f.expand({X1, X2}, {6, 6});
    std::map<ExpVec, Cyc> qt;
    qt.emplace(ExpVec{2, 0}, Cyc(1));
    qt.emplace(ExpVec{0, 2}, Cyc(-1));
    Series q = Series::poly({X1, X2}, std::move(qt));
    Series prod = q * s;
    Series diff = prod - Series::constant(Cyc(1)).with_vars({X1, X2});
    CHECK(diff.is_zero());
    CHECK(diff.covers({{X1, {-3, 3}}, {X2, {-3, 3}}}));
}
