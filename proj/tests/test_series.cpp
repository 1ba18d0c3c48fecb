#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vaforge/series.hpp"

using namespace vaforge;

namespace {
const VarId X1("x1"), X2("x2"), X("x"), Z("z"), Y("y"), W("w");

Series geom_inv_x1_x2(int order) {
    // iota_{x1,x2} 1/(x1-x2) = sum_{n>=0} x1^{-n-1} x2^n
    return linear_form_pow(X1, X2, Cyc(1), -1, X2, order);
}
}  // namespace

TEST_CASE("telescoping: (x1-x2) * iota(1/(x1-x2)) = 1") {
    Series pole = geom_inv_x1_x2(8);
    std::map<ExpVec, Cyc> t;
    t.emplace(ExpVec{1, 0}, Cyc(1));
    t.emplace(ExpVec{0, 1}, Cyc(-1));
    Series lin = Series::poly({X1, X2}, std::move(t));
    Series prod = lin * pole;
    Series one = Series::constant(Cyc(1)).with_vars({X1, X2});
    Series diff = prod - one;
    CHECK(diff.is_zero());
    CHECK(prod.covers({{X1, {-4, 0}}, {X2, {0, 4}}}));
}

TEST_CASE("add inverse and geometric inverse") {
    Series pole = geom_inv_x1_x2(6);
    CHECK((pole - pole).is_zero());
    // (1+x)(1-x+x^2-...) = 1
    std::map<ExpVec, Cyc> a;
    a.emplace(ExpVec{0}, Cyc(1));
    a.emplace(ExpVec{1}, Cyc(1));
    Series onepx = Series::poly({X}, std::move(a));
    Series inv = onepx.pow(-1, {X}, 10);
    Series prod = onepx * inv;
    CHECK((prod - Series::constant(Cyc(1)).with_vars({X})).is_zero());
    CHECK(prod.covers({{X, {0, 9}}}));
}

TEST_CASE("delta series substitution invariance") {
    // g(x1,x2) * delta_c = g(c x2, x2) * delta_c for monomial g, within window
    for (long cnum : {1L, 2L}) {
        Cyc c(cnum);
        Series d = delta_series(c, X1, X2, 6, 6);
        Series g = Series::monomial(X1, 2).with_vars({X1, X2});
        Series lhs = g * d;
        // g(c x2, x2) = c^2 x2^2
        Series rhs = d.shifted(X2, 2).scaled(c.pow(2));
        Series diff = lhs - rhs;
        CHECK(diff.is_zero());
        CHECK(diff.covers({{X1, {-3, 3}}, {X2, {-3, 3}}}));
    }
}

TEST_CASE("delta coefficients: c=2 gives 2^n") {
    Series d = delta_series(Cyc(2), X1, X2, 5, 5);
    CHECK(d.coeff({-4, 3}) == Cyc(8));
    CHECK(d.coeff({2, -3}) == Cyc(Rat(1, 8)));
    CHECK(d.coeff({0, 0}) == Cyc(0));
}

TEST_CASE("derivative and residue") {
    Series xn = Series::monomial(X, 5);
    CHECK(xn.derivative(X).coeff({4}) == Cyc(5));
    Series d = delta_series(Cyc(1), X1, X2, 5, 5);
    Series dd = d.derivative(X2);
    // pattern n * x1^{-n-1} x2^{n-1}
    CHECK(dd.coeff({-4, 2}) == Cyc(3));
    // Res_x sum a_n x^n -> a_{-1}
    std::map<ExpVec, Cyc> t;
    t.emplace(ExpVec{-1, 0}, Cyc(7));
    t.emplace(ExpVec{2, 1}, Cyc(3));
    Series f = Series::poly({X, Z}, std::move(t));
    Series r = f.residue(X);
    CHECK(r.coeff({0}) == Cyc(7));
    CHECK(r.terms().size() == 1);
}

TEST_CASE("residue of derivative vanishes") {
    Series d = delta_series(Cyc(1), X1, X2, 6, 6);
    Series f = d.derivative(X1);
    CHECK(f.residue(X1).is_zero());
}

TEST_CASE("residue picks delta substitution: Res_x1 delta * g(x1) = g(x2)") {
    Series d = delta_series(Cyc(1), X1, X2, 6, 6);
    Series g = Series::monomial(X1, 3);
    Series r = (d * g).residue(X1);
    CHECK(r.coeff({3}) == Cyc(1));
    CHECK(r.terms().size() == 1);
}

TEST_CASE("substitute identity") {
    Series d = delta_series(Cyc(1), X1, X2, 4, 4);
    Series idser = Series::monomial(X2, 1);
    Series s = d.substituted(X2, idser, {X2}, 12);
    CHECK((s - d).is_zero());
}

TEST_CASE("substituted_sum requires certified order") {
    Series f = Series::monomial(X, 1).truncated(X, 0, 4);
    CHECK_THROWS_AS(f.substituted_sum(X, Y, Z, 4, 4), CompositionError);
    Series g = f.substituted_sum(X, Y, Z, 2, 2);
    CHECK(g.coeff({1, 0}) == Cyc(1));
    CHECK(g.coeff({0, 1}) == Cyc(1));
}

TEST_CASE("derivation exp: e^{z d/dx} x = x + z") {
    Series f = Series::monomial(X, 1);
    Series out = f.derivation_exp({{0, Cyc(1)}}, X, Z, 5);
    CHECK(out.coeff({1, 0}) == Cyc(1));
    CHECK(out.coeff({0, 1}) == Cyc(1));
    CHECK(out.terms().size() == 2);
}

TEST_CASE("derivation exp: e^{z x d/dx} x = x e^z") {
    Series f = Series::monomial(X, 1);
    Series out = f.derivation_exp({{1, Cyc(1)}}, X, Z, 6);
    for (int k = 0; k <= 6; ++k) CHECK(out.coeff({1, k}) == Cyc(Rat(1) / factorial(k)));
}

TEST_CASE("derivation exp: p=x^2 cross-checks x(1-zx)^{-1}") {
    Series f = Series::monomial(X, 1);
    Series out = f.derivation_exp({{2, Cyc(1)}}, X, Z, 3);
    for (int k = 0; k <= 3; ++k) CHECK(out.coeff({1 + k, k}) == Cyc(1));
}

TEST_CASE("one-parameter group law of derivation exp") {
    // apply with z then y equals substituting z := y+z
    std::map<int, Cyc> p{{2, Cyc(1)}, {0, Cyc(Rat(1, 2))}};
    Series f = Series::monomial(X, 1);
    Series once = f.derivation_exp(p, X, Z, 8);
    Series twice = once.derivation_exp(p, X, Y, 4).truncated(Z, 0, 4);
    Series both = once.substituted_sum(Z, Y, Z, 4, 4);
    Series diff = twice - both;
    CHECK(diff.is_zero());
    CHECK(diff.covers({{Y, {0, 4}}, {Z, {0, 4}}}));
}

TEST_CASE("double-untame multiplication is rejected") {
    Series d1 = delta_series(Cyc(1), X1, X2, 3, 3);
    CHECK_THROWS_AS(d1 * d1, std::logic_error);
}

TEST_CASE("scaled_var rescales coefficients exponentwise") {
    Series d = delta_series(Cyc(1), X1, X2, 4, 4);
    Series s = d.scaled_var(X2, Cyc(2));
    CHECK((s - delta_series(Cyc(2), X1, X2, 4, 4)).is_zero());
}
