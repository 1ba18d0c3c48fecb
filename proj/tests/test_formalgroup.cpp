#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vaforge/formalgroup.hpp"

using namespace vaforge;

namespace {
const VarId X("x"), X1("x1"), X2("x2"), Z("z");

bool all_pass(const std::vector<IdentityRecord>& recs) {
    bool ok = !recs.empty();
    for (auto& r : recs) {
        if (!r.passed) {
            MESSAGE("failed: ", r.name, " ", r.error ? *r.error : "");
            if (r.counterexample)
                MESSAGE("  at ", r.counterexample->location, ": ", r.counterexample->lhs,
                        " != ", r.counterexample->rhs);
            ok = false;
        }
    }
    return ok;
}
}  // namespace

TEST_CASE("phi closed forms for small r") {
    Associate a_add(-1, {Rat(1)}, 1);
    Series e = a_add.phi(X, Z, 6);
    CHECK(e.coeff({1, 0}) == Cyc(1));
    CHECK(e.coeff({0, 1}) == Cyc(1));
    CHECK(e.terms().size() == 2);

    Associate a_mul(0, {Rat(1)}, 1);
    Series em = a_mul.phi(X, Z, 6);
    for (int k = 0; k <= 6; ++k) CHECK(em.coeff({1, k}) == Cyc(Rat(1) / factorial(k)));

    Associate a1(1, {Rat(1)}, 1);
    Series e1 = a1.phi(X, Z, 4);
    for (int k = 0; k <= 4; ++k) CHECK(e1.coeff({1 + k, k}) == Cyc(1));
}

TEST_CASE("associate axioms for the default regimes") {
    for (long r : {-1L, 0L, 1L, 2L}) {
        Associate a(r, {Rat(1)}, 1);
        CHECK(all_pass(verify_associate_axioms(a, 6)));
    }
}

TEST_CASE("associate axioms for non-monomial p and periodic p") {
    Associate a(0, {Rat(1), Rat(1)}, 1);  // p = x(1+x)
    CHECK(all_pass(verify_associate_axioms(a, 5)));
    Associate b(0, {Rat(1), Rat(-2)}, 2);  // p = x(1-2x^2), period 2
    CHECK(all_pass(verify_associate_axioms(b, 4)));
}

TEST_CASE("delta kernel z=0 slice is the plain pole expansion") {
    Associate a(0, {Rat(1)}, 1);
    Series d = delta_c_expand(Cyc(2), a, {X1, X2}, Z, {5, 5}, 4);
    Series slice = d.slice(Z, 0);
    FactoredRational base = a.p_factored(X1);
    base *= FactoredRational::linear_power(X1, X2, Cyc(2), -1);
    Series direct = base.expand({X1, X2}, {5, 5});
    auto rec = check_series_equal("z0", "t", slice, direct, {{X1, {-5, 5}}, {X2, {-5, 5}}});
    CHECK(rec.passed);
}

TEST_CASE("delta lemma for representative c and r") {
    for (long r : {-1L, 0L, 1L}) {
        Associate a(r, {Rat(1)}, 1);
        CHECK(all_pass(verify_delta_lemma(Cyc(1), a, 4)));
        CHECK(all_pass(verify_delta_lemma(Cyc(-1), a, 4)));
    }
}

TEST_CASE("delta lemma catches corrupted kernels") {
    Associate a(0, {Rat(1)}, 1);
    // negative control: a wrong kernel must produce a located counterexample
    Series lhs = delta_c_expand(Cyc(1), a, {X1, X2}, Z, {3, 3}, 3) -
                 delta_c_expand(Cyc(1), a, {X2, X1}, Z, {3, 3}, 3);
    Series rhs = (Series::monomial(X1, 1) * delta_series(Cyc(1), X1, X2, 9, 9))
                     .derivation_exp({{1, Cyc(1)}}, X2, Z, 3)
                     .scaled(Cyc(2));  // corrupted by a factor 2
    auto rec = check_series_equal("corrupt", "t", lhs, rhs,
                                  {{X1, {-3, 3}}, {X2, {-3, 3}}, {Z, {0, 3}}});
    CHECK(!rec.passed);
    CHECK(rec.counterexample.has_value());
}

TEST_CASE("delta derivative identities") {
    for (long r : {0L, 1L}) {
        Associate a(r, {Rat(1)}, 1);
        CHECK(all_pass(verify_delta_derivatives(a, 3, 4)));
    }
}

TEST_CASE("delta product lemma") {
    Associate a(0, {Rat(1)}, 1);
    CHECK(all_pass(verify_delta_product_lemma({Cyc(1)}, a, 3)));
    CHECK(all_pass(verify_delta_product_lemma({Cyc(1), Cyc(-1)}, a, 3)));
    CHECK(all_pass(verify_delta_product_lemma({Cyc(2)}, a, 3)));
}

TEST_CASE("psi pairs") {
    for (long r : {-1L, 0L, 1L, 2L}) CHECK(all_pass(verify_psi_pair(r, 5)));
}
