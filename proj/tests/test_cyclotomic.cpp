#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vaforge/cyclotomic.hpp"

#include <random>

using namespace vaforge;

TEST_CASE("roots of unity basics") {
    CHECK(Cyc::root_of_unity(2, 1) == Cyc(-1));
    CHECK(Cyc::root_of_unity(4, 2) == Cyc(-1));
    Cyc z3 = Cyc::root_of_unity(3, 1);
    CHECK(Cyc(1) + z3 + z3 * z3 == Cyc(0));
    CHECK(Cyc::root_of_unity(12, 0) == Cyc(1));
    CHECK(Cyc::root_of_unity(1, 5) == Cyc(1));
}

TEST_CASE("multiplicative order is M/gcd(M,k)") {
    for (long M : {1L, 2L, 3L, 4L, 6L, 8L, 12L}) {
        for (long k = 0; k < M; ++k) {
            Cyc z = Cyc::root_of_unity(M, k);
            long expected = M / std::gcd(M, k == 0 ? M : k);
            CHECK(z.root_order() == expected);
        }
    }
}

TEST_CASE("canonical form distinguishes conductors consistently") {
    Cyc z6 = Cyc::root_of_unity(6, 1);
    Cyc z3 = Cyc::root_of_unity(3, 1);
    CHECK(z6 * z6 == z3);
    CHECK(z6.pow(3) == Cyc(-1));
    // zeta_6 = -zeta_3^2
    CHECK(z6 == -(z3 * z3));
}

TEST_CASE("arithmetic examples") {
    Cyc i = Cyc::root_of_unity(4, 1);
    CHECK(i * i == Cyc(-1));
    CHECK(Cyc(1) / (Cyc(1) - Cyc::root_of_unity(2, 1)) == Cyc(Rat(1, 2)));
    // (1 - z3)(1 - z3^2) = 3, brute-force product mod Phi_3
    Cyc z3 = Cyc::root_of_unity(3, 1);
    CHECK((Cyc(1) - z3) * (Cyc(1) - z3.pow(2)) == Cyc(3));
}

namespace {
Cyc random_cyc(std::mt19937& rng, long M) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<long> k(0, M - 1);
    Cyc acc(0);
    for (int t = 0; t < 3; ++t)
        acc += Cyc(Rat(num(rng), den(rng))) * Cyc::root_of_unity(M, k(rng));
    return acc;
}
}  // namespace

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(20240811);
    for (long M : {1L, 2L, 3L, 4L, 6L, 8L, 12L}) {
        for (int trial = 0; trial < 20; ++trial) {
            Cyc a = random_cyc(rng, M), b = random_cyc(rng, M), c = random_cyc(rng, M);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == Cyc(0));
            if (!b.is_zero()) {
                CHECK((a / b) * b == a);
                CHECK(b * b.inverse() == Cyc(1));
            }
        }
    }
}

TEST_CASE("conductor embedding is a ring homomorphism") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        Cyc a = random_cyc(rng, 6), b = random_cyc(rng, 6);
        CHECK((a * b).embedded(12) == a.embedded(12) * b.embedded(12));
        CHECK((a + b).embedded(12) == a.embedded(12) + b.embedded(12));
    }
}

TEST_CASE("division by zero is a domain error") {
    CHECK_THROWS_AS(Cyc(1) / Cyc(0), std::domain_error);
}

TEST_CASE("report serialization shape") {
    Cyc z4 = Cyc::root_of_unity(4, 1);
    CHECK(z4.str() == "(0, 1)/Phi_4");
    CHECK(Cyc(Rat(-3, 2)).str() == "(-3/2)/Phi_1");
}
