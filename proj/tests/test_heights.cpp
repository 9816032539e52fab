#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torlab/heights.hpp"
#include "torlab/numtheory.hpp"

using namespace torlab;

TEST_CASE("mahler measure oracles") {
    CHECK(mahler_measure(IntPoly{-2, 1}) == doctest::Approx(2.0).epsilon(1e-12));
    // x^2 - x - 1: only the golden ratio lies outside the unit circle
    double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(mahler_measure(IntPoly{-1, -1, 1}) == doctest::Approx(golden).epsilon(1e-12));
    // Kronecker: cyclotomic products have measure exactly 1
    CHECK(mahler_measure(cyclotomic_poly(12)) == 1.0);
    for (unsigned m = 1; m <= 100; ++m) CHECK(mahler_measure(cyclotomic_poly(m)) == 1.0);
    // multiplicativity: M(2x-3) = 3, squared factor
    IntPoly p = IntPoly{-3, 2} * IntPoly{-3, 2};
    CHECK(mahler_measure(p) == doctest::Approx(9.0).epsilon(1e-10));
    // Lehmer's polynomial: smallest known Salem measure 1.17628...
    IntPoly lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
    CHECK(mahler_measure(lehmer) == doctest::Approx(1.176280818259917).epsilon(1e-9));
}

TEST_CASE("weil height examples") {
    CHECK(weil_height(algebraic_from_rational(mpq_class(1))) == 0.0);
    CHECK(weil_height(algebraic_from_rational(mpq_class(3, 2))) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-12));
    // golden ratio
    auto roots = algebraic_roots_of(IntPoly{-1, -1, 1});
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots)
        CHECK(weil_height(r) == doctest::Approx(0.2406059125909866).epsilon(1e-9));
}

TEST_CASE("cyclotomic heights") {
    CHECK(weil_height_cyc(CycElement::zeta(6)) == 0.0);
    CHECK(weil_height_cyc(CycElement::from_int(2)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // 1 - zeta_6 equals zeta_6^{-1}: height 0 (char poly is Phi_6 itself)
    CycElement a = CycElement::one() - CycElement::zeta(6);
    CHECK(a.char_poly() == IntPoly{1, -1, 1});
    CHECK(weil_height_cyc(a) == 0.0);
    // 1 + zeta_4: char poly x^2 - 2x + 2, M = 2, h = log(2)/2
    CycElement b = CycElement::one() + CycElement::zeta(4);
    CHECK(b.min_poly() == IntPoly{2, -2, 1});
    CHECK(weil_height_cyc(b) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-10));
    // rational embedded at conductor 12 agrees with the rational path
    CycElement r = CycElement::from_rational(mpq_class(-7, 3), 12);
    CHECK(weil_height_cyc(r) == doctest::Approx(std::log(7.0)).epsilon(1e-10));
}

TEST_CASE("canonical height examples") {
    TorusPoint ones(std::vector<CycElement>{CycElement::one(), CycElement::one(), CycElement::one()});
    CHECK(canonical_height(ones) == 0.0);
    TorusPoint p = TorusPoint::from_rationals({mpq_class(2), mpq_class(1, 2)});
    CHECK(canonical_height(p) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    TorusPoint torsion(std::vector<CycElement>{CycElement::zeta(5), CycElement::zeta(5, 2)});
    CHECK(canonical_height(torsion) == 0.0);
    CHECK(torsion.is_torsion());
}

TEST_CASE("height properties on corpus elements") {
    std::mt19937_64 rng(31337);
    std::vector<CycElement> corpus;
    for (int i = 0; i < 40; ++i) {
        long num = static_cast<long>(rng() % 9) - 4;
        if (num == 0) num = 5;
        long den = 1 + static_cast<long>(rng() % 4);
        unsigned order = 1 + static_cast<unsigned>(rng() % 12);
        corpus.push_back(CycElement::from_rational(mpq_class(num, den)) *
                         CycElement::zeta(order, 1 + static_cast<long>(rng() % order)));
    }
    for (const auto& a : corpus) {
        double h = weil_height_cyc(a);
        CHECK(h >= 0.0);
        // h(1/a) = h(a)
        CHECK(weil_height_cyc(a.inverse()) == doctest::Approx(h).epsilon(1e-9));
        // h(a^k) = |k| h(a)
        for (long k = -3; k <= 3; ++k)
            CHECK(weil_height_cyc(a.pow(k == 0 ? 1 : k)) ==
                  doctest::Approx(std::abs(static_cast<double>(k == 0 ? 1 : k)) * h).epsilon(1e-9));
    }
}

TEST_CASE("kronecker: height zero iff root of unity") {
    for (unsigned m = 1; m <= 40; ++m) {
        CHECK(weil_height_cyc(CycElement::zeta(m)) == 0.0);
        CHECK(mahler_measure(cyclotomic_poly(m)) == 1.0);
    }
    CHECK(weil_height_cyc(CycElement::zeta(7) + CycElement::from_int(2)) > 0.01);
}

TEST_CASE("subadditivity of canonical height under products") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        auto rnd = [&]() {
            long n = static_cast<long>(rng() % 7) - 3;
            if (n == 0) n = 2;
            return CycElement::from_rational(mpq_class(n, 1 + static_cast<long>(rng() % 3))) *
                   CycElement::zeta(1 + static_cast<unsigned>(rng() % 6));
        };
        TorusPoint p(std::vector<CycElement>{rnd(), rnd()});
        TorusPoint q(std::vector<CycElement>{rnd(), rnd()});
        CHECK(canonical_height(p.mul(q)) <= canonical_height(p) + canonical_height(q) + 1e-9);
    }
}

TEST_CASE("weil_height_cyc agrees with weil_height") {
    // rationals
    for (long n : {2L, 3L, -5L, 7L}) {
        CHECK(weil_height_cyc(CycElement::from_int(n)) ==
              doctest::Approx(weil_height(algebraic_from_rational(mpq_class(n)))).epsilon(1e-9));
    }
    // quadratic cyclotomic value 1 + zeta_4 via its minimal polynomial
    CycElement b = CycElement::one() + CycElement::zeta(4);
    auto roots = algebraic_roots_of(b.min_poly());
    CHECK(weil_height_cyc(b) == doctest::Approx(weil_height(roots[0])).epsilon(1e-9));
}
