#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torlab/cyclotomic.hpp"
#include "torlab/numtheory.hpp"

using namespace torlab;

TEST_CASE("cyc_reduce examples") {
    // zeta_4^2 = -1
    CHECK(cyc_reduce(4, IntPoly::monomial(2), 1) == CycElement::from_int(-1));
    // zeta_6^3 = -1
    CHECK(cyc_reduce(6, IntPoly::monomial(3), 1) == CycElement::from_int(-1));
    // zeta_m^m = 1 for a spread of m
    for (unsigned m : {1u, 2u, 5u, 12u, 30u, 61u})
        CHECK(cyc_reduce(m, IntPoly::monomial(m), 1) == CycElement::one());
}

TEST_CASE("canonical form and equality across conductors") {
    // 1 - zeta_6 = zeta_6^{-1}
    CycElement a = CycElement::one() - CycElement::zeta(6);
    CHECK(a == CycElement::zeta(6, -1));
    // zeta_6 = -zeta_3^2
    CHECK(CycElement::zeta(6) == -CycElement::zeta(3, 2));
    // rational embedded at different conductors
    CHECK(CycElement::from_rational(mpq_class(3, 2), 4) == CycElement::from_rational(mpq_class(3, 2), 6));
}

TEST_CASE("field arithmetic at random elements") {
    std::mt19937_64 rng(12345);
    auto random_elem = [&](unsigned m) {
        unsigned d = static_cast<unsigned>(euler_phi(m));
        std::vector<mpz_class> cs(d);
        for (auto& c : cs) c = static_cast<long>(rng() % 11) - 5;
        return CycElement(m, IntPoly(std::move(cs)), 1 + static_cast<long>(rng() % 4));
    };
    for (unsigned m : {1u, 3u, 8u, 12u, 20u, 36u, 45u, 60u}) {
        for (int trial = 0; trial < 8; ++trial) {
            CycElement a = random_elem(m), b = random_elem(m);
            if (a.is_zero() || b.is_zero()) continue;
            CHECK((a * b) * a.inverse() == b);
            CHECK(a * a.inverse() == CycElement::one(m));
            CHECK((a + b) - b == a);
            CHECK(a.pow(3) == a * a * a);
            CHECK(a.pow(-2) == (a * a).inverse());
        }
    }
}

TEST_CASE("galois action") {
    CycElement z = CycElement::zeta(5);
    CHECK(z.galois(2) == CycElement::zeta(5, 2));
    CHECK(z.conjugates().size() == 4);
    // sigma_a is a field homomorphism
    CycElement a = CycElement::zeta(12) + CycElement::from_int(2);
    CycElement b = CycElement::zeta(12, 5) - CycElement::from_int(1);
    CHECK((a * b).galois(7) == a.galois(7) * b.galois(7));
    CHECK((a + b).galois(7) == a.galois(7) + b.galois(7));
}

TEST_CASE("embedding") {
    auto z = CycElement::zeta(6).embed();
    CHECK(std::abs(z - std::complex<double>(0.5, std::sqrt(3.0) / 2.0)) < 1e-14);
    auto r = CycElement::from_rational(mpq_class(-7, 3)).embed();
    CHECK(std::abs(r - std::complex<double>(-7.0 / 3.0, 0.0)) < 1e-14);
}

TEST_CASE("roots of unity detection") {
    CHECK(CycElement::zeta(12, 5).root_of_unity_order() == 12u);
    CHECK(CycElement::zeta(12, 4).root_of_unity_order() == 3u);
    CHECK(CycElement::from_int(-1).root_of_unity_order() == 2u);
    CHECK(CycElement::from_int(1).root_of_unity_order() == 1u);
    CHECK_FALSE(CycElement::from_int(2).is_root_of_unity());
    CHECK_FALSE((CycElement::zeta(5) + CycElement::one()).is_root_of_unity());
    // 1 - zeta_6 is a 6th root of unity (equals zeta_6^{-1})
    CHECK((CycElement::one() - CycElement::zeta(6)).root_of_unity_order() == 6u);
}

TEST_CASE("characteristic and minimal polynomials") {
    // char poly of zeta_m over the full group is Phi_m
    for (unsigned m : {4u, 6u, 10u, 12u}) CHECK(CycElement::zeta(m).char_poly() == cyclotomic_poly(m));
    // 1 - zeta_6: direct expansion gives x^2 - x + 1
    CycElement a = CycElement::one() - CycElement::zeta(6);
    CHECK(a.char_poly() == IntPoly{1, -1, 1});
    CHECK(a.min_poly() == IntPoly{1, -1, 1});
    // rational 3/2 at conductor 6: char poly (2x-3)^2 primitive, min poly 2x-3
    CycElement r = CycElement::from_rational(mpq_class(3, 2), 6);
    CHECK(r.min_poly() == IntPoly{-3, 2});
    // zeta_4 embedded in Q(zeta_12)
    CycElement i12 = CycElement::zeta(12, 3);
    CHECK(i12.min_poly() == IntPoly{1, 0, 1});
}
