#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torlab/int_poly.hpp"
#include "torlab/numtheory.hpp"

using namespace torlab;

TEST_CASE("basic arithmetic and trimming") {
    IntPoly a{1, 2, 3};      // 3x^2 + 2x + 1
    IntPoly b{-1, 0, 0, 1};  // x^3 - 1
    CHECK(a.degree() == 2);
    CHECK((a + (-a)).is_zero());
    CHECK((a * b).degree() == 5);
    CHECK((a - a).degree() == -1);
    IntPoly trimmed({1, 1, 0, 0});
    CHECK(trimmed.degree() == 1);
}

TEST_CASE("evaluation") {
    IntPoly p{-1, 0, 1}; // x^2 - 1
    CHECK(p.eval(mpz_class(3)) == 8);
    CHECK(p.eval_homogeneous(3, 2) == 5); // (9/4 - 1) * 4
    auto z = p.eval(std::complex<double>(0.0, 1.0));
    CHECK(std::abs(z - std::complex<double>(-2.0, 0.0)) < 1e-15);
}

TEST_CASE("content and primitive part") {
    IntPoly p{2, 4, 6};
    CHECK(p.content() == 2);
    CHECK(p.primitive_part() == IntPoly{1, 2, 3});
    IntPoly neg{-2, -4};
    CHECK(neg.content() == 2);
    CHECK(neg.primitive_part() == IntPoly{-1, -2}); // sign preserved
}

TEST_CASE("divisions") {
    IntPoly a{-1, 0, 0, 0, 0, 0, 1}; // x^6 - 1
    IntPoly b{-1, 1};                // x - 1
    IntPoly q, r;
    IntPoly::divmod_monic(a, b, q, r);
    CHECK(r.is_zero());
    CHECK(q * b == a);

    IntPoly c = IntPoly{3, 1} * IntPoly{5, 2};
    CHECK(IntPoly::divexact(c, IntPoly{3, 1}) == IntPoly{5, 2});
    IntPoly qq;
    CHECK_FALSE(IntPoly::try_divide_exact(IntPoly{1, 1}, IntPoly{0, 2}, qq));
}

TEST_CASE("gcd") {
    IntPoly a = IntPoly{-1, 1} * IntPoly{1, 1} * IntPoly{2, 3};
    IntPoly b = IntPoly{-1, 1} * IntPoly{7, 5};
    CHECK(IntPoly::gcd(a, b) == IntPoly{-1, 1});
    CHECK(IntPoly::gcd(a, IntPoly()) == (a.primitive_part().lead() < 0 ? -a.primitive_part() : a.primitive_part()));
}

TEST_CASE("squarefree decomposition") {
    IntPoly p = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{1, 1};
    auto sq = p.squarefree_decomposition();
    REQUIRE(sq.size() == 2);
    CHECK(sq[0].first == IntPoly{1, 1});
    CHECK(sq[0].second == 1);
    CHECK(sq[1].first == IntPoly{-1, 1});
    CHECK(sq[1].second == 3);
    CHECK(p.radical() == IntPoly{-1, 0, 1});
}

TEST_CASE("cyclotomic polynomials match definition") {
    CHECK(cyclotomic_poly(1) == IntPoly{-1, 1});
    CHECK(cyclotomic_poly(4) == IntPoly{1, 0, 1});       // x^2 + 1
    CHECK(cyclotomic_poly(6) == IntPoly{1, -1, 1});      // x^2 - x + 1
    CHECK(cyclotomic_poly(12) == IntPoly{1, 0, -1, 0, 1});

    // Degree phi(m) and the product identity, all m <= 200.
    for (unsigned m = 1; m <= 200; ++m) {
        CHECK(cyclotomic_poly(m).degree() == static_cast<int>(euler_phi(m)));
        IntPoly prod = IntPoly::constant(1);
        for (uint64_t d : divisors(m)) prod = prod * cyclotomic_poly(static_cast<unsigned>(d));
        CHECK(prod == IntPoly::xm_minus_one(m));
    }
}

TEST_CASE("inflate and valuation") {
    IntPoly p{1, 1};
    CHECK(p.inflate(3) == IntPoly{1, 0, 0, 1});
    IntPoly q{0, 0, 5, 1};
    CHECK(q.valuation_at_zero() == 2);
    CHECK(q.shift_down(2) == IntPoly{5, 1});
}

TEST_CASE("to_string") {
    CHECK(IntPoly{1, -1, 1}.to_string() == "x^2 - x + 1");
    CHECK(IntPoly().to_string() == "0");
    CHECK(IntPoly{-2}.to_string() == "-2");
}
