#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torlab/errors.hpp"
#include "torlab/factor.hpp"

using namespace torlab;

namespace {

// Independent irreducibility oracle for quartics: brute force over integer
// factors of degree <= 2 with coefficients bounded by B.
bool has_low_degree_factor(const IntPoly& p, long B) {
    for (long a = -B; a <= B; ++a)
        for (long b = -B; b <= B; ++b) {
            IntPoly lin{a, b};
            IntPoly q;
            if (lin.degree() == 1 && IntPoly::try_divide_exact(p, lin, q)) return true;
            for (long c = -B; c <= B; ++c) {
                IntPoly quad{a, b, c};
                if (quad.degree() == 2 && IntPoly::try_divide_exact(p, quad, q)) return true;
            }
        }
    return false;
}

} // namespace

TEST_CASE("x^2 - 1 splits into linears") {
    auto f = factor_squarefree_rational(IntPoly{-1, 0, 1});
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == IntPoly{-1, 1});
    CHECK(f.factors[1].first == IntPoly{1, 1});
    CHECK(f.factors[0].second == 1);
    CHECK(f.reassemble() == IntPoly{-1, 0, 1});
}

TEST_CASE("(x-1)^3 keeps multiplicity") {
    IntPoly p = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{-1, 1};
    auto f = factor_squarefree_rational(p);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == IntPoly{-1, 1});
    CHECK(f.factors[0].second == 3);
    CHECK(f.reassemble() == p);
}

TEST_CASE("x^4 + 1 is irreducible") {
    IntPoly p{1, 0, 0, 0, 1};
    // oracle first: no integer factor of degree <= 2 with small coefficients
    CHECK_FALSE(has_low_degree_factor(p, 6));
    auto f = factor_squarefree_rational(p);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == p);
    CHECK(f.factors[0].second == 1);
    CHECK(is_irreducible(p));
}

TEST_CASE("content, sign, mixed multiplicities") {
    // -6 * (x-1)^2 * (x^2+1) * (2x+3)
    IntPoly p = IntPoly::constant(-6) * IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{1, 0, 1} * IntPoly{3, 2};
    auto f = factor_squarefree_rational(p);
    CHECK(f.content == 6);
    CHECK(f.sign == -1);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.reassemble() == p);
}

TEST_CASE("cyclotomic products recover factors") {
    // x^12 - 1 = prod of Phi_d over d | 12
    IntPoly p = IntPoly::xm_minus_one(12);
    auto f = factor_squarefree_rational(p);
    CHECK(f.factors.size() == 6);
    CHECK(f.reassemble() == p);
    for (const auto& [g, m] : f.factors) CHECK(m == 1);
}

TEST_CASE("random products reassemble exactly") {
    std::mt19937_64 rng(4242);
    std::vector<IntPoly> pool = {
        IntPoly{-1, 1}, IntPoly{1, 1},  IntPoly{3, 2},    IntPoly{1, 0, 1},
        IntPoly{1, -1, 1}, IntPoly{-2, 0, 1}, IntPoly{1, 1, 0, 1},
    };
    for (int trial = 0; trial < 20; ++trial) {
        IntPoly p = IntPoly::constant(1 + static_cast<long>(rng() % 5));
        int pieces = 1 + rng() % 3;
        for (int i = 0; i < pieces; ++i) {
            const IntPoly& g = pool[rng() % pool.size()];
            unsigned mult = 1 + rng() % 2;
            for (unsigned k = 0; k < mult; ++k) p = p * g;
        }
        if (rng() % 2) p = -p;
        auto f = factor_squarefree_rational(p);
        CHECK(f.reassemble() == p);
        // every factor irreducible: a second factorization refuses to split it
        for (const auto& [g, m] : f.factors) CHECK(is_irreducible(g));
    }
}

TEST_CASE("degree cap raises capability error naming the cap") {
    IntPoly p = IntPoly::monomial(25) + IntPoly::constant(1);
    CHECK_THROWS_AS(factor_squarefree_rational(p), capability_error);
    try {
        factor_squarefree_rational(p);
    } catch (const capability_error& e) {
        CHECK(std::string(e.what()).find("24") != std::string::npos);
    }
    // a custom cap permits it
    auto f = factor_squarefree_rational(p, 32);
    CHECK(f.reassemble() == p);
}

TEST_CASE("zero polynomial rejected") {
    CHECK_THROWS_AS(factor_squarefree_rational(IntPoly()), std::invalid_argument);
}
