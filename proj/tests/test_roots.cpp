#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torlab/roots.hpp"

using namespace torlab;

namespace {

bool contains_root_near(const std::vector<RootEnclosure>& rs, std::complex<double> z,
                        double tol = 1e-9, unsigned mult = 1) {
    for (const auto& r : rs)
        if (std::abs(r.center - z) < tol && r.multiplicity == mult) return true;
    return false;
}

} // namespace

TEST_CASE("x^2 + 1 within 1e-12") {
    auto rs = complex_roots(IntPoly{1, 0, 1}, 1e-12);
    REQUIRE(rs.size() == 2);
    CHECK(contains_root_near(rs, {0.0, 1.0}, 1e-12));
    CHECK(contains_root_near(rs, {0.0, -1.0}, 1e-12));
    for (const auto& r : rs) CHECK(r.radius <= 1e-12);
}

TEST_CASE("golden ratio quadratic") {
    auto rs = complex_roots(IntPoly{-1, -1, 1}, 1e-12);
    REQUIRE(rs.size() == 2);
    CHECK(contains_root_near(rs, {(1.0 + std::sqrt(5.0)) / 2.0, 0.0}, 1e-11));
    CHECK(contains_root_near(rs, {(1.0 - std::sqrt(5.0)) / 2.0, 0.0}, 1e-11));
}

TEST_CASE("repeated roots via multiplicity") {
    IntPoly p = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{-1, 1};
    auto rs = complex_roots(p, 1e-10);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].multiplicity == 3);
    CHECK(std::abs(rs[0].center - std::complex<double>(1.0, 0.0)) < 1e-10);
}

TEST_CASE("mixed multiplicities and root at zero") {
    // x^2 * (x-2)^2 * (x+3)
    IntPoly p = IntPoly::monomial(2) * IntPoly{-2, 1} * IntPoly{-2, 1} * IntPoly{3, 1};
    auto rs = complex_roots(p, 1e-10);
    REQUIRE(rs.size() == 3);
    CHECK(contains_root_near(rs, {0.0, 0.0}, 1e-15, 2));
    CHECK(contains_root_near(rs, {2.0, 0.0}, 1e-9, 2));
    CHECK(contains_root_near(rs, {-3.0, 0.0}, 1e-9, 1));
}

TEST_CASE("disjoint enclosures on cyclotomic-dense polynomials") {
    // x^36 - 1 has 36 roots spaced ~0.17 apart
    auto rs = complex_roots(IntPoly::xm_minus_one(36), 1e-10);
    CHECK(rs.size() == 36);
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j)
            CHECK(std::abs(rs[i].center - rs[j].center) > rs[i].radius + rs[j].radius);
}

TEST_CASE("random product roots match factors") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        long a = static_cast<long>(rng() % 9) - 4, b = 1 + static_cast<long>(rng() % 5);
        IntPoly p = IntPoly{a, b} * IntPoly{1, 0, 1} * IntPoly{-3, 1};
        auto rs = complex_roots(p, 1e-10);
        CHECK(contains_root_near(rs, {-static_cast<double>(a) / b, 0.0}, 1e-8));
        CHECK(contains_root_near(rs, {3.0, 0.0}, 1e-8));
    }
}

TEST_CASE("complex coefficient solver residuals") {
    // (y - (1+i)) (y - 2)
    std::vector<std::complex<double>> c = {std::complex<double>(2.0, 2.0),
                                           std::complex<double>(-3.0, -1.0),
                                           std::complex<double>(1.0, 0.0)};
    auto roots = roots_complex_coeffs(c, 1e-10);
    REQUIRE(roots.size() == 2);
    bool saw1 = false, saw2 = false;
    for (auto z : roots) {
        if (std::abs(z - std::complex<double>(1.0, 1.0)) < 1e-9) saw1 = true;
        if (std::abs(z - std::complex<double>(2.0, 0.0)) < 1e-9) saw2 = true;
    }
    CHECK(saw1);
    CHECK(saw2);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(complex_roots(IntPoly(), 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(complex_roots(IntPoly{1, 1}, 0.0), std::invalid_argument);
    CHECK(complex_roots(IntPoly{5}, 1e-10).empty());
}
