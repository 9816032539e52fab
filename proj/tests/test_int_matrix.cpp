#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torlab/int_matrix.hpp"

using namespace torlab;

namespace {

IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

void check_snf(const IntMatrix& a) {
    SmithResult s = smith_normal_form(a);
    CHECK(s.u.determinant() * s.u.determinant() == 1);
    CHECK(s.v.determinant() * s.v.determinant() == 1);
    CHECK(s.u * a * s.v == s.d);
    // diagonal, nonnegative, divisibility chain
    for (std::size_t i = 0; i < s.d.rows(); ++i)
        for (std::size_t j = 0; j < s.d.cols(); ++j)
            if (i != j) CHECK(s.d.at(i, j) == 0);
    auto inv = s.invariant_factors();
    for (std::size_t i = 0; i < inv.size(); ++i) {
        CHECK(inv[i] > 0);
        if (i + 1 < inv.size()) CHECK(mpz_divisible_p(inv[i + 1].get_mpz_t(), inv[i].get_mpz_t()));
    }
    // zero diagonal entries come after the nonzero ones
    bool seen_zero = false;
    for (std::size_t i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i) {
        if (s.d.at(i, i) == 0) seen_zero = true;
        else CHECK_FALSE(seen_zero);
    }
}

} // namespace

TEST_CASE("snf of identity") {
    IntMatrix id = IntMatrix::identity(2);
    SmithResult s = smith_normal_form(id);
    CHECK(s.d == id);
    check_snf(id);
}

TEST_CASE("snf diag(2,3) -> diag(1,6)") {
    IntMatrix a = from_rows({{2, 0}, {0, 3}});
    SmithResult s = smith_normal_form(a);
    CHECK(s.d.at(0, 0) == 1);
    CHECK(s.d.at(1, 1) == 6);
    check_snf(a);
}

TEST_CASE("snf of single row (2,-2) -> (2, 0)") {
    IntMatrix a = from_rows({{2, -2}});
    SmithResult s = smith_normal_form(a);
    CHECK(s.d.at(0, 0) == 2);
    CHECK(s.d.at(0, 1) == 0);
    check_snf(a);
}

TEST_CASE("snf stress on random small matrices") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMatrix a(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) a.at(i, j) = static_cast<long>(rng() % 21) - 10;
        check_snf(a);
    }
}

TEST_CASE("rank and determinant") {
    CHECK(from_rows({{1, 2}, {2, 4}}).rank() == 1);
    CHECK(from_rows({{1, 2}, {3, 4}}).rank() == 2);
    CHECK(from_rows({{1, 2}, {3, 4}}).determinant() == -2);
    CHECK(from_rows({{2, 0, 1}, {0, 3, 0}, {1, 0, 1}}).determinant() == 3);
    CHECK(IntMatrix(0, 0).determinant() == 1);
}
