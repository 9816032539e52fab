#ifndef TORLAB_FACTOR_HPP
#define TORLAB_FACTOR_HPP

#include <utility>
#include <vector>

#include "torlab/int_poly.hpp"

namespace torlab {

/// p = sign * content * prod factors[i].first ^ factors[i].second,
/// content > 0, factors irreducible over Q, primitive, positive leading
/// coefficients, sorted (degree, then coefficients).
struct Factorization {
    int sign = 1;
    mpz_class content = 1;
    std::vector<std::pair<IntPoly, unsigned>> factors;

    IntPoly reassemble() const;
};

inline constexpr unsigned kDefaultFactorDegreeCap = 24;

/// Full factorization over Q: squarefree decomposition, then factorization
/// modulo a small prime, Hensel lifting, and subset recombination. Degrees
/// above the cap raise capability_error naming the cap.
Factorization factor_squarefree_rational(const IntPoly& p,
                                         unsigned degree_cap = kDefaultFactorDegreeCap);

/// True iff p is irreducible over Q (degree >= 1, primitive part tested).
bool is_irreducible(const IntPoly& p, unsigned degree_cap = kDefaultFactorDegreeCap);

} // namespace torlab

#endif
