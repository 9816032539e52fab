#ifndef TORLAB_ROOTS_HPP
#define TORLAB_ROOTS_HPP

#include <complex>
#include <vector>

#include "torlab/int_poly.hpp"

namespace torlab {

struct RootEnclosure {
    std::complex<double> center;
    double radius;
    unsigned multiplicity;
};

/// Certified complex roots of a nonzero integer polynomial: one enclosure per
/// distinct root carrying its multiplicity, radii <= eps, enclosures pairwise
/// disjoint. Simultaneous (Aberth) iteration on the squarefree part with a
/// posteriori residual certification; precision escalates double -> extended
/// double, then fails with numeric_error carrying the best radius reached.
std::vector<RootEnclosure> complex_roots(const IntPoly& p, double eps);

/// Roots of a polynomial with complex coefficients (constant term first),
/// residual-checked to |p(z)| <= tol * scale rather than certified. Used where
/// statistical accuracy suffices (equilibrium sampling, heuristics).
std::vector<std::complex<double>> roots_complex_coeffs(const std::vector<std::complex<double>>& coeffs,
                                                       double residual_tol = 1e-10);

} // namespace torlab

#endif
