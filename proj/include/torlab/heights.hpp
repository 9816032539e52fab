#ifndef TORLAB_HEIGHTS_HPP
#define TORLAB_HEIGHTS_HPP

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "torlab/cyclotomic.hpp"
#include "torlab/int_poly.hpp"
#include "torlab/roots.hpp"

namespace torlab {

/// Algebraic number as an irreducible primitive minimal polynomial plus a
/// certified enclosure isolating the chosen root.
struct AlgebraicNumber {
    IntPoly minpoly;
    std::complex<double> approx;
    double radius = 0.0;

    bool is_zero() const { return minpoly.degree() == 1 && minpoly.coeff(0) == 0; }
    std::string to_string() const;
};

AlgebraicNumber algebraic_from_rational(const mpq_class& q);
/// One AlgebraicNumber per root of an irreducible polynomial.
std::vector<AlgebraicNumber> algebraic_roots_of(const IntPoly& irreducible, double eps = 1e-12);

/// Mahler measure |lead| * prod max(1, |root|), certified relative error
/// <= 1e-10. Roots within their enclosure radius of the unit circle are
/// snapped to it only when they belong to an exactly detected cyclotomic
/// factor; otherwise the two-sided log bound is charged to the error budget.
double mahler_measure(const IntPoly& p);

/// Absolute logarithmic Weil height h(a) = log M(minpoly) / deg(minpoly).
double weil_height(const AlgebraicNumber& a);

/// Weil height of a cyclotomic-rational value: exact characteristic
/// polynomial, minimal polynomial as its radical, then the Mahler step.
double weil_height_cyc(const CycElement& b);

/// Point of G_m^n with either all-exact (cyclotomic-rational, common
/// conductor) or all-numeric coordinates. Coordinates are nonzero.
class TorusPoint {
public:
    explicit TorusPoint(std::vector<CycElement> exact_coords);
    explicit TorusPoint(std::vector<AlgebraicNumber> numeric_coords);
    static TorusPoint from_rationals(const std::vector<mpq_class>& values);

    std::size_t dim() const;
    bool exact() const { return std::holds_alternative<std::vector<CycElement>>(coords_); }
    const std::vector<CycElement>& exact_coords() const;
    const std::vector<AlgebraicNumber>& numeric_coords() const;
    /// Conductor shared by exact coordinates (1 for rational points).
    unsigned conductor() const;

    std::vector<std::complex<double>> embed() const;

    /// Coordinate-wise operations on exact points.
    TorusPoint mul(const TorusPoint& o) const;
    TorusPoint div(const TorusPoint& o) const;
    bool operator==(const TorusPoint& o) const;

    bool is_torsion() const;
    std::string canonical_key() const;
    std::string to_string() const;

private:
    std::variant<std::vector<CycElement>, std::vector<AlgebraicNumber>> coords_;
};

/// Toric canonical height: sum of coordinate Weil heights.
double canonical_height(const TorusPoint& p);

} // namespace torlab

#endif
