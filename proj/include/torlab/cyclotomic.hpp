#ifndef TORLAB_CYCLOTOMIC_HPP
#define TORLAB_CYCLOTOMIC_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torlab/int_poly.hpp"

namespace torlab {

/// Element of Q(zeta_m) in canonical form: numerator reduced mod Phi_m
/// (degree < phi(m)), denominator > 0, gcd(content(numerator), denominator)
/// = 1. Equality of canonical forms at a common conductor is exact equality
/// of field elements.
class CycElement {
public:
    /// 0 in Q = Q(zeta_1).
    CycElement();
    /// p(zeta_m) / den, reduced to canonical form.
    CycElement(unsigned m, IntPoly numerator, mpz_class denominator = 1);

    static CycElement zero(unsigned m = 1) { return CycElement(m, IntPoly(), 1); }
    static CycElement one(unsigned m = 1) { return CycElement(m, IntPoly::constant(1), 1); }
    static CycElement from_rational(const mpq_class& q, unsigned m = 1);
    static CycElement from_int(long v) { return from_rational(mpq_class(v)); }
    /// zeta_m^k
    static CycElement zeta(unsigned m, long k = 1);

    unsigned conductor() const { return m_; }
    const IntPoly& numerator() const { return num_; }
    const mpz_class& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_rational() const { return num_.degree() <= 0; }
    /// Requires is_rational().
    mpq_class to_rational() const;

    /// Same element viewed in Q(zeta_M); requires m | M.
    CycElement lift_to_conductor(unsigned M) const;

    CycElement operator-() const;
    CycElement operator+(const CycElement& o) const;
    CycElement operator-(const CycElement& o) const;
    CycElement operator*(const CycElement& o) const;
    CycElement operator/(const CycElement& o) const;
    CycElement inverse() const;
    CycElement pow(long e) const;

    /// Exact equality as field elements (lifts to the lcm conductor).
    bool operator==(const CycElement& o) const;
    bool operator!=(const CycElement& o) const { return !(*this == o); }

    /// sigma_a : zeta_m -> zeta_m^a, requires gcd(a, m) = 1.
    CycElement galois(uint64_t a) const;
    /// All sigma_a(this) for a in (Z/m)^*, in increasing order of a.
    std::vector<CycElement> conjugates() const;

    /// Complex embedding zeta_m -> exp(2 pi i / m).
    std::complex<double> embed() const;

    bool is_root_of_unity() const;
    /// Exact multiplicative order when the element is a root of unity.
    std::optional<unsigned> root_of_unity_order() const;

    /// Characteristic polynomial prod_{a in (Z/m)^*} (x - sigma_a(this)) as a
    /// primitive integer polynomial (a power of the minimal polynomial).
    IntPoly char_poly() const;
    /// Minimal polynomial over Q, primitive with positive leading coefficient.
    IntPoly min_poly() const;

    /// Stable key for maps/dedup; equal elements at equal conductors agree.
    std::string canonical_key() const;
    std::string to_string() const;

private:
    void reduce();
    unsigned m_ = 1;
    IntPoly num_;
    mpz_class den_ = 1;
};

/// Canonical form of p(zeta_m)/den. Thin wrapper over the constructor.
CycElement cyc_reduce(unsigned m, const IntPoly& p, const mpz_class& den);

} // namespace torlab

#endif
