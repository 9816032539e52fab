#ifndef TORLAB_INT_POLY_HPP
#define TORLAB_INT_POLY_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace torlab {

/// Dense univariate polynomial over Z, constant term first. The zero
/// polynomial has an empty coefficient vector; otherwise the leading
/// coefficient is nonzero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(mpz_class c);
    static IntPoly monomial(unsigned deg, mpz_class coeff = 1);
    /// x^m - 1
    static IntPoly xm_minus_one(unsigned m);

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    /// Coefficient of x^i, 0 beyond the degree.
    const mpz_class& coeff(std::size_t i) const;
    const mpz_class& lead() const;

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const mpz_class& s) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

    IntPoly derivative() const;
    /// gcd of coefficients, >= 0; 0 for the zero polynomial.
    mpz_class content() const;
    /// this / content; keeps the sign of the leading coefficient.
    IntPoly primitive_part() const;
    /// Substitute x -> x^k (conductor lifts, Galois maps).
    IntPoly inflate(unsigned k) const;
    /// Largest v with x^v | this (0 for the zero polynomial).
    unsigned valuation_at_zero() const;
    /// this / x^v
    IntPoly shift_down(unsigned v) const;

    mpz_class eval(const mpz_class& x) const;
    /// p(num/den) * den^deg(p), exact.
    mpz_class eval_homogeneous(const mpz_class& num, const mpz_class& den) const;
    std::complex<double> eval(const std::complex<double>& z) const;

    /// Quotient and remainder by a monic divisor (exact over Z).
    static void divmod_monic(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r);
    /// Exact division; returns false if b does not divide a over Z.
    static bool try_divide_exact(const IntPoly& a, const IntPoly& b, IntPoly& q);
    /// Exact division; throws std::invalid_argument on a non-exact divide.
    static IntPoly divexact(const IntPoly& a, const IntPoly& b);
    /// Pseudo-remainder of a by b: rem of lead(b)^(deg a - deg b + 1) * a.
    static IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b);
    /// gcd over Z[x], primitive with positive leading coefficient
    /// (content handled separately by callers that need it).
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);

    /// Yun squarefree decomposition of the primitive part:
    /// pp(p) = sign * prod g_i^{m_i}, g_i squarefree, pairwise coprime,
    /// positive leading coefficients. Pairs are (g_i, m_i) with deg g_i >= 1.
    std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition() const;
    /// Product of the distinct irreducible factors (the radical), primitive,
    /// positive leading coefficient.
    IntPoly radical() const;

    /// sum of |coeff| * R^i, as a double (for floating error budgets).
    double coeff_magnitude_bound(double radius) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

/// Phi_m, monic of degree phi(m), computed by exact division of x^m - 1 by
/// the Phi_d over proper divisors d | m. Cached and thread-safe.
const IntPoly& cyclotomic_poly(unsigned m);

} // namespace torlab

#endif
