#ifndef TORLAB_HYPERSURFACE_HPP
#define TORLAB_HYPERSURFACE_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "torlab/cyclotomic.hpp"
#include "torlab/heights.hpp"
#include "torlab/int_matrix.hpp"

namespace torlab {

struct LaurentTerm {
    std::vector<long> exponents; // length = ambient dimension
    CycElement coeff;            // nonzero
};

/// Hypersurface Z = V(F) in G_m^n with F a Laurent polynomial: finite
/// exponent support in Z^n plus exact coefficients. Terms are kept in
/// lexicographic exponent order; rational coefficient vectors are stored
/// primitively (denominators cleared, coefficient gcd 1).
class LaurentHypersurface {
public:
    LaurentHypersurface(unsigned n, std::vector<LaurentTerm> terms);

    unsigned ambient_dim() const { return n_; }
    const std::vector<LaurentTerm>& terms() const { return terms_; }
    bool is_binomial() const { return terms_.size() == 2; }
    bool has_rational_coeffs() const;
    /// Smallest conductor carrying all coefficients.
    unsigned coeff_conductor() const;

    CycElement evaluate(const std::vector<CycElement>& x) const;
    std::complex<double> evaluate(const std::vector<std::complex<double>>& x) const;

    /// Dense coefficients (degree 0 first) of F with every variable except
    /// `var` substituted; the Laurent valuation in x_var is shifted away,
    /// which preserves zeros on the torus. other_values[i] belongs to
    /// variable i < var ? i : i + 1.
    std::vector<CycElement> specialize_exact(std::size_t var,
                                             const std::vector<CycElement>& other_values) const;
    std::vector<std::complex<double>> specialize_numeric(
        std::size_t var, const std::vector<std::complex<double>>& other_values) const;

    struct Multidegree {
        std::vector<long> partial; // exponent spread per variable
        long total;                // degree of the closure against O(1,...,1)
    };
    Multidegree multidegree() const;

    /// Rows {v - v0 : v in support}, v0 the lexicographically first exponent.
    IntMatrix difference_lattice() const;

    std::string to_document() const;
    static LaurentHypersurface parse_document(const std::string& text);
    /// Convenience parser for expressions like "x + y - 1" or
    /// "3/2*x^2*y^-1 - 5" (variables x,y,z,w or x1..xn).
    static LaurentHypersurface parse_poly(const std::string& expr, unsigned n = 0);

    std::string to_string() const;

private:
    unsigned n_;
    std::vector<LaurentTerm> terms_;
};

/// Structure of Stab(Z) = {a : aZ = Z} = common kernel of the
/// support-difference characters, as the dual of Z^n / L computed through the
/// Smith normal form of the difference lattice.
struct StabilizerDescr {
    unsigned dim = 0;                        // n - rank(L)
    std::vector<mpz_class> torsion_invariants; // invariant factors > 1, divisibility chain
    IntMatrix generators;                    // rows = cocharacter exponent vectors
    std::vector<mpz_class> generator_orders; // per row: torsion order, 0 for free rows

    bool is_finite() const { return dim == 0; }
    bool is_trivial() const { return dim == 0 && torsion_invariants.empty(); }
    /// Order of the torsion part (product of invariants).
    mpz_class torsion_order() const;
};

StabilizerDescr stabilizer(const LaurentHypersurface& f);

struct CosetTestResult {
    bool is_coset = false;
    bool torsion = false; // meaningful only when is_coset
};

/// Z is a coset of a subtorus iff F is binomial; the coset contains a torsion
/// point iff the coefficient ratio is a root of unity (exact test).
CosetTestResult torsion_coset_test(const LaurentHypersurface& f);

enum class Generates { Yes, No, HeuristicYes };

/// Whether Z generates G_m^n (is not contained in a coset of a proper
/// subtorus). Exact No for binomials with n >= 2; exact Yes for non-binomial
/// n = 2 with full-rank differences (irreducibility caller-asserted);
/// otherwise a character-sampling heuristic up to ||k||_inf <= char_bound.
Generates generates_ambient(const LaurentHypersurface& f, long char_bound = 3);

/// (a_0, ..., a_M) -> (a_1 a_0^{-1}, ..., a_M a_0^{-1}), exact points.
std::vector<TorusPoint> faltings_zhang(const std::vector<TorusPoint>& tuple);

/// Torsion point of G_m^2 as a pair of reduced angle fractions j/o.
struct TorsionPair {
    unsigned j1 = 0, o1 = 1, j2 = 0, o2 = 1;
    bool operator==(const TorsionPair&) const = default;
    TorusPoint as_point() const;
    /// order of the point = lcm(o1, o2)
    unsigned order() const;
};

/// All torsion b in G_m^2 with order(b) <= m_max, deterministic order.
std::vector<TorsionPair> torsion_pairs_up_to(unsigned m_max);

/// Brute-force Faltings-Zhang fiber test: candidates are torsion b of order
/// <= m_max with b*x_i on Z for every tuple entry; returns whether the
/// candidate set equals the order-<= m_max torsion part of Stab(Z).
bool fz_fiber_is_stab_orbit(const LaurentHypersurface& f, const std::vector<TorusPoint>& tuple,
                            unsigned m_max, std::vector<TorusPoint>* candidates_out = nullptr);

} // namespace torlab

#endif
