#ifndef TORLAB_FAMILY_HPP
#define TORLAB_FAMILY_HPP

#include <optional>
#include <string>
#include <vector>

#include "torlab/hypersurface.hpp"

namespace torlab {

/// Coefficient family with fixed support: some coefficients pinned to exact
/// values, the rest free parameters. Membership of a torus point in the fiber
/// Z_s is an affine-linear condition on the parameter vector s.
class SupportFamily {
public:
    struct Entry {
        std::vector<long> exponents;
        std::optional<CycElement> fixed; // nullopt => free parameter
        std::string param_name;          // set when free
    };

    SupportFamily(unsigned n, std::vector<Entry> entries);

    unsigned ambient_dim() const { return n_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t free_count() const { return free_count_; }
    /// Free parameter names in entry (lexicographic-exponent) order.
    std::vector<std::string> param_names() const;

    /// Fiber at the given parameter values (entry order of free parameters).
    LaurentHypersurface instantiate(const std::vector<CycElement>& params) const;
    /// Fiber with parameters given by name.
    LaurentHypersurface instantiate_named(
        const std::vector<std::pair<std::string, CycElement>>& params) const;

    /// Membership of p in Z_s as a row: sum_j row[j] * s_j = rhs.
    struct MembershipRow {
        std::vector<CycElement> coeffs;
        CycElement rhs;
    };
    MembershipRow membership_row(const TorusPoint& p) const;

    std::string to_document() const;
    static SupportFamily parse_document(const std::string& text);
    std::string to_string() const;

private:
    unsigned n_;
    std::vector<Entry> entries_;
    std::size_t free_count_;
};

struct PinningCertificate {
    std::vector<TorusPoint> points;
    unsigned residual_rank = 0;
    unsigned fiber_dim = 0;
};

/// Greedy pinning: walk the corpus, keep points whose membership rows raise
/// the rank while keeping the affine system consistent; stop at fiber
/// dimension zero or corpus exhaustion (then fiber_dim > 0 is reported, not
/// thrown).
PinningCertificate pinning_points(const SupportFamily& fam, const std::vector<TorusPoint>& corpus);

/// The u-fold power of the family projects generically finitely iff some u
/// corpus points pin the parameters to a finite fiber.
bool nondegenerate_power(const SupportFamily& fam, unsigned u, const std::vector<TorusPoint>& corpus);

} // namespace torlab

#endif
