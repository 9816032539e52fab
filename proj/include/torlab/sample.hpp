#ifndef TORLAB_SAMPLE_HPP
#define TORLAB_SAMPLE_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace torlab {

enum class Provenance { GaloisOrbit, EquilibriumMC, External };

std::string provenance_name(Provenance p);

/// Finite weighted point cloud on (C^*)^n. Weights are positive and sum to 1
/// (validated to 1e-12). circle_mask records coordinates known to lie on the
/// unit circle exactly (in-memory metadata; the producers set it from exact
/// root-of-unity tests so that torsion statistics vanish identically).
class WeightedSample {
public:
    struct Point {
        std::vector<std::complex<double>> coords;
        double weight = 0.0;
        uint64_t circle_mask = 0;
    };

    WeightedSample(unsigned n, std::vector<Point> points, Provenance prov,
                   std::optional<uint64_t> seed = std::nullopt);
    /// Reference carrying the exact Haar modes: weyl_sum is 0 for k != 0.
    static WeightedSample exact_haar(unsigned n);

    unsigned ambient_dim() const { return n_; }
    const std::vector<Point>& points() const { return points_; }
    Provenance provenance() const { return prov_; }
    std::optional<uint64_t> seed() const { return seed_; }
    bool is_exact_haar() const { return exact_haar_; }

    const std::vector<std::string>& warnings() const { return warnings_; }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

    /// Line-oriented text format: header (n, N, provenance, seed), then one
    /// point per line as comma-separated re,im pairs plus the weight, 17
    /// significant digits.
    std::string serialize() const;
    static WeightedSample deserialize(const std::string& text);

private:
    WeightedSample() = default;
    unsigned n_ = 0;
    std::vector<Point> points_;
    Provenance prov_ = Provenance::External;
    std::optional<uint64_t> seed_;
    bool exact_haar_ = false;
    std::vector<std::string> warnings_;
};

/// sum_j w_j prod_i (x_i/|x_i|)^{k_i}
std::complex<double> weyl_sum(const WeightedSample& s, const std::vector<long>& k);

/// sum_j w_j sum_i |log|x_i||; exact-circle coordinates contribute 0.
double radial_defect(const WeightedSample& s);

struct DiscrepancyRow {
    std::vector<long> k;
    double abs_diff;
};

struct DiscrepancyReport {
    std::vector<DiscrepancyRow> rows; // all 0 < ||k||_inf <= K, lex order
    double sup = 0.0;
};

DiscrepancyReport discrepancy_report(const WeightedSample& a, const WeightedSample& b, long K);

/// All k in [-K, K]^n with k != 0, lexicographic order.
std::vector<std::vector<long>> weyl_modes(unsigned n, long K);

} // namespace torlab

#endif
