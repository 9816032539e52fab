#ifndef TORLAB_SCAN_HPP
#define TORLAB_SCAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "torlab/family.hpp"
#include "torlab/hypersurface.hpp"

namespace torlab {

enum class PointSource { Torsion, CurveSection, CorpusProduct };

std::string point_source_name(PointSource s);

struct SmallPointRecord {
    TorusPoint point;
    double height = 0.0;
    PointSource source = PointSource::CurveSection;
    std::string curve_id;
};

/// Section corpus: rationals with bounded numerator and denominator, roots of
/// unity up to a bounded order, and their products.
struct CorpusSpec {
    long max_numerator = 10;
    long max_denominator = 10;
    unsigned max_order = 60;
    bool include_products = true;
};

/// Exact coordinate values of the corpus in deterministic order, with their
/// Weil heights (h(r * zeta) = h(r) = log max(|num|, den), exact).
struct CorpusValue {
    CycElement value;
    double height;
};
std::vector<CorpusValue> corpus_values(const CorpusSpec& spec);

struct TorsionEnumResult {
    bool coset_detected = false; // torsion coset: infinite family, not enumerated
    std::vector<TorusPoint> points;
};

/// All points on the curve whose coordinates are roots of unity of order
/// <= m_max: numeric prefilter over all pairs followed by exact cyclotomic
/// verification of every candidate.
TorsionEnumResult torsion_points_on_curve(const LaurentHypersurface& f, unsigned m_max);

/// Z minus its exceptional locus: a coset curve loses every record (the
/// essential locus is empty); any other irreducible curve keeps them all.
std::vector<SmallPointRecord> essential_locus_filter(const LaurentHypersurface& f,
                                                     std::vector<SmallPointRecord> records);

struct ScanAudit {
    std::vector<std::string> entries;
    std::size_t skipped = 0;
    void skip(std::string why) {
        ++skipped;
        entries.push_back(std::move(why));
    }
};

/// Corpus-section sweep: specialize x over corpus values, solve for y
/// (exactly when linear, via factorization otherwise), record points with
/// canonical height <= bound; torsion points are merged in. Cap overruns are
/// skipped with an audit entry, never silently.
std::vector<SmallPointRecord> small_point_scan(const LaurentHypersurface& f,
                                               const CorpusSpec& corpus, double bound,
                                               const std::string& curve_id = "",
                                               ScanAudit* audit = nullptr);

struct ScanReport {
    std::string member_id;
    bool accepted = false;
    std::string skip_reason; // names the failing hypothesis when skipped
    std::vector<double> thresholds;
    std::vector<std::size_t> counts; // records with height <= threshold
    std::optional<double> min_positive_height;
    std::size_t torsion_count = 0;
    std::size_t filtered_count = 0; // removed by the essential-locus filter
    bool exceeds_family_max = false;
};

using MemberParams = std::vector<std::pair<std::string, CycElement>>;

/// Per-member small-point scans across a fixed-support family. Members that
/// fail the generation or finite-stabilizer hypotheses are reported as
/// skipped with the hypothesis named. Deterministic member order.
std::vector<ScanReport> uniform_scan(const SupportFamily& fam,
                                     const std::vector<MemberParams>& members,
                                     std::vector<double> thresholds, const CorpusSpec& corpus);

} // namespace torlab

#endif
