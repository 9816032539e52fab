#include "torlab/sample.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "torlab/errors.hpp"

namespace torlab {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::GaloisOrbit: return "GaloisOrbit";
        case Provenance::EquilibriumMC: return "EquilibriumMC";
        case Provenance::External: return "External";
    }
    return "External";
}

namespace {

Provenance provenance_from_name(const std::string& s) {
    if (s == "GaloisOrbit") return Provenance::GaloisOrbit;
    if (s == "EquilibriumMC") return Provenance::EquilibriumMC;
    if (s == "External") return Provenance::External;
    throw config_error("unknown provenance: " + s);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

WeightedSample::WeightedSample(unsigned n, std::vector<Point> points, Provenance prov,
                               std::optional<uint64_t> seed)
    : n_(n), points_(std::move(points)), prov_(prov), seed_(seed) {
    if (n_ == 0) throw std::invalid_argument("WeightedSample: ambient dimension 0");
    double total = 0.0;
    for (const auto& p : points_) {
        if (p.coords.size() != n_)
            throw std::invalid_argument("WeightedSample: coordinate arity mismatch");
        if (!(p.weight > 0)) throw std::invalid_argument("WeightedSample: weights must be positive");
        for (const auto& z : p.coords)
            if (std::abs(z) == 0.0)
                throw std::invalid_argument("WeightedSample: zero coordinate not in the torus");
        total += p.weight;
    }
    if (!points_.empty() && std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("WeightedSample: weights must sum to 1");
}

WeightedSample WeightedSample::exact_haar(unsigned n) {
    WeightedSample s;
    s.n_ = n;
    s.prov_ = Provenance::External;
    s.exact_haar_ = true;
    return s;
}

std::string WeightedSample::serialize() const {
    std::ostringstream os;
    os << "weighted-sample v1 n=" << n_ << " N=" << points_.size()
       << " provenance=" << provenance_name(prov_) << " seed=";
    if (seed_) os << *seed_;
    else os << "none";
    os << "\n";
    for (const auto& p : points_) {
        for (unsigned i = 0; i < n_; ++i)
            os << fmt17(p.coords[i].real()) << "," << fmt17(p.coords[i].imag()) << ",";
        os << fmt17(p.weight) << "\n";
    }
    return os.str();
}

WeightedSample WeightedSample::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw config_error("sample: empty document");
    unsigned n = 0;
    std::size_t count = 0;
    char prov_buf[32] = {0};
    char seed_buf[32] = {0};
    if (std::sscanf(header.c_str(), "weighted-sample v1 n=%u N=%zu provenance=%31s seed=%31s", &n,
                    &count, prov_buf, seed_buf) != 4)
        throw config_error("sample: bad header");
    std::vector<Point> pts;
    pts.reserve(count);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Point p;
        p.coords.resize(n);
        std::stringstream ls(line);
        std::string tok;
        std::vector<double> vals;
        while (std::getline(ls, tok, ',')) vals.push_back(std::stod(tok));
        if (vals.size() != 2 * n + 1) throw config_error("sample: bad point line");
        for (unsigned i = 0; i < n; ++i) p.coords[i] = {vals[2 * i], vals[2 * i + 1]};
        p.weight = vals.back();
        pts.push_back(std::move(p));
    }
    if (pts.size() != count) throw config_error("sample: point count mismatch");
    std::optional<uint64_t> seed;
    if (std::string(seed_buf) != "none") seed = std::stoull(seed_buf);
    return WeightedSample(n, std::move(pts), provenance_from_name(prov_buf), seed);
}

std::complex<double> weyl_sum(const WeightedSample& s, const std::vector<long>& k) {
    if (k.size() != s.ambient_dim()) throw std::invalid_argument("weyl_sum: mode arity mismatch");
    bool zero_mode = true;
    for (long v : k)
        if (v != 0) zero_mode = false;
    if (s.is_exact_haar()) return zero_mode ? 1.0 : 0.0;
    if (zero_mode) return 1.0; // normalization

    // prod_i (x_i/|x_i|)^{k_i} = exp(i * sum k_i arg(x_i)); the angle route
    // keeps the modulus exactly 1 and is deterministic under reordering of
    // the inner product.
    std::complex<double> acc = 0.0;
    for (const auto& p : s.points()) {
        double phase = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i)
            if (k[i] != 0) phase += static_cast<double>(k[i]) * std::arg(p.coords[i]);
        acc += p.weight * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc;
}

double radial_defect(const WeightedSample& s) {
    if (s.is_exact_haar()) return 0.0;
    double acc = 0.0;
    for (const auto& p : s.points()) {
        double d = 0.0;
        for (std::size_t i = 0; i < p.coords.size(); ++i) {
            if (p.circle_mask & (uint64_t(1) << i)) continue; // exactly on the circle
            d += std::abs(std::log(std::abs(p.coords[i])));
        }
        acc += p.weight * d;
    }
    return acc;
}

std::vector<std::vector<long>> weyl_modes(unsigned n, long K) {
    std::vector<std::vector<long>> out;
    std::vector<long> k(n, -K);
    for (;;) {
        bool zero = true;
        for (long v : k)
            if (v != 0) zero = false;
        if (!zero) out.push_back(k);
        std::size_t i = n;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (k[i] < K) {
                ++k[i];
                for (std::size_t j = i + 1; j < n; ++j) k[j] = -K;
                advanced = true;
                break;
            }
        }
        if (!advanced) return out;
    }
}

DiscrepancyReport discrepancy_report(const WeightedSample& a, const WeightedSample& b, long K) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("discrepancy_report: ambient dimension mismatch");
    DiscrepancyReport rep;
    for (const auto& k : weyl_modes(a.ambient_dim(), K)) {
        double d = std::abs(weyl_sum(a, k) - weyl_sum(b, k));
        rep.sup = std::max(rep.sup, d);
        rep.rows.push_back({k, d});
    }
    return rep;
}

} // namespace torlab
