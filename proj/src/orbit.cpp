#include "torlab/orbit.hpp"

#include <set>

#include "torlab/numtheory.hpp"

namespace torlab {

std::vector<TorusPoint> galois_orbit_exact(const TorusPoint& p) {
    const auto& coords = p.exact_coords();
    unsigned m = p.conductor();
    std::vector<TorusPoint> orbit;
    std::set<std::string> seen;
    for (uint64_t a : units_mod(m)) {
        std::vector<CycElement> conj(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i)
            conj[i] = (m == 1) ? coords[i] : coords[i].galois(a);
        TorusPoint q(std::move(conj));
        if (seen.insert(q.canonical_key()).second) orbit.push_back(std::move(q));
    }
    return orbit;
}

WeightedSample galois_orbit(const TorusPoint& p) {
    auto orbit = galois_orbit_exact(p);
    // root-of-unity coordinates stay roots of unity under every sigma_a
    uint64_t mask = 0;
    const auto& coords = p.exact_coords();
    for (std::size_t i = 0; i < coords.size() && i < 64; ++i)
        if (coords[i].is_root_of_unity()) mask |= uint64_t(1) << i;

    std::vector<WeightedSample::Point> pts;
    pts.reserve(orbit.size());
    double w = 1.0 / static_cast<double>(orbit.size());
    for (const auto& q : orbit) {
        WeightedSample::Point pt;
        pt.coords = q.embed();
        pt.weight = w;
        pt.circle_mask = mask;
        pts.push_back(std::move(pt));
    }
    return WeightedSample(static_cast<unsigned>(p.dim()), std::move(pts), Provenance::GaloisOrbit);
}

} // namespace torlab
