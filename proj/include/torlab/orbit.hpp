#ifndef TORLAB_ORBIT_HPP
#define TORLAB_ORBIT_HPP

#include "torlab/heights.hpp"
#include "torlab/sample.hpp"

namespace torlab {

/// Galois orbit of an exact point under sigma_a, a in (Z/m)^*, deduplicated
/// exactly and embedded with equal weights. Coordinates that are roots of
/// unity carry the exact unit-circle mark in every conjugate.
WeightedSample galois_orbit(const TorusPoint& p);

/// Orbit points as exact TorusPoints (same dedup and ordering).
std::vector<TorusPoint> galois_orbit_exact(const TorusPoint& p);

} // namespace torlab

#endif
