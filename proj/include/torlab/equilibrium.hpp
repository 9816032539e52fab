#ifndef TORLAB_EQUILIBRIUM_HPP
#define TORLAB_EQUILIBRIUM_HPP

#include <cstdint>

#include "torlab/hypersurface.hpp"
#include "torlab/sample.hpp"

namespace torlab {

/// One wedge component of the equilibrium measure of a curve in G_m^2: the
/// index names the coordinate pinned to the unit circle; the mass is the
/// branch count of the complementary projection. Zero-mass components are
/// omitted by equilibrium_components.
struct ComponentSpec {
    std::vector<unsigned> index; // length d_X = 1 for curves
    double mass = 0.0;
};

std::vector<ComponentSpec> equilibrium_components(const LaurentHypersurface& f);

/// Monte-Carlo sampler of the equilibrium measure: draws split across
/// components proportionally to mass; a draw picks theta uniform on the
/// circle, solves the curve equation along the other coordinate, and emits
/// every branch. Deterministic for a fixed seed, independent of the worker
/// count. Degenerate draws are resampled; a resample rate above 1% leaves a
/// warning on the sample.
WeightedSample equilibrium_sample(const LaurentHypersurface& f, std::size_t n_samples,
                                  uint64_t seed);

namespace detail {
/// Counter-based uniform variate on [0, 1): pure function of its arguments.
double counter_u01(uint64_t seed, uint64_t stream, uint64_t counter, uint64_t attempt);
} // namespace detail

} // namespace torlab

#endif
