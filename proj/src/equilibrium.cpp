#include "torlab/equilibrium.hpp"

#include <atomic>
#include <cmath>

#include "torlab/errors.hpp"
#include "torlab/parallel.hpp"
#include "torlab/roots.hpp"

namespace torlab {

namespace detail {

namespace {
uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
} // namespace

double counter_u01(uint64_t seed, uint64_t stream, uint64_t counter, uint64_t attempt) {
    uint64_t h = splitmix64(seed ^ splitmix64(stream ^ 0xA076'1D64'78BD'642Full));
    h = splitmix64(h ^ counter);
    h = splitmix64(h ^ (attempt * 0x9E37'79B9'7F4A'7C15ull + 1));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

} // namespace detail

std::vector<ComponentSpec> equilibrium_components(const LaurentHypersurface& f) {
    if (f.ambient_dim() != 2)
        throw std::invalid_argument("equilibrium_components: curves in G_m^2 only");
    auto md = f.multidegree();
    std::vector<ComponentSpec> out;
    // component (i): coordinate i on the circle, mass = branch count of the
    // projection = exponent spread of the other variable
    if (md.partial[1] > 0) out.push_back({{0}, static_cast<double>(md.partial[1])});
    if (md.partial[0] > 0) out.push_back({{1}, static_cast<double>(md.partial[0])});
    return out;
}

WeightedSample equilibrium_sample(const LaurentHypersurface& f, std::size_t n_samples,
                                  uint64_t seed) {
    auto comps = equilibrium_components(f);
    if (comps.empty())
        throw std::invalid_argument("equilibrium_sample: no components with positive mass");
    if (n_samples == 0) throw std::invalid_argument("equilibrium_sample: sample count must be positive");

    double total_mass = 0.0;
    for (const auto& c : comps) total_mass += c.mass;

    // proportional draw allocation, at least one draw per component
    std::vector<std::size_t> alloc(comps.size());
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        alloc[i] = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(static_cast<double>(n_samples) * comps[i].mass /
                                                   total_mass)));
        assigned += alloc[i];
    }
    // hand any remainder to the heaviest component (deterministic)
    if (assigned < n_samples) {
        std::size_t heavy = 0;
        for (std::size_t i = 1; i < comps.size(); ++i)
            if (comps[i].mass > comps[heavy].mass) heavy = i;
        alloc[heavy] += n_samples - assigned;
    }

    const double two_pi = 2.0 * M_PI;
    std::atomic<uint64_t> resamples{0};
    std::vector<std::vector<WeightedSample::Point>> slots;

    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const unsigned circle_var = comps[ci].index[0];
        const unsigned solve_var = 1 - circle_var;
        const std::size_t branches = static_cast<std::size_t>(comps[ci].mass);
        const std::size_t draws = alloc[ci];
        const double point_weight = comps[ci].mass / (total_mass * static_cast<double>(draws) *
                                                      static_cast<double>(branches));
        std::vector<std::vector<WeightedSample::Point>> comp_slots(draws);
        std::atomic<bool> failed{false};

        parallel_for(draws, [&](std::size_t j) {
            for (uint64_t attempt = 0; attempt <= 64; ++attempt) {
                double theta = two_pi * detail::counter_u01(seed, ci, j, attempt);
                std::complex<double> on_circle(std::cos(theta), std::sin(theta));
                auto coeffs = f.specialize_numeric(solve_var, {on_circle});
                // degenerate draw: leading coefficient collapses or roots touch 0
                double scale = 0.0;
                for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
                if (!(std::abs(coeffs.back()) > 1e-9 * scale)) {
                    ++resamples;
                    continue;
                }
                std::vector<std::complex<double>> roots;
                try {
                    roots = roots_complex_coeffs(coeffs, 1e-10);
                } catch (const numeric_error&) {
                    ++resamples;
                    continue;
                }
                bool ok = roots.size() == branches;
                for (const auto& r : roots)
                    if (!(std::abs(r) > 1e-9)) ok = false;
                if (!ok) {
                    ++resamples;
                    continue;
                }
                std::vector<WeightedSample::Point> pts;
                pts.reserve(branches);
                for (const auto& r : roots) {
                    WeightedSample::Point pt;
                    pt.coords.resize(2);
                    pt.coords[circle_var] = on_circle;
                    pt.coords[solve_var] = r;
                    pt.weight = point_weight;
                    pt.circle_mask = uint64_t(1) << circle_var;
                    pts.push_back(std::move(pt));
                }
                comp_slots[j] = std::move(pts);
                return;
            }
            failed.store(true);
        });
        if (failed.load())
            throw numeric_error("equilibrium_sample: a draw failed to stabilize after 64 resamples",
                                0.0);
        slots.push_back({});
        for (auto& ps : comp_slots)
            for (auto& p : ps) slots.back().push_back(std::move(p));
    }

    std::vector<WeightedSample::Point> all;
    for (auto& s : slots)
        for (auto& p : s) all.push_back(std::move(p));

    // weights sum to sum_i mass_i / total exactly; renormalize the float dust
    double total_w = 0.0;
    for (const auto& p : all) total_w += p.weight;
    for (auto& p : all) p.weight /= total_w;

    WeightedSample sample(2, std::move(all), Provenance::EquilibriumMC, seed);
    uint64_t res = resamples.load();
    std::size_t total_draws = 0;
    for (std::size_t a : alloc) total_draws += a;
    if (res > 0) {
        double rate = static_cast<double>(res) / static_cast<double>(total_draws + res);
        if (rate > 0.01)
            sample.add_warning("resample rate " + std::to_string(rate) + " above 1% (" +
                               std::to_string(res) + " resamples)");
    }
    return sample;
}

} // namespace torlab
