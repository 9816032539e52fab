#include "torlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "torlab/errors.hpp"

namespace torlab {

namespace {

template <typename Real>
struct Eval {
    std::complex<Real> value;
    Real magnitude_sum; // sum |a_k| |z|^k, for rounding-error budgets
};

template <typename Real>
Eval<Real> horner(const std::vector<std::complex<Real>>& c, std::complex<Real> z) {
    std::complex<Real> acc = 0;
    Real mag = 0;
    Real az = std::abs(z);
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * z + c[i];
        mag = mag * az + std::abs(c[i]);
    }
    return {acc, mag};
}

template <typename Real>
std::vector<std::complex<Real>> derivative(const std::vector<std::complex<Real>>& c) {
    std::vector<std::complex<Real>> d;
    if (c.size() <= 1) return d;
    d.resize(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * Real(i);
    return d;
}

// Aberth–Ehrlich simultaneous iteration; coefficients constant-first.
template <typename Real>
std::vector<std::complex<Real>> aberth(const std::vector<std::complex<Real>>& coeffs,
                                       int max_iters) {
    const std::size_t n = coeffs.size() - 1;
    std::vector<std::complex<Real>> c = coeffs;
    // normalize to monic for stable correction sizes
    std::complex<Real> lead = c.back();
    for (auto& x : c) x /= lead;
    auto dc = derivative(c);

    Real radius = 0;
    for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
    radius = Real(1) + radius;

    std::vector<std::complex<Real>> z(n);
    const Real pi = Real(3.14159265358979323846264338327950288L);
    for (std::size_t i = 0; i < n; ++i) {
        Real ang = Real(2) * pi * Real(i) / Real(n) + Real(0.41);
        z[i] = std::polar(radius * Real(0.8), ang);
    }

    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int iter = 0; iter < max_iters; ++iter) {
        Real worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto pv = horner(c, z[i]);
            auto dv = horner(dc, z[i]);
            if (std::abs(pv.value) == Real(0)) continue;
            std::complex<Real> newton;
            if (std::abs(dv.value) > Real(0)) {
                newton = pv.value / dv.value;
            } else {
                z[i] += Real(0.001) * radius;
                worst = radius;
                continue;
            }
            std::complex<Real> s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s += Real(1) / (z[i] - z[j]);
            std::complex<Real> denom = Real(1) - newton * s;
            std::complex<Real> w = (std::abs(denom) > Real(0)) ? newton / denom : newton;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / std::max(Real(1), std::abs(z[i])));
        }
        if (worst < Real(8) * eps) break;
    }
    return z;
}

// Full-mantissa conversion: mpz_get_d keeps only 53 bits, which would waste
// the extended-precision rung on large coefficients.
long double mpz_to_long_double(const mpz_class& z) {
    if (mpz_fits_slong_p(z.get_mpz_t()))
        return static_cast<long double>(mpz_get_si(z.get_mpz_t()));
    bool neg = z < 0;
    mpz_class a = neg ? mpz_class(-z) : z;
    std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
    mpz_class top = a >> (bits - 64);
    long double out = std::ldexp(static_cast<long double>(mpz_get_ui(top.get_mpz_t())),
                                 static_cast<int>(bits - 64));
    return neg ? -out : out;
}

template <typename Real>
Real mpz_to_real(const mpz_class& z);
template <>
double mpz_to_real<double>(const mpz_class& z) {
    return z.get_d();
}
template <>
long double mpz_to_real<long double>(const mpz_class& z) {
    return mpz_to_long_double(z);
}

template <typename Real>
std::vector<std::complex<Real>> to_real_coeffs(const IntPoly& p) {
    std::vector<std::complex<Real>> c(p.coeffs().size());
    // scale by max |coeff|: roots are scale-invariant and the smaller
    // magnitudes keep the iteration away from overflow
    Real scale = 0;
    for (const auto& a : p.coeffs()) scale = std::max(scale, std::abs(mpz_to_real<Real>(a)));
    if (scale == 0) scale = 1;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = std::complex<Real>(mpz_to_real<Real>(p.coeff(i)) / scale, 0);
    return c;
}

struct CertifiedSet {
    std::vector<std::complex<double>> centers;
    std::vector<double> radii;
    bool ok = false;
    double best_radius = std::numeric_limits<double>::infinity();
};

// Solve a squarefree factor at one precision rung and certify: the disk
// |z - z_i| <= n |p(z_i)/p'(z_i)| contains a root; n disjoint disks for n
// approximations isolate one root each.
template <typename Real>
CertifiedSet solve_certified(const IntPoly& g, double eps) {
    CertifiedSet out;
    const std::size_t n = static_cast<std::size_t>(g.degree());
    auto c = to_real_coeffs<Real>(g);
    auto z = aberth(c, 600);
    auto dc = derivative(c);

    const Real u = std::numeric_limits<Real>::epsilon();
    out.centers.resize(n);
    out.radii.resize(n);
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto pv = horner(c, z[i]);
        auto dv = horner(dc, z[i]);
        Real err_p = Real(4) * Real(c.size()) * u * pv.magnitude_sum;
        Real err_d = Real(4) * Real(c.size()) * u * dv.magnitude_sum;
        Real denom = std::abs(dv.value) - err_d;
        if (denom <= Real(0)) {
            out.ok = false;
            out.best_radius = std::numeric_limits<double>::infinity();
            return out;
        }
        Real rad = Real(n) * (std::abs(pv.value) + err_p) / denom;
        out.centers[i] = std::complex<double>(static_cast<double>(z[i].real()),
                                              static_cast<double>(z[i].imag()));
        out.radii[i] = static_cast<double>(rad) * (1 + 1e-12) + 1e-300;
        worst = std::max(worst, out.radii[i]);
    }
    out.best_radius = worst;
    if (worst > eps) return out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(out.centers[i] - out.centers[j]) <= out.radii[i] + out.radii[j])
                return out; // overlapping disks: not isolated at this rung
    out.ok = true;
    return out;
}

} // namespace

std::vector<RootEnclosure> complex_roots(const IntPoly& p, double eps) {
    if (p.is_zero()) throw std::invalid_argument("complex_roots: zero polynomial");
    if (!(eps > 0)) throw std::invalid_argument("complex_roots: eps must be positive");
    std::vector<RootEnclosure> out;
    if (p.degree() == 0) return out;

    unsigned v = p.valuation_at_zero();
    IntPoly q = p.shift_down(v);
    if (v > 0) out.push_back({std::complex<double>(0, 0), 0.0, v});

    double best = std::numeric_limits<double>::infinity();
    for (const auto& [g, mult] : q.squarefree_decomposition()) {
        CertifiedSet s = solve_certified<double>(g, eps);
        if (!s.ok) s = solve_certified<long double>(g, eps);
        if (!s.ok) {
            best = std::min(best, s.best_radius);
            throw numeric_error("complex_roots: certification failed at maximum precision", best);
        }
        for (std::size_t i = 0; i < s.centers.size(); ++i)
            out.push_back({s.centers[i], s.radii[i], mult});
    }

    // distinct roots across different squarefree factors must stay disjoint too
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (std::abs(out[i].center - out[j].center) <= out[i].radius + out[j].radius)
                throw numeric_error("complex_roots: cross-factor enclosures overlap",
                                    std::max(out[i].radius, out[j].radius));

    std::sort(out.begin(), out.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
        if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
        return a.center.imag() < b.center.imag();
    });
    return out;
}

std::vector<std::complex<double>> roots_complex_coeffs(const std::vector<std::complex<double>>& coeffs,
                                                       double residual_tol) {
    std::vector<std::complex<double>> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    double scale = 0;
    for (const auto& a : c) scale = std::max(scale, std::abs(a));
    for (auto& a : c) a /= scale;

    auto z = aberth(c, 400);
    // residual check relative to coefficient magnitudes at the root
    for (const auto& zi : z) {
        auto pv = horner(c, zi);
        double rel = std::abs(pv.value) / std::max(1.0, pv.magnitude_sum);
        if (!(rel <= residual_tol))
            throw numeric_error("roots_complex_coeffs: residual above tolerance", rel);
    }
    std::sort(z.begin(), z.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

} // namespace torlab
