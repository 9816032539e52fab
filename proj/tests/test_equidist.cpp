#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "torlab/equilibrium.hpp"
#include "torlab/numtheory.hpp"
#include "torlab/orbit.hpp"
#include "torlab/parallel.hpp"

using namespace torlab;

namespace {

// Brute-force Ramanujan sum oracle: (1/phi(m)) sum_{a in (Z/m)^*} e^{2 pi i k a / m}
std::complex<double> ramanujan_oracle(unsigned m, long k) {
    std::complex<double> acc = 0;
    auto units = units_mod(m);
    for (uint64_t a : units) {
        double ang = 2.0 * M_PI * static_cast<double>(k) * static_cast<double>(a) /
                     static_cast<double>(m);
        acc += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc / static_cast<double>(units.size());
}

// Midpoint-rule quadrature of the two circle components of x + y - 1:
// component (1): x = e^{i t}, y = 1 - e^{i t}; component (2) symmetric.
std::complex<double> line_mode_quadrature(long k1, long k2, std::size_t panels) {
    auto unit = [](std::complex<double> z) { return z / std::abs(z); };
    std::complex<double> q1 = 0, q2 = 0;
    for (std::size_t j = 0; j < panels; ++j) {
        double t = 2.0 * M_PI * (static_cast<double>(j) + 0.5) / static_cast<double>(panels);
        std::complex<double> e(std::cos(t), std::sin(t));
        std::complex<double> other = 1.0 - e;
        // e is on the circle; other generically off it
        q1 += std::pow(e, static_cast<double>(k1)) *
              std::pow(unit(other), static_cast<double>(k2));
        q2 += std::pow(unit(other), static_cast<double>(k1)) *
              std::pow(e, static_cast<double>(k2));
    }
    q1 /= static_cast<double>(panels);
    q2 /= static_cast<double>(panels);
    return 0.5 * (q1 + q2); // equal masses (1, 1)
}

TorusPoint zeta_point(unsigned m, std::initializer_list<long> powers) {
    std::vector<CycElement> cs;
    for (long p : powers) cs.push_back(CycElement::zeta(m, p));
    return TorusPoint(std::move(cs));
}

} // namespace

TEST_CASE("galois orbit sizes and dedup") {
    CHECK(galois_orbit(TorusPoint::from_rationals({mpq_class(1), mpq_class(1)})).points().size() == 1);
    auto o1 = galois_orbit(zeta_point(6, {1, -1}));
    CHECK(o1.points().size() == 2);
    auto o2 = galois_orbit(zeta_point(5, {1, 2}));
    CHECK(o2.points().size() == 4);
    // exact orbit points are the sigma_a images
    auto exact = galois_orbit_exact(zeta_point(6, {1, -1}));
    REQUIRE(exact.size() == 2);
    CHECK(exact[0] == zeta_point(6, {1, 5}));
    CHECK(exact[1] == zeta_point(6, {5, 1}));
}

TEST_CASE("weyl sum basics") {
    auto s = galois_orbit(zeta_point(5, {1, 2}));
    CHECK(weyl_sum(s, {0, 0}) == std::complex<double>(1.0, 0.0));
    // subtorus containment x^2 = y detected at k = (2, -1)
    CHECK(std::abs(weyl_sum(s, {2, -1}) - std::complex<double>(1.0, 0.0)) < 1e-12);
    // |W| <= 1 and conjugate symmetry across modes
    for (const auto& k : weyl_modes(2, 3)) {
        auto w = weyl_sum(s, k);
        CHECK(std::abs(w) <= 1.0 + 1e-12);
        std::vector<long> nk{-k[0], -k[1]};
        CHECK(std::abs(std::conj(w) - weyl_sum(s, nk)) < 1e-12);
    }
}

TEST_CASE("ramanujan weyl values on primitive orbits") {
    for (unsigned m : {2u, 6u, 7u, 12u, 36u, 61u}) {
        TorusPoint p(std::vector<CycElement>{CycElement::zeta(m)});
        auto orbit = galois_orbit(p);
        CHECK(orbit.points().size() == euler_phi(m));
        for (long k = 1; k <= 12; ++k) {
            unsigned g = static_cast<unsigned>(std::gcd<uint64_t>(k, m));
            double expected = static_cast<double>(mobius(m / g)) /
                              static_cast<double>(euler_phi(m / g));
            auto w = weyl_sum(orbit, {k});
            CHECK(std::abs(w - std::complex<double>(expected, 0.0)) < 1e-9);
            CHECK(std::abs(w - ramanujan_oracle(m, k)) < 1e-9);
            CHECK(std::abs(w.imag()) < 1e-10); // Ramanujan sums are real
        }
    }
}

TEST_CASE("radial defect") {
    // torsion orbits sit exactly on the polycircle
    CHECK(radial_defect(galois_orbit(zeta_point(12, {5, 7}))) == 0.0);
    auto s1 = galois_orbit(TorusPoint::from_rationals({mpq_class(2), mpq_class(1, 2)}));
    CHECK(radial_defect(s1) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    auto s2 = galois_orbit(TorusPoint::from_rationals({mpq_class(-1), mpq_class(2)}));
    CHECK(radial_defect(s2) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("equilibrium components") {
    auto c1 = equilibrium_components(LaurentHypersurface::parse_poly("x + y - 1", 2));
    REQUIRE(c1.size() == 2);
    CHECK(c1[0].mass == 1.0);
    CHECK(c1[1].mass == 1.0);
    auto c2 = equilibrium_components(LaurentHypersurface::parse_poly("y - x^2", 2));
    REQUIRE(c2.size() == 2);
    CHECK(c2[0].index == std::vector<unsigned>{0});
    CHECK(c2[0].mass == 1.0); // deg_y
    CHECK(c2[1].mass == 2.0); // deg_x
    auto c3 = equilibrium_components(LaurentHypersurface::parse_poly("y - 2", 2));
    REQUIRE(c3.size() == 1);
    CHECK(c3[0].index == std::vector<unsigned>{0});
    CHECK(c3[0].mass == 1.0);
    // total equilibrium mass equals the multidegree total
    for (const char* expr : {"x + y - 1", "y - x^2", "x*y - 1", "x^2 - y^2", "x^2*y - 3"}) {
        auto f = LaurentHypersurface::parse_poly(expr, 2);
        double mass = 0;
        for (const auto& c : equilibrium_components(f)) mass += c.mass;
        CHECK(mass == static_cast<double>(f.multidegree().total));
    }
}

TEST_CASE("sampler on the diagonal y = x") {
    auto f = LaurentHypersurface::parse_poly("y - x", 2);
    for (std::size_t n : {std::size_t(1000), std::size_t(10000)}) {
        auto s = equilibrium_sample(f, n, 7);
        CHECK(std::abs(weyl_sum(s, {1, -1}) - std::complex<double>(1.0, 0.0)) <=
              5.0 / std::sqrt(static_cast<double>(n)));
    }
}

TEST_CASE("sampler on the horizontal line y = 2") {
    auto f = LaurentHypersurface::parse_poly("y - 2", 2);
    auto s = equilibrium_sample(f, 500, 3);
    CHECK(s.points().size() == 500);
    CHECK(radial_defect(s) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    for (const auto& p : s.points()) CHECK(std::abs(p.coords[1] - std::complex<double>(2, 0)) < 1e-9);
}

TEST_CASE("sampler matches quadrature on x + y - 1") {
    auto f = LaurentHypersurface::parse_poly("x + y - 1", 2);
    const std::size_t N = 20000;
    auto s = equilibrium_sample(f, N, 11);
    double tol = 3.0 / std::sqrt(static_cast<double>(N));
    for (long k1 = -2; k1 <= 2; ++k1)
        for (long k2 = -2; k2 <= 2; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            auto mc = weyl_sum(s, {k1, k2});
            auto quad = line_mode_quadrature(k1, k2, 1 << 18);
            CHECK(std::abs(mc - quad) <= std::max(tol, 1e-3));
        }
    // spot value: W_(1,0) = 1/pi (component 2 integral = 2/pi, halved)
    CHECK(std::abs(weyl_sum(s, {1, 0}) - std::complex<double>(1.0 / M_PI, 0.0)) < 0.02);
}

TEST_CASE("sampler reproducibility across thread counts") {
    auto f = LaurentHypersurface::parse_poly("x + y - 1", 2);
    set_thread_count(1);
    auto a = equilibrium_sample(f, 2000, 42);
    set_thread_count(4);
    auto b = equilibrium_sample(f, 2000, 42);
    set_thread_count(0);
    CHECK(a.serialize() == b.serialize());
    // and a different seed genuinely changes the sample
    auto c = equilibrium_sample(f, 2000, 43);
    CHECK(a.serialize() != c.serialize());
}

TEST_CASE("discrepancy reports") {
    auto s = galois_orbit(zeta_point(5, {1, 2}));
    auto self = discrepancy_report(s, s, 3);
    CHECK(self.sup == 0.0);
    for (const auto& r : self.rows) CHECK(r.abs_diff == 0.0);

    // orbit of zeta_m (m prime) against exact Haar: sup = 1/(m-1)
    for (unsigned m : {7u, 13u, 31u}) {
        TorusPoint p(std::vector<CycElement>{CycElement::zeta(m)});
        auto rep = discrepancy_report(galois_orbit(p), WeightedSample::exact_haar(1), 10);
        CHECK(rep.sup == doctest::Approx(1.0 / (m - 1.0)).epsilon(1e-9));
    }

    // subtorus containment shows up as sup 1 at k = (2, -1)
    auto rep2 = discrepancy_report(s, WeightedSample::exact_haar(2), 3);
    CHECK(rep2.sup == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& r : rep2.rows)
        if (r.k == std::vector<long>{2, -1}) CHECK(r.abs_diff == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sample serialization round trip") {
    auto s = galois_orbit(zeta_point(6, {1, -1}));
    auto text = s.serialize();
    auto t = WeightedSample::deserialize(text);
    CHECK(t.ambient_dim() == 2);
    CHECK(t.points().size() == 2);
    CHECK(t.serialize() == text);
    CHECK(t.provenance() == Provenance::GaloisOrbit);
}

TEST_CASE("counter rng is schedule independent and seed sensitive") {
    CHECK(detail::counter_u01(1, 2, 3, 0) == detail::counter_u01(1, 2, 3, 0));
    CHECK(detail::counter_u01(1, 2, 3, 0) != detail::counter_u01(2, 2, 3, 0));
    CHECK(detail::counter_u01(1, 2, 3, 0) != detail::counter_u01(1, 2, 4, 0));
    CHECK(detail::counter_u01(1, 2, 3, 0) != detail::counter_u01(1, 2, 3, 1));
    for (int i = 0; i < 100; ++i) {
        double u = detail::counter_u01(9, 0, i, 0);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
