#include "torlab/heights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "torlab/errors.hpp"
#include "torlab/numtheory.hpp"

namespace torlab {

namespace {

// Candidate root-of-unity orders for a root near angle theta (fraction of a
// full turn), from continued-fraction convergents with denominator <= kmax.
std::vector<unsigned> order_candidates(double theta, unsigned kmax) {
    std::vector<unsigned> out;
    theta -= std::floor(theta);
    // continued fraction of theta
    double x = theta;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int step = 0; step < 64; ++step) {
        double a = std::floor(x);
        long ai = static_cast<long>(a);
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > static_cast<long>(kmax) || q2 <= 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (q1 > 0 && std::abs(theta - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-9)
            out.push_back(static_cast<unsigned>(q1));
        double frac = x - a;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return out;
}

// Divide out every cyclotomic factor of a primitive squarefree polynomial.
// Exact: candidates are located numerically, confirmed by exact division.
IntPoly strip_cyclotomic_factors(IntPoly g) {
    if (g.degree() < 1) return g;
    // cheap loose enclosures to find near-circle roots
    std::vector<RootEnclosure> encl;
    try {
        encl = complex_roots(g, 1e-6);
    } catch (const numeric_error&) {
        return g; // candidates unavailable; caller's error budget decides
    }
    std::vector<unsigned> candidates;
    unsigned kmax = 2 * static_cast<unsigned>(g.degree()) * static_cast<unsigned>(g.degree()) + 4;
    for (const auto& e : encl) {
        if (std::abs(std::abs(e.center) - 1.0) > 1e-6) continue;
        double theta = std::arg(e.center) / (2.0 * M_PI);
        for (unsigned k : order_candidates(theta, kmax)) candidates.push_back(k);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (unsigned k : candidates) {
        const IntPoly& phi = cyclotomic_poly(k);
        if (phi.degree() > g.degree()) continue;
        IntPoly q;
        if (IntPoly::try_divide_exact(g, phi, q)) g = q;
    }
    return g;
}

// log M of a primitive squarefree polynomial with no root of unity among its
// roots, with an a posteriori error estimate from enclosure radii.
struct LogMahler {
    double value;
    double error;
};

LogMahler log_mahler_squarefree(const IntPoly& g, double eps) {
    LogMahler out{0.0, 0.0};
    if (g.degree() < 1) {
        out.value = std::log(std::abs(g.coeff(0).get_d()));
        return out;
    }
    auto encl = complex_roots(g, eps);
    double acc = std::log(std::abs(g.lead().get_d()));
    double err = 0.0;
    for (const auto& e : encl) {
        double r = std::abs(e.center);
        if (r - e.radius > 1.0) {
            acc += std::log(r);
            err += e.radius / (r - e.radius) + 1e-16;
        } else if (r + e.radius >= 1.0) {
            // straddles the circle; not a root of unity (those were stripped),
            // so charge the full ambiguity to the budget
            double hi = std::log(r + e.radius);
            acc += std::max(0.0, std::log(r));
            err += std::max(hi, 0.0) + 1e-16;
        }
        // |z| + radius < 1 contributes log^+ = 0 exactly
    }
    out.value = acc;
    out.error = err;
    return out;
}

double log_abs_mpz(const mpz_class& z) {
    // log |z| for a big integer via mantissa+exponent split
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::abs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

} // namespace

std::string AlgebraicNumber::to_string() const {
    std::ostringstream os;
    os << "root of " << minpoly.to_string() << " near (" << approx.real() << ", " << approx.imag()
       << ")";
    return os.str();
}

AlgebraicNumber algebraic_from_rational(const mpq_class& q) {
    // minpoly den*x - num
    IntPoly mp(std::vector<mpz_class>{mpz_class(-q.get_num()), mpz_class(q.get_den())});
    return AlgebraicNumber{mp, std::complex<double>(q.get_d(), 0.0), 0.0};
}

std::vector<AlgebraicNumber> algebraic_roots_of(const IntPoly& irreducible, double eps) {
    std::vector<AlgebraicNumber> out;
    IntPoly mp = irreducible.primitive_part();
    if (mp.lead() < 0) mp = -mp;
    for (const auto& e : complex_roots(mp, eps))
        out.push_back(AlgebraicNumber{mp, e.center, e.radius});
    return out;
}

double mahler_measure(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("mahler_measure: zero polynomial");
    // M(p) = |content| * prod M(g_i)^{e_i}; roots at 0 contribute max(1,0)=1.
    double logm = log_abs_mpz(p.content());
    double err = 0.0;
    IntPoly q = p.shift_down(p.valuation_at_zero());
    for (const auto& [g, mult] : q.squarefree_decomposition()) {
        IntPoly reduced = strip_cyclotomic_factors(g);
        if (reduced.degree() < 1) continue; // fully cyclotomic: M = 1 exactly
        LogMahler lm = log_mahler_squarefree(reduced, 1e-11);
        if (lm.error * mult > 1e-12) lm = log_mahler_squarefree(reduced, 5e-14);
        logm += mult * lm.value;
        err += mult * lm.error;
    }
    // relative error of M equals the absolute error of log M
    if (err > 1e-10) throw numeric_error("mahler_measure: error budget not met", err);
    return std::exp(logm);
}

double weil_height(const AlgebraicNumber& a) {
    if (a.is_zero()) throw std::invalid_argument("weil_height: zero");
    int deg = a.minpoly.degree();
    if (deg < 1) throw std::invalid_argument("weil_height: constant minimal polynomial");
    double m = mahler_measure(a.minpoly);
    return std::log(m) / static_cast<double>(deg);
}

double weil_height_cyc(const CycElement& b) {
    if (b.is_zero()) throw std::invalid_argument("weil_height_cyc: zero");
    if (b.is_root_of_unity()) return 0.0;
    if (b.is_rational()) {
        // h(p/q) = log max(|p|, q)
        mpq_class q = b.to_rational();
        mpz_class num = abs(mpz_class(q.get_num()));
        const mpz_class& den = q.get_den();
        return log_abs_mpz(num >= den ? num : den);
    }
    IntPoly mp = b.min_poly();
    double m = mahler_measure(mp);
    return std::log(m) / static_cast<double>(mp.degree());
}

TorusPoint::TorusPoint(std::vector<CycElement> exact_coords) {
    if (exact_coords.empty()) throw std::invalid_argument("TorusPoint: empty coordinate list");
    unsigned m = 1;
    for (const auto& c : exact_coords) {
        if (c.is_zero()) throw std::invalid_argument("TorusPoint: zero coordinate not in G_m");
        m = static_cast<unsigned>(std::lcm<uint64_t>(m, c.conductor()));
    }
    for (auto& c : exact_coords) c = c.lift_to_conductor(m);
    coords_ = std::move(exact_coords);
}

TorusPoint::TorusPoint(std::vector<AlgebraicNumber> numeric_coords) {
    if (numeric_coords.empty()) throw std::invalid_argument("TorusPoint: empty coordinate list");
    for (const auto& c : numeric_coords)
        if (c.is_zero()) throw std::invalid_argument("TorusPoint: zero coordinate not in G_m");
    coords_ = std::move(numeric_coords);
}

TorusPoint TorusPoint::from_rationals(const std::vector<mpq_class>& values) {
    std::vector<CycElement> cs;
    cs.reserve(values.size());
    for (const auto& v : values) cs.push_back(CycElement::from_rational(v));
    return TorusPoint(std::move(cs));
}

std::size_t TorusPoint::dim() const {
    if (exact()) return std::get<0>(coords_).size();
    return std::get<1>(coords_).size();
}

const std::vector<CycElement>& TorusPoint::exact_coords() const {
    if (!exact()) throw std::invalid_argument("TorusPoint: not an exact point");
    return std::get<0>(coords_);
}

const std::vector<AlgebraicNumber>& TorusPoint::numeric_coords() const {
    if (exact()) throw std::invalid_argument("TorusPoint: not a numeric point");
    return std::get<1>(coords_);
}

unsigned TorusPoint::conductor() const { return exact_coords().front().conductor(); }

std::vector<std::complex<double>> TorusPoint::embed() const {
    std::vector<std::complex<double>> out;
    out.reserve(dim());
    if (exact()) {
        for (const auto& c : std::get<0>(coords_)) out.push_back(c.embed());
    } else {
        for (const auto& c : std::get<1>(coords_)) out.push_back(c.approx);
    }
    return out;
}

TorusPoint TorusPoint::mul(const TorusPoint& o) const {
    const auto& a = exact_coords();
    const auto& b = o.exact_coords();
    if (a.size() != b.size()) throw std::invalid_argument("TorusPoint: dimension mismatch");
    std::vector<CycElement> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
    return TorusPoint(std::move(r));
}

TorusPoint TorusPoint::div(const TorusPoint& o) const {
    const auto& a = exact_coords();
    const auto& b = o.exact_coords();
    if (a.size() != b.size()) throw std::invalid_argument("TorusPoint: dimension mismatch");
    std::vector<CycElement> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / b[i];
    return TorusPoint(std::move(r));
}

bool TorusPoint::operator==(const TorusPoint& o) const {
    if (exact() != o.exact() || dim() != o.dim()) return false;
    if (exact()) {
        for (std::size_t i = 0; i < dim(); ++i)
            if (!(exact_coords()[i] == o.exact_coords()[i])) return false;
        return true;
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!(numeric_coords()[i].minpoly == o.numeric_coords()[i].minpoly)) return false;
        if (std::abs(numeric_coords()[i].approx - o.numeric_coords()[i].approx) >
            numeric_coords()[i].radius + o.numeric_coords()[i].radius + 1e-12)
            return false;
    }
    return true;
}

bool TorusPoint::is_torsion() const {
    if (!exact()) return false;
    for (const auto& c : exact_coords())
        if (!c.is_root_of_unity()) return false;
    return true;
}

std::string TorusPoint::canonical_key() const {
    std::ostringstream os;
    if (exact()) {
        os << "E:";
        for (const auto& c : exact_coords()) os << c.canonical_key() << ";";
    } else {
        os << "N:";
        for (const auto& c : numeric_coords()) {
            os << c.minpoly.to_string() << "@";
            // snap centers to a grid coarser than enclosure radii
            os << std::llround(c.approx.real() * 1e9) << "," << std::llround(c.approx.imag() * 1e9)
               << ";";
        }
    }
    return os.str();
}

std::string TorusPoint::to_string() const {
    std::ostringstream os;
    os << "(";
    if (exact()) {
        const auto& cs = exact_coords();
        for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? ", " : "") << cs[i].to_string();
    } else {
        const auto& cs = numeric_coords();
        for (std::size_t i = 0; i < cs.size(); ++i)
            os << (i ? ", " : "") << cs[i].approx.real() << (cs[i].approx.imag() < 0 ? "-" : "+")
               << std::abs(cs[i].approx.imag()) << "i";
    }
    os << ")";
    return os.str();
}

double canonical_height(const TorusPoint& p) {
    double h = 0.0;
    if (p.exact()) {
        for (const auto& c : p.exact_coords()) h += weil_height_cyc(c);
    } else {
        for (const auto& c : p.numeric_coords()) h += weil_height(c);
    }
    return h;
}

} // namespace torlab
