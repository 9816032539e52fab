#include "torlab/cyclotomic.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "torlab/numtheory.hpp"

namespace torlab {

namespace {

// Rational-coefficient polynomials, local to the inverse computation.
using RatPoly = std::vector<mpq_class>; // constant term first

void rp_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly rp_from_int(const IntPoly& p) {
    RatPoly r;
    r.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) r.emplace_back(c);
    return r;
}

// a = q*b + r over Q[x]
void rp_divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, mpq_class(0));
    while (r.size() >= b.size() && !r.empty()) {
        mpq_class c = r.back() / b.back();
        std::size_t k = r.size() - b.size();
        q[k] = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[k + i] -= c * b[i];
            r[k + i].canonicalize();
        }
        rp_trim(r);
    }
    rp_trim(q);
}

} // namespace

CycElement::CycElement() : m_(1), num_(), den_(1) {}

CycElement::CycElement(unsigned m, IntPoly numerator, mpz_class denominator)
    : m_(m), num_(std::move(numerator)), den_(std::move(denominator)) {
    if (m_ == 0) throw std::invalid_argument("CycElement: conductor must be >= 1");
    if (den_ == 0) throw std::invalid_argument("CycElement: zero denominator");
    reduce();
}

void CycElement::reduce() {
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    const IntPoly& phi = cyclotomic_poly(m_);
    if (num_.degree() >= phi.degree()) {
        IntPoly q, r;
        IntPoly::divmod_monic(num_, phi, q, r);
        num_ = std::move(r);
    }
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    mpz_class g = num_.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        std::vector<mpz_class> cs = num_.coeffs();
        for (auto& c : cs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        num_ = IntPoly(std::move(cs));
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

CycElement CycElement::from_rational(const mpq_class& q, unsigned m) {
    return CycElement(m, IntPoly::constant(q.get_num()), q.get_den());
}

CycElement CycElement::zeta(unsigned m, long k) {
    long mm = static_cast<long>(m);
    long e = ((k % mm) + mm) % mm;
    return CycElement(m, IntPoly::monomial(static_cast<unsigned>(e)), 1);
}

bool CycElement::is_one() const {
    return den_ == 1 && num_.degree() == 0 && num_.coeff(0) == 1;
}

mpq_class CycElement::to_rational() const {
    if (!is_rational()) throw std::invalid_argument("CycElement: not rational");
    mpq_class q(num_.coeff(0), den_);
    q.canonicalize();
    return q;
}

CycElement CycElement::lift_to_conductor(unsigned M) const {
    if (M == m_) return *this;
    if (M % m_ != 0) throw std::invalid_argument("lift_to_conductor: m must divide M");
    return CycElement(M, num_.inflate(M / m_), den_);
}

CycElement CycElement::operator-() const {
    CycElement r = *this;
    r.num_ = -r.num_;
    return r;
}

CycElement CycElement::operator+(const CycElement& o) const {
    unsigned M = static_cast<unsigned>(std::lcm<uint64_t>(m_, o.m_));
    CycElement a = lift_to_conductor(M), b = o.lift_to_conductor(M);
    return CycElement(M, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

CycElement CycElement::operator-(const CycElement& o) const { return *this + (-o); }

CycElement CycElement::operator*(const CycElement& o) const {
    unsigned M = static_cast<unsigned>(std::lcm<uint64_t>(m_, o.m_));
    CycElement a = lift_to_conductor(M), b = o.lift_to_conductor(M);
    return CycElement(M, a.num_ * b.num_, a.den_ * b.den_);
}

CycElement CycElement::inverse() const {
    if (is_zero()) throw std::invalid_argument("CycElement: inverse of zero");
    if (is_rational()) {
        mpq_class q = to_rational();
        return from_rational(mpq_class(q.get_den(), q.get_num()), m_);
    }
    // Extended Euclid over Q[x]: s*num + t*Phi = 1, so num^{-1} = s mod Phi.
    RatPoly r0 = rp_from_int(cyclotomic_poly(m_)), r1 = rp_from_int(num_);
    RatPoly s0{mpq_class(0)}, s1{mpq_class(1)};
    rp_trim(s0);
    while (!r1.empty()) {
        RatPoly q, r;
        rp_divmod(r0, r1, q, r);
        // s_{k+1} = s_{k-1} - q*s_k
        RatPoly qs(q.size() + s1.size(), mpq_class(0));
        if (!q.empty() && !s1.empty())
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) {
                    qs[i + j] -= q[i] * s1[j];
                    qs[i + j].canonicalize();
                }
        if (qs.size() < s0.size()) qs.resize(s0.size(), mpq_class(0));
        for (std::size_t i = 0; i < s0.size(); ++i) {
            qs[i] += s0[i];
            qs[i].canonicalize();
        }
        rp_trim(qs);
        s0 = std::move(s1);
        s1 = std::move(qs);
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    if (r0.size() != 1)
        throw std::logic_error("CycElement: numerator not invertible mod Phi_m");
    // inverse of this = den * s0 / r0[0]
    mpq_class unit = r0[0];
    mpz_class lcm_den = 1;
    for (auto& c : s0) {
        c /= unit;
        c.canonicalize();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    std::vector<mpz_class> ic(s0.size());
    for (std::size_t i = 0; i < s0.size(); ++i)
        ic[i] = s0[i].get_num() * (lcm_den / s0[i].get_den()) * den_;
    return CycElement(m_, IntPoly(std::move(ic)), lcm_den);
}

CycElement CycElement::operator/(const CycElement& o) const { return *this * o.inverse(); }

CycElement CycElement::pow(long e) const {
    if (e == 0) return one(m_);
    CycElement base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    CycElement acc = one(m_);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool CycElement::operator==(const CycElement& o) const {
    if (m_ == o.m_) return den_ == o.den_ && num_ == o.num_;
    unsigned M = static_cast<unsigned>(std::lcm<uint64_t>(m_, o.m_));
    CycElement a = lift_to_conductor(M), b = o.lift_to_conductor(M);
    return a.den_ == b.den_ && a.num_ == b.num_;
}

CycElement CycElement::galois(uint64_t a) const {
    if (m_ == 1) return *this;
    if (std::gcd<uint64_t>(a, m_) != 1)
        throw std::invalid_argument("galois: a not coprime to conductor");
    IntPoly mapped;
    for (std::size_t k = 0; k < num_.coeffs().size(); ++k) {
        if (num_.coeff(k) == 0) continue;
        unsigned e = static_cast<unsigned>((a * k) % m_);
        mapped = mapped + IntPoly::monomial(e, num_.coeff(k));
    }
    return CycElement(m_, mapped, den_);
}

std::vector<CycElement> CycElement::conjugates() const {
    std::vector<CycElement> out;
    for (uint64_t a : units_mod(m_)) out.push_back(m_ == 1 ? *this : galois(a));
    return out;
}

std::complex<double> CycElement::embed() const {
    std::complex<double> acc = 0;
    const double two_pi_over_m = 2.0 * M_PI / static_cast<double>(m_);
    const auto& cs = num_.coeffs();
    for (std::size_t k = cs.size(); k-- > 0;) {
        // Horner would need zeta itself; direct summation keeps each term a
        // correctly rounded polar value.
        if (cs[k] == 0) continue;
        double ang = two_pi_over_m * static_cast<double>(k);
        acc += cs[k].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc / den_.get_d();
}

bool CycElement::is_root_of_unity() const { return root_of_unity_order().has_value(); }

std::optional<unsigned> CycElement::root_of_unity_order() const {
    if (is_zero() || den_ != 1) return std::nullopt;
    // All roots of unity in Q(zeta_m) have order dividing m' = lcm(2, m).
    unsigned mp = (m_ % 2 == 0) ? m_ : 2 * m_;
    if (!(pow(static_cast<long>(mp)) == one(m_))) return std::nullopt;
    for (uint64_t d : divisors(mp))
        if (pow(static_cast<long>(d)) == one(m_)) return static_cast<unsigned>(d);
    return std::nullopt; // unreachable
}

IntPoly CycElement::char_poly() const {
    // prod_a (x - sigma_a(this)) with CycElement coefficients; the result is
    // Galois-invariant, hence rational.
    std::vector<CycElement> coeffs; // constant term first
    coeffs.push_back(one(m_));
    for (uint64_t a : units_mod(m_)) {
        CycElement root = (m_ == 1) ? *this : galois(a);
        // multiply (x - root): new[k] = old[k-1] - root*old[k]
        std::vector<CycElement> next(coeffs.size() + 1, zero(m_));
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k + 1] = next[k + 1] + coeffs[k];
            next[k] = next[k] - root * coeffs[k];
        }
        coeffs = std::move(next);
    }
    // Gather rational coefficients into an integer polynomial.
    mpz_class lcm_den = 1;
    for (const auto& c : coeffs) {
        if (!c.is_rational())
            throw std::logic_error("char_poly: non-rational coefficient");
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
    }
    std::vector<mpz_class> ic(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        ic[i] = coeffs[i].numerator().coeff(0) * (lcm_den / coeffs[i].denominator());
    IntPoly p{std::move(ic)};
    IntPoly pp = p.primitive_part();
    if (pp.lead() < 0) pp = -pp;
    return pp;
}

IntPoly CycElement::min_poly() const {
    // char_poly = min_poly ^ [Q(zeta_m) : Q(this)]; the radical strips the power.
    return char_poly().radical();
}

std::string CycElement::canonical_key() const {
    std::ostringstream os;
    os << m_ << '|' << den_.get_str() << '|';
    for (const auto& c : num_.coeffs()) os << c.get_str() << ',';
    return os.str();
}

std::string CycElement::to_string() const {
    if (is_rational()) {
        mpq_class q = is_zero() ? mpq_class(0) : to_rational();
        return q.get_str();
    }
    std::ostringstream os;
    os << "(" << num_.to_string("z" + std::to_string(m_)) << ")";
    if (den_ != 1) os << "/" << den_.get_str();
    return os.str();
}

CycElement cyc_reduce(unsigned m, const IntPoly& p, const mpz_class& den) {
    return CycElement(m, p, den);
}

} // namespace torlab
