#include "torlab/int_poly.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "torlab/errors.hpp"
#include "torlab/numtheory.hpp"

namespace torlab {

namespace {
const mpz_class kZero = 0;
} // namespace

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(mpz_class c) {
    IntPoly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
}

IntPoly IntPoly::monomial(unsigned deg, mpz_class coeff) {
    IntPoly p;
    if (coeff != 0) {
        p.c_.assign(deg + 1, mpz_class(0));
        p.c_[deg] = std::move(coeff);
    }
    return p;
}

IntPoly IntPoly::xm_minus_one(unsigned m) {
    IntPoly p;
    p.c_.assign(m + 1, mpz_class(0));
    p.c_[0] = -1;
    p.c_[m] = 1;
    return p;
}

const mpz_class& IntPoly::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : kZero;
}

const mpz_class& IntPoly::lead() const {
    if (c_.empty()) return kZero;
    return c_.back();
}

IntPoly IntPoly::operator-() const {
    IntPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    IntPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] -= o.c_[i];
    r.trim();
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    IntPoly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

IntPoly IntPoly::operator*(const mpz_class& s) const {
    if (s == 0) return IntPoly();
    IntPoly r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
}

IntPoly IntPoly::derivative() const {
    IntPoly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * static_cast<long>(i);
    r.trim();
    return r;
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    mpz_class g = content();
    IntPoly r(*this);
    if (g != 1)
        for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return r;
}

IntPoly IntPoly::inflate(unsigned k) const {
    if (is_zero() || k == 1) return *this;
    if (k == 0) throw std::invalid_argument("inflate by 0");
    IntPoly r;
    r.c_.assign((c_.size() - 1) * k + 1, mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * k] = c_[i];
    return r;
}

unsigned IntPoly::valuation_at_zero() const {
    if (is_zero()) return 0;
    unsigned v = 0;
    while (v < c_.size() && c_[v] == 0) ++v;
    return v;
}

IntPoly IntPoly::shift_down(unsigned v) const {
    if (v == 0) return *this;
    if (v >= c_.size()) return IntPoly();
    IntPoly r;
    r.c_.assign(c_.begin() + v, c_.end());
    return r;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

mpz_class IntPoly::eval_homogeneous(const mpz_class& num, const mpz_class& den) const {
    // acc = sum c_i num^i den^(deg - i)
    if (is_zero()) return 0;
    mpz_class acc = c_.back(), dp = 1;
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
        dp *= den;
        acc = acc * num + c_[i] * dp;
    }
    return acc;
}

std::complex<double> IntPoly::eval(const std::complex<double>& z) const {
    std::complex<double> acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->get_d();
    return acc;
}

void IntPoly::divmod_monic(const IntPoly& a, const IntPoly& b, IntPoly& q, IntPoly& r) {
    if (b.is_zero() || b.lead() != 1)
        throw std::invalid_argument("divmod_monic: divisor must be monic");
    r = a;
    q = IntPoly();
    int db = b.degree();
    if (a.degree() < db) return;
    q.c_.assign(a.degree() - db + 1, mpz_class(0));
    while (r.degree() >= db) {
        int k = r.degree() - db;
        mpz_class c = r.lead();
        q.c_[k] = c;
        for (int i = 0; i <= db; ++i) r.c_[k + i] -= c * b.c_[i];
        r.trim();
    }
    q.trim();
}

bool IntPoly::try_divide_exact(const IntPoly& a, const IntPoly& b, IntPoly& q) {
    if (b.is_zero()) return false;
    if (a.is_zero()) {
        q = IntPoly();
        return true;
    }
    int da = a.degree(), db = b.degree();
    if (da < db) return false;
    IntPoly r = a;
    q = IntPoly();
    q.c_.assign(da - db + 1, mpz_class(0));
    while (!r.is_zero() && r.degree() >= db) {
        if (!mpz_divisible_p(r.lead().get_mpz_t(), b.lead().get_mpz_t())) return false;
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), r.lead().get_mpz_t(), b.lead().get_mpz_t());
        int k = r.degree() - db;
        q.c_[k] = c;
        for (int i = 0; i <= db; ++i) r.c_[k + i] -= c * b.c_[i];
        r.trim();
    }
    q.trim();
    return r.is_zero();
}

IntPoly IntPoly::divexact(const IntPoly& a, const IntPoly& b) {
    IntPoly q;
    if (!try_divide_exact(a, b, q))
        throw std::invalid_argument("divexact: division not exact");
    return q;
}

IntPoly IntPoly::pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_rem by zero");
    IntPoly r = a;
    int db = b.degree();
    const mpz_class& lb = b.lead();
    while (!r.is_zero() && r.degree() >= db) {
        int k = r.degree() - db;
        mpz_class c = r.lead();
        for (auto& x : r.c_) x *= lb;
        for (int i = 0; i <= db; ++i) r.c_[k + i] -= c * b.c_[i];
        r.trim();
    }
    return r;
}

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
    // Primitive PRS; degrees in this project stay small enough that the
    // repeated content extraction is cheap.
    IntPoly u = a.primitive_part(), v = b.primitive_part();
    if (u.is_zero()) return v.lead() < 0 ? (-v) : v;
    if (v.is_zero()) return u.lead() < 0 ? (-u) : u;
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        IntPoly r = pseudo_rem(u, v).primitive_part();
        u = std::move(v);
        v = std::move(r);
    }
    return u.lead() < 0 ? (-u) : u;
}

std::vector<std::pair<IntPoly, unsigned>> IntPoly::squarefree_decomposition() const {
    std::vector<std::pair<IntPoly, unsigned>> out;
    if (is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
    IntPoly p = primitive_part();
    if (p.lead() < 0) p = -p;
    if (p.degree() == 0) return out;

    // Yun's algorithm.
    IntPoly d = p.derivative();
    IntPoly a = gcd(p, d);
    IntPoly b = divexact(p, a);
    IntPoly c = divexact(d, a);
    unsigned i = 1;
    while (b.degree() > 0) {
        IntPoly t = c - b.derivative();
        IntPoly g = gcd(b, t);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = divexact(b, g);
        c = divexact(t, g);
        ++i;
    }
    return out;
}

IntPoly IntPoly::radical() const {
    auto sq = squarefree_decomposition();
    IntPoly r = IntPoly::constant(1);
    for (const auto& [g, m] : sq) r = r * g;
    return r;
}

double IntPoly::coeff_magnitude_bound(double radius) const {
    double s = 0.0, rp = 1.0;
    for (const auto& x : c_) {
        s += std::abs(mpz_class(abs(x)).get_d()) * rp;
        rp *= radius;
    }
    return s;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        mpz_class a = c_[i];
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

const IntPoly& cyclotomic_poly(unsigned m) {
    if (m == 0) throw std::invalid_argument("cyclotomic_poly: m must be >= 1");
    // Guard against runaway conductor requests before allocating.
    if (m > (1u << 20))
        throw resource_error("cyclotomic_poly: conductor exceeds configured capacity 2^20");

    static std::mutex mu;
    static std::map<unsigned, IntPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // Phi_d for all divisors d of m, small to large.
    for (uint64_t d : divisors(m)) {
        unsigned du = static_cast<unsigned>(d);
        if (cache.count(du)) continue;
        IntPoly num = IntPoly::xm_minus_one(du);
        IntPoly den = IntPoly::constant(1);
        for (uint64_t e : divisors(d))
            if (e != d) den = den * cache.at(static_cast<unsigned>(e));
        IntPoly q, r;
        IntPoly::divmod_monic(num, den, q, r);
        if (!r.is_zero())
            throw std::logic_error("cyclotomic_poly: non-exact division");
        cache.emplace(du, std::move(q));
    }
    return cache.at(m);
}

} // namespace torlab
