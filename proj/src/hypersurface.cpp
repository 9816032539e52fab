#include "torlab/hypersurface.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "torlab/errors.hpp"
#include "torlab/numtheory.hpp"
#include "torlab/roots.hpp"

namespace torlab {

namespace {

CycElement coeff_from_string(const std::string& s) {
    if (s.rfind("cyc(", 0) == 0) {
        // cyc(m;den;c0,c1,...)
        std::string body = s.substr(4, s.size() - 5);
        std::replace(body.begin(), body.end(), ';', ' ');
        std::istringstream is(body);
        unsigned m;
        std::string den, coeffs;
        if (!(is >> m >> den >> coeffs)) throw config_error("bad cyclotomic coefficient: " + s);
        std::vector<mpz_class> cs;
        std::stringstream cl(coeffs);
        std::string tok;
        while (std::getline(cl, tok, ',')) cs.emplace_back(tok);
        return CycElement(m, IntPoly(std::move(cs)), mpz_class(den));
    }
    mpq_class q(s);
    q.canonicalize();
    return CycElement::from_rational(q);
}

std::string coeff_to_string(const CycElement& c) {
    if (c.is_rational()) return c.to_rational().get_str();
    std::ostringstream os;
    os << "cyc(" << c.conductor() << ";" << c.denominator().get_str() << ";";
    const auto& cs = c.numerator().coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << cs[i].get_str();
    os << ")";
    return os.str();
}

} // namespace

LaurentHypersurface::LaurentHypersurface(unsigned n, std::vector<LaurentTerm> terms)
    : n_(n), terms_(std::move(terms)) {
    if (n_ == 0) throw std::invalid_argument("LaurentHypersurface: ambient dimension 0");
    if (terms_.size() < 2)
        throw std::invalid_argument("LaurentHypersurface: support needs >= 2 exponents");
    for (const auto& t : terms_) {
        if (t.exponents.size() != n_)
            throw std::invalid_argument("LaurentHypersurface: exponent arity mismatch");
        if (t.coeff.is_zero()) throw std::invalid_argument("LaurentHypersurface: zero coefficient");
    }
    std::sort(terms_.begin(), terms_.end(),
              [](const LaurentTerm& a, const LaurentTerm& b) { return a.exponents < b.exponents; });
    for (std::size_t i = 0; i + 1 < terms_.size(); ++i)
        if (terms_[i].exponents == terms_[i + 1].exponents)
            throw std::invalid_argument("LaurentHypersurface: duplicate exponent vector");

    // primitive normalization in the rational case
    if (has_rational_coeffs()) {
        mpz_class den_lcm = 1;
        for (const auto& t : terms_)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                    t.coeff.to_rational().get_den().get_mpz_t());
        mpz_class num_gcd = 0;
        std::vector<mpz_class> nums;
        for (const auto& t : terms_) {
            mpq_class q = t.coeff.to_rational() * mpq_class(den_lcm);
            q.canonicalize();
            nums.push_back(q.get_num());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), nums.back().get_mpz_t());
        }
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            mpz_class v;
            mpz_divexact(v.get_mpz_t(), nums[i].get_mpz_t(), num_gcd.get_mpz_t());
            terms_[i].coeff = CycElement::from_rational(mpq_class(v));
        }
    } else {
        unsigned m = coeff_conductor();
        for (auto& t : terms_) t.coeff = t.coeff.lift_to_conductor(m);
    }
}

bool LaurentHypersurface::has_rational_coeffs() const {
    for (const auto& t : terms_)
        if (!t.coeff.is_rational()) return false;
    return true;
}

unsigned LaurentHypersurface::coeff_conductor() const {
    uint64_t m = 1;
    for (const auto& t : terms_) m = std::lcm<uint64_t>(m, t.coeff.conductor());
    return static_cast<unsigned>(m);
}

CycElement LaurentHypersurface::evaluate(const std::vector<CycElement>& x) const {
    if (x.size() != n_) throw std::invalid_argument("evaluate: arity mismatch");
    CycElement acc = CycElement::zero();
    for (const auto& t : terms_) {
        CycElement term = t.coeff;
        for (unsigned i = 0; i < n_; ++i)
            if (t.exponents[i] != 0) term = term * x[i].pow(t.exponents[i]);
        acc = acc + term;
    }
    return acc;
}

std::complex<double> LaurentHypersurface::evaluate(const std::vector<std::complex<double>>& x) const {
    if (x.size() != n_) throw std::invalid_argument("evaluate: arity mismatch");
    std::complex<double> acc = 0;
    for (const auto& t : terms_) {
        std::complex<double> term = t.coeff.embed();
        for (unsigned i = 0; i < n_; ++i) {
            if (t.exponents[i] == 0) continue;
            term *= std::pow(x[i], static_cast<double>(t.exponents[i]));
        }
        acc += term;
    }
    return acc;
}

std::vector<CycElement> LaurentHypersurface::specialize_exact(
    std::size_t var, const std::vector<CycElement>& other_values) const {
    if (other_values.size() + 1 != n_) throw std::invalid_argument("specialize: arity mismatch");
    long emin = 0, emax = 0;
    bool first = true;
    for (const auto& t : terms_) {
        long e = t.exponents[var];
        if (first) {
            emin = emax = e;
            first = false;
        } else {
            emin = std::min(emin, e);
            emax = std::max(emax, e);
        }
    }
    std::vector<CycElement> out(static_cast<std::size_t>(emax - emin) + 1, CycElement::zero());
    for (const auto& t : terms_) {
        CycElement c = t.coeff;
        std::size_t oi = 0;
        for (unsigned i = 0; i < n_; ++i) {
            if (i == var) continue;
            if (t.exponents[i] != 0) c = c * other_values[oi].pow(t.exponents[i]);
            ++oi;
        }
        std::size_t slot = static_cast<std::size_t>(t.exponents[var] - emin);
        out[slot] = out[slot] + c;
    }
    return out;
}

std::vector<std::complex<double>> LaurentHypersurface::specialize_numeric(
    std::size_t var, const std::vector<std::complex<double>>& other_values) const {
    if (other_values.size() + 1 != n_) throw std::invalid_argument("specialize: arity mismatch");
    long emin = 0, emax = 0;
    bool first = true;
    for (const auto& t : terms_) {
        long e = t.exponents[var];
        if (first) {
            emin = emax = e;
            first = false;
        } else {
            emin = std::min(emin, e);
            emax = std::max(emax, e);
        }
    }
    std::vector<std::complex<double>> out(static_cast<std::size_t>(emax - emin) + 1, 0.0);
    for (const auto& t : terms_) {
        std::complex<double> c = t.coeff.embed();
        std::size_t oi = 0;
        for (unsigned i = 0; i < n_; ++i) {
            if (i == var) continue;
            if (t.exponents[i] != 0)
                c *= std::pow(other_values[oi], static_cast<double>(t.exponents[i]));
            ++oi;
        }
        out[static_cast<std::size_t>(t.exponents[var] - emin)] += c;
    }
    return out;
}

LaurentHypersurface::Multidegree LaurentHypersurface::multidegree() const {
    Multidegree md;
    md.partial.assign(n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
        long emin = terms_[0].exponents[i], emax = emin;
        for (const auto& t : terms_) {
            emin = std::min(emin, t.exponents[i]);
            emax = std::max(emax, t.exponents[i]);
        }
        md.partial[i] = emax - emin;
    }
    md.total = std::accumulate(md.partial.begin(), md.partial.end(), 0L);
    return md;
}

IntMatrix LaurentHypersurface::difference_lattice() const {
    const auto& base = terms_[0].exponents;
    IntMatrix m(terms_.size() - 1, n_);
    for (std::size_t r = 1; r < terms_.size(); ++r)
        for (unsigned j = 0; j < n_; ++j)
            m.at(r - 1, j) = terms_[r].exponents[j] - base[j];
    return m;
}

std::string LaurentHypersurface::to_document() const {
    std::ostringstream os;
    os << "laurent-hypersurface v1\n";
    os << "n " << n_ << "\n";
    for (const auto& t : terms_) {
        os << "term";
        for (long e : t.exponents) os << " " << e;
        os << " " << coeff_to_string(t.coeff) << "\n";
    }
    return os.str();
}

LaurentHypersurface LaurentHypersurface::parse_document(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "laurent-hypersurface v1")
        throw config_error("hypersurface document: bad header");
    unsigned n = 0;
    std::vector<LaurentTerm> terms;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "n") {
            ls >> n;
        } else if (kw == "term") {
            if (n == 0) throw config_error("hypersurface document: n before terms");
            LaurentTerm t;
            t.exponents.resize(n);
            for (unsigned i = 0; i < n; ++i)
                if (!(ls >> t.exponents[i])) throw config_error("hypersurface document: bad exponents");
            std::string cs;
            if (!(ls >> cs)) throw config_error("hypersurface document: missing coefficient");
            t.coeff = coeff_from_string(cs);
            terms.push_back(std::move(t));
        } else {
            throw config_error("hypersurface document: unknown keyword " + kw);
        }
    }
    return LaurentHypersurface(n, std::move(terms));
}

namespace {

struct PolyParser {
    std::string s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        skip_ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    bool peek_alpha() {
        skip_ws();
        return pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]));
    }

    mpq_class parse_number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        std::string num = s.substr(start, pos - start);
        if (eat('/')) {
            skip_ws();
            std::size_t ds = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return mpq_class(num + "/" + s.substr(ds, pos - ds));
        }
        return mpq_class(num);
    }

    long parse_int() {
        skip_ws();
        bool neg = eat('-');
        if (!peek_digit()) throw config_error("poly parse: expected integer at " + std::to_string(pos));
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        long v = std::stol(s.substr(start, pos - start));
        return neg ? -v : v;
    }

    // variable name -> index: x,y,z,w or x1..xn
    int parse_var() {
        skip_ws();
        char c = s[pos++];
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            if (c != 'x') throw config_error("poly parse: indexed variables use x1..xn");
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            int idx = std::stoi(s.substr(start, pos - start));
            if (idx < 1) throw config_error("poly parse: variable index must be >= 1");
            return idx - 1;
        }
        switch (c) {
            case 'x': return 0;
            case 'y': return 1;
            case 'z': return 2;
            case 'w': return 3;
            default: throw config_error(std::string("poly parse: unknown variable ") + c);
        }
    }
};

} // namespace

LaurentHypersurface LaurentHypersurface::parse_poly(const std::string& expr, unsigned n) {
    PolyParser p{expr};
    std::vector<std::pair<std::map<int, long>, mpq_class>> raw;
    int max_var = -1;

    bool first_term = true;
    for (;;) {
        p.skip_ws();
        if (p.pos >= p.s.size()) break;
        int sign = 1;
        if (p.eat('+')) {
        } else if (p.eat('-')) {
            sign = -1;
        } else if (!first_term) {
            throw config_error("poly parse: expected + or - at " + std::to_string(p.pos));
        }
        first_term = false;

        mpq_class coeff(sign);
        std::map<int, long> exps;
        bool any_factor = false;
        for (;;) {
            if (p.peek_digit()) {
                coeff *= p.parse_number();
                any_factor = true;
            } else if (p.peek_alpha()) {
                int v = p.parse_var();
                max_var = std::max(max_var, v);
                long e = 1;
                if (p.eat('^')) e = p.parse_int();
                exps[v] += e;
                any_factor = true;
            } else {
                break;
            }
            if (!p.eat('*')) {
                // allow implicit products like 2x or x y
                if (!(p.peek_digit() || p.peek_alpha())) break;
            }
        }
        if (!any_factor) throw config_error("poly parse: empty term");
        coeff.canonicalize();
        if (coeff == 0) continue;
        raw.emplace_back(std::move(exps), std::move(coeff));
    }

    unsigned dim = n > 0 ? n : static_cast<unsigned>(std::max(max_var + 1, 1));
    std::map<std::vector<long>, mpq_class> acc;
    for (auto& [exps, c] : raw) {
        std::vector<long> key(dim, 0);
        for (auto& [v, e] : exps) {
            if (static_cast<unsigned>(v) >= dim)
                throw config_error("poly parse: variable index beyond ambient dimension");
            key[static_cast<std::size_t>(v)] = e;
        }
        acc[key] += c;
    }
    std::vector<LaurentTerm> terms;
    for (auto& [key, c] : acc) {
        c.canonicalize();
        if (c == 0) continue;
        LaurentTerm t;
        t.exponents = key;
        t.coeff = CycElement::from_rational(c);
        terms.push_back(std::move(t));
    }
    return LaurentHypersurface(dim, std::move(terms));
}

std::string LaurentHypersurface::to_string() const {
    static const char* names[] = {"x", "y", "z", "w"};
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string cs = it->coeff.to_string();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        std::string mag = neg ? cs.substr(1) : cs;
        bool monic_term = (mag == "1");
        bool any_var = false;
        for (long e : it->exponents)
            if (e != 0) any_var = true;
        if (!monic_term || !any_var) os << mag;
        bool star = !monic_term && any_var;
        for (unsigned i = 0; i < n_; ++i) {
            long e = it->exponents[i];
            if (e == 0) continue;
            if (star) os << "*";
            star = true;
            if (n_ <= 4) os << names[i];
            else os << "x" << (i + 1);
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

mpz_class StabilizerDescr::torsion_order() const {
    mpz_class o = 1;
    for (const auto& d : torsion_invariants) o *= d;
    return o;
}

StabilizerDescr stabilizer(const LaurentHypersurface& f) {
    IntMatrix a = f.difference_lattice();
    SmithResult snf = smith_normal_form(a);
    const unsigned n = f.ambient_dim();
    auto inv = snf.invariant_factors();
    unsigned rank = static_cast<unsigned>(inv.size());

    StabilizerDescr out;
    out.dim = n - rank;
    for (const auto& d : inv)
        if (d > 1) out.torsion_invariants.push_back(d);

    // theta = V psi with d_i psi_i integral: torsion generators are columns of
    // V at invariant factors > 1 (order d_i), free generators the columns
    // beyond the rank.
    std::size_t gens = out.torsion_invariants.size() + out.dim;
    out.generators = IntMatrix(gens, n);
    std::size_t row = 0;
    for (unsigned i = 0; i < rank; ++i) {
        if (inv[i] <= 1) continue;
        for (unsigned l = 0; l < n; ++l) out.generators.at(row, l) = snf.v.at(l, i);
        out.generator_orders.push_back(inv[i]);
        ++row;
    }
    for (unsigned j = rank; j < n; ++j) {
        for (unsigned l = 0; l < n; ++l) out.generators.at(row, l) = snf.v.at(l, j);
        out.generator_orders.push_back(0);
        ++row;
    }
    return out;
}

CosetTestResult torsion_coset_test(const LaurentHypersurface& f) {
    CosetTestResult out;
    if (!f.is_binomial()) return out;
    out.is_coset = true;
    // c_v x^v + c_w x^w = 0 <=> x^{v-w} = -c_w / c_v
    CycElement ratio = -(f.terms()[0].coeff / f.terms()[1].coeff);
    out.torsion = ratio.is_root_of_unity();
    return out;
}

namespace {

// Deterministic sample points for the character heuristic: specialize all
// variables but one to fixed rationals, solve numerically for the last.
std::vector<std::vector<std::complex<double>>> heuristic_points(const LaurentHypersurface& f,
                                                                std::size_t count) {
    const unsigned n = f.ambient_dim();
    static const mpq_class pool[] = {mpq_class(3, 2), mpq_class(-2), mpq_class(5, 3),
                                     mpq_class(7, 4), mpq_class(-3, 2), mpq_class(9, 5),
                                     mpq_class(-5, 4), mpq_class(11, 7), mpq_class(4, 3)};
    const std::size_t pool_size = sizeof(pool) / sizeof(pool[0]);

    // pick a variable with positive spread to solve for
    auto md = f.multidegree();
    std::size_t var = 0;
    for (unsigned i = 0; i < n; ++i)
        if (md.partial[i] > 0) var = i;

    std::vector<std::vector<std::complex<double>>> pts;
    std::size_t offset = 0;
    while (pts.size() < count && offset < 5 * count) {
        std::vector<std::complex<double>> others(n - 1);
        for (std::size_t i = 0; i < others.size(); ++i)
            others[i] = std::complex<double>(pool[(offset + i) % pool_size].get_d(), 0.0);
        ++offset;
        auto uni = f.specialize_numeric(var, others);
        std::vector<std::complex<double>> roots;
        try {
            roots = roots_complex_coeffs(uni, 1e-8);
        } catch (const numeric_error&) {
            continue;
        }
        for (const auto& r : roots) {
            if (std::abs(r) < 1e-9) continue;
            std::vector<std::complex<double>> p(n);
            std::size_t oi = 0;
            for (unsigned i = 0; i < n; ++i) {
                if (i == var) p[i] = r;
                else p[i] = others[oi++];
            }
            pts.push_back(std::move(p));
            if (pts.size() >= count) break;
        }
    }
    return pts;
}

bool next_character(std::vector<long>& k, long bound) {
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] < bound) {
            ++k[i];
            for (std::size_t j = 0; j < i; ++j) k[j] = -bound;
            return true;
        }
    }
    return false;
}

} // namespace

Generates generates_ambient(const LaurentHypersurface& f, long char_bound) {
    const unsigned n = f.ambient_dim();
    if (f.is_binomial() && n >= 2) return Generates::No;
    IntMatrix diff = f.difference_lattice();
    if (n == 2 && !f.is_binomial() && diff.rank() == 2) return Generates::Yes;

    // Heuristic: characters chi_k must be non-constant on Z; test at sampled
    // points. A character constant across all samples is treated as a
    // containment witness (conservative No).
    auto pts = heuristic_points(f, 4);
    if (pts.size() < 3) return Generates::No;

    std::vector<long> k(n, -char_bound);
    k[0] -= 1; // so the first next_character yields (-bound, ..., -bound)
    while (next_character(k, char_bound)) {
        bool all_zero = true;
        for (long v : k)
            if (v != 0) all_zero = false;
        if (all_zero) continue;
        // skip non-primitive and sign-duplicate vectors
        long g = 0;
        for (long v : k) g = static_cast<long>(std::gcd(g, std::abs(v)));
        if (g > 1) continue;
        long first_nonzero = 0;
        for (long v : k)
            if (v != 0) {
                first_nonzero = v;
                break;
            }
        if (first_nonzero < 0) continue;

        bool nonconstant = false;
        std::complex<double> ref = 0;
        bool have_ref = false;
        for (const auto& p : pts) {
            std::complex<double> chi = 1;
            for (unsigned i = 0; i < n; ++i) chi *= std::pow(p[i], static_cast<double>(k[i]));
            if (!have_ref) {
                ref = chi;
                have_ref = true;
            } else if (std::abs(chi - ref) > 1e-6 * (1.0 + std::abs(ref))) {
                nonconstant = true;
                break;
            }
        }
        if (!nonconstant) return Generates::No;
    }
    return Generates::HeuristicYes;
}

std::vector<TorusPoint> faltings_zhang(const std::vector<TorusPoint>& tuple) {
    if (tuple.empty()) throw std::invalid_argument("faltings_zhang: empty tuple");
    const std::size_t n = tuple[0].dim();
    for (const auto& p : tuple)
        if (p.dim() != n) throw std::invalid_argument("faltings_zhang: mixed ambient dimensions");
    std::vector<TorusPoint> out;
    out.reserve(tuple.size() - 1);
    for (std::size_t i = 1; i < tuple.size(); ++i) out.push_back(tuple[i].div(tuple[0]));
    return out;
}

TorusPoint TorsionPair::as_point() const {
    return TorusPoint(std::vector<CycElement>{CycElement::zeta(o1, static_cast<long>(j1)),
                                              CycElement::zeta(o2, static_cast<long>(j2))});
}

unsigned TorsionPair::order() const { return static_cast<unsigned>(std::lcm(o1, o2)); }

std::vector<TorsionPair> torsion_pairs_up_to(unsigned m_max) {
    // roots of unity as reduced fractions j/o: (0, 1) is the identity,
    // otherwise gcd(j, o) = 1 with 1 <= j < o
    std::vector<std::pair<unsigned, unsigned>> roots{{0, 1}};
    for (unsigned o = 2; o <= m_max; ++o)
        for (unsigned j = 1; j < o; ++j)
            if (std::gcd(j, o) == 1) roots.emplace_back(j, o);
    std::vector<TorsionPair> out;
    for (auto [j1, o1] : roots)
        for (auto [j2, o2] : roots)
            if (std::lcm(o1, o2) <= m_max) out.push_back({j1, o1, j2, o2});
    return out;
}

bool fz_fiber_is_stab_orbit(const LaurentHypersurface& f, const std::vector<TorusPoint>& tuple,
                            unsigned m_max, std::vector<TorusPoint>* candidates_out) {
    if (f.ambient_dim() != 2)
        throw std::invalid_argument("fz_fiber_is_stab_orbit: ambient dimension must be 2");
    if (tuple.empty()) throw std::invalid_argument("fz_fiber_is_stab_orbit: empty tuple");
    IntMatrix diff = f.difference_lattice();

    bool equal = true;
    if (candidates_out) candidates_out->clear();
    for (const TorsionPair& b : torsion_pairs_up_to(m_max)) {
        // exact membership of b in Stab: every difference row pairs to an integer
        bool in_stab = true;
        for (std::size_t r = 0; r < diff.rows() && in_stab; ++r) {
            // d1*j1/o1 + d2*j2/o2 integral <=> (d1 j1 o2 + d2 j2 o1) % (o1 o2) == 0
            mpz_class num = diff.at(r, 0) * b.j1 * b.o2 + diff.at(r, 1) * b.j2 * b.o1;
            in_stab = mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(b.o1) * b.o2);
        }
        // candidate: b*x_i stays on Z for every tuple entry
        bool candidate = true;
        TorusPoint bp = b.as_point();
        for (const auto& x : tuple) {
            TorusPoint shifted = bp.mul(x);
            if (!f.evaluate(shifted.exact_coords()).is_zero()) {
                candidate = false;
                break;
            }
        }
        if (candidate && candidates_out) candidates_out->push_back(bp);
        if (candidate != in_stab) equal = false;
    }
    return equal;
}

} // namespace torlab
