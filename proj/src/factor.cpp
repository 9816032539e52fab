#include "torlab/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "torlab/errors.hpp"
#include "torlab/numtheory.hpp"

namespace torlab {

namespace {

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p a small odd prime. Coefficients in [0, p).
// ---------------------------------------------------------------------------

using PPoly = std::vector<uint64_t>; // constant term first, trimmed

void pp_trim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int pp_deg(const PPoly& f) { return static_cast<int>(f.size()) - 1; }

PPoly pp_from_int(const IntPoly& f, uint64_t p) {
    PPoly r(f.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        mpz_class c = f.coeff(i) % static_cast<long>(p);
        if (c < 0) c += static_cast<long>(p);
        r[i] = c.get_ui();
    }
    pp_trim(r);
    return r;
}

uint64_t pp_inv_scalar(uint64_t a, uint64_t p) {
    // Fermat; p prime, a != 0
    uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

PPoly pp_scale(PPoly f, uint64_t s, uint64_t p) {
    for (auto& c : f) c = c * s % p;
    pp_trim(f);
    return f;
}

PPoly pp_monic(const PPoly& f, uint64_t p) {
    if (f.empty()) return f;
    return pp_scale(f, pp_inv_scalar(f.back(), p), p);
}

PPoly pp_mul(const PPoly& a, const PPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    pp_trim(r);
    return r;
}

void pp_divmod(const PPoly& a, const PPoly& b, PPoly& q, PPoly& r, uint64_t p) {
    r = a;
    q.clear();
    if (b.empty()) throw std::invalid_argument("pp_divmod by zero");
    if (pp_deg(a) < pp_deg(b)) return;
    q.assign(a.size() - b.size() + 1, 0);
    uint64_t binv = pp_inv_scalar(b.back(), p);
    while (pp_deg(r) >= pp_deg(b)) {
        std::size_t k = r.size() - b.size();
        uint64_t c = r.back() * binv % p;
        q[k] = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
            uint64_t sub = c * b[i] % p;
            r[k + i] = (r[k + i] + p - sub) % p;
        }
        pp_trim(r);
    }
}

PPoly pp_mod(const PPoly& a, const PPoly& b, uint64_t p) {
    PPoly q, r;
    pp_divmod(a, b, q, r, p);
    return r;
}

PPoly pp_gcd(PPoly a, PPoly b, uint64_t p) {
    while (!b.empty()) {
        PPoly r = pp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : pp_monic(a, p);
}

// s*a + t*b = 1 for coprime a, b
void pp_ext_gcd(const PPoly& a, const PPoly& b, PPoly& s, PPoly& t, uint64_t p) {
    PPoly r0 = a, r1 = b;
    PPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        PPoly q, r;
        pp_divmod(r0, r1, q, r, p);
        auto step = [&](PPoly& x0, PPoly& x1) {
            PPoly qx = pp_mul(q, x1, p);
            PPoly nx(std::max(x0.size(), qx.size()), 0);
            for (std::size_t i = 0; i < x0.size(); ++i) nx[i] = x0[i];
            for (std::size_t i = 0; i < qx.size(); ++i) nx[i] = (nx[i] + p - qx[i]) % p;
            pp_trim(nx);
            x0 = std::move(x1);
            x1 = std::move(nx);
        };
        step(s0, s1);
        step(t0, t1);
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    if (pp_deg(r0) != 0) throw std::logic_error("pp_ext_gcd: inputs not coprime");
    uint64_t inv = pp_inv_scalar(r0[0], p);
    s = pp_scale(s0, inv, p);
    t = pp_scale(t0, inv, p);
}

PPoly pp_pow_x(uint64_t e, const PPoly& f, uint64_t p) {
    // x^e mod f by square and multiply
    PPoly base{0, 1}, acc{1};
    while (e) {
        if (e & 1) acc = pp_mod(pp_mul(acc, base, p), f, p);
        base = pp_mod(pp_mul(base, base, p), f, p);
        e >>= 1;
    }
    return acc;
}

PPoly pp_derivative(const PPoly& f, uint64_t p) {
    PPoly r;
    if (f.size() <= 1) return r;
    r.resize(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * (i % p) % p;
    pp_trim(r);
    return r;
}

// ---------------------------------------------------------------------------
// Berlekamp factorization of a squarefree monic f over F_p.
// ---------------------------------------------------------------------------

std::vector<PPoly> berlekamp(const PPoly& f, uint64_t p) {
    int n = pp_deg(f);
    if (n <= 1) return {f};

    // Rows of Q: x^(p*i) mod f, i = 0..n-1.
    std::vector<std::vector<uint64_t>> q(n, std::vector<uint64_t>(n, 0));
    PPoly xp = pp_pow_x(p, f, p);
    PPoly cur{1};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= pp_deg(cur); ++j) q[i][j] = cur[j];
        cur = pp_mod(pp_mul(cur, xp, p), f, p);
    }
    // Q - I, then null space over F_p.
    for (int i = 0; i < n; ++i) q[i][i] = (q[i][i] + p - 1) % p;

    // Gaussian elimination on the transpose convention: we want v with
    // v * (Q - I) = 0, i.e. kernel of the matrix acting on row vectors; take
    // kernel of (Q - I)^T acting on column vectors.
    std::vector<std::vector<uint64_t>> m(n, std::vector<uint64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = q[j][i];

    std::vector<int> pivot_col_of_row(n, -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pr = -1;
        for (int i = rank; i < n; ++i)
            if (m[i][col] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[rank], m[pr]);
        uint64_t inv = pp_inv_scalar(m[rank][col], p);
        for (int j = 0; j < n; ++j) m[rank][j] = m[rank][j] * inv % p;
        for (int i = 0; i < n; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            uint64_t c = m[i][col];
            for (int j = 0; j < n; ++j) m[i][j] = (m[i][j] + p - c * m[rank][j] % p) % p;
        }
        pivot_col_of_row[rank] = col;
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (int i = 0; i < rank; ++i) is_pivot[pivot_col_of_row[i]] = true;

    std::vector<PPoly> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        PPoly v(n, 0);
        v[col] = 1;
        for (int i = 0; i < rank; ++i)
            v[pivot_col_of_row[i]] = (p - m[i][col]) % p;
        pp_trim(v);
        basis.push_back(std::move(v));
    }
    // The number of irreducible factors equals dim ker(Q - I).
    std::size_t expected = static_cast<std::size_t>(n - rank);

    std::vector<PPoly> factors{pp_monic(f, p)};
    for (const PPoly& v : basis) {
        if (factors.size() >= expected) break;
        if (pp_deg(v) < 1) continue; // constant vector splits nothing
        std::vector<PPoly> next;
        for (const PPoly& g : factors) {
            if (pp_deg(g) <= 1) {
                next.push_back(g);
                continue;
            }
            PPoly rem = g;
            for (uint64_t s = 0; s < p && pp_deg(rem) > 0; ++s) {
                PPoly vs = v;
                vs[0] = (vs[0] + p - s) % p;
                pp_trim(vs);
                PPoly h = pp_gcd(rem, vs, p);
                if (pp_deg(h) >= 1 && pp_deg(h) < pp_deg(rem)) {
                    next.push_back(h);
                    PPoly q2, r2;
                    pp_divmod(rem, h, q2, r2, p);
                    rem = pp_monic(q2, p);
                }
            }
            if (pp_deg(rem) >= 1) next.push_back(rem);
        }
        factors = std::move(next);
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

// ---------------------------------------------------------------------------
// Hensel lifting. Convention: g monic; h carries the leading coefficient.
// ---------------------------------------------------------------------------

mpz_class symmetric_mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

IntPoly poly_mod(const IntPoly& f, const mpz_class& m, bool symmetric) {
    std::vector<mpz_class> c = f.coeffs();
    for (auto& x : c) {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        if (symmetric && 2 * x > m) x -= m;
    }
    return IntPoly(std::move(c));
}

IntPoly poly_from_pp(const PPoly& f) {
    std::vector<mpz_class> c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = static_cast<unsigned long>(f[i]);
    return IntPoly(std::move(c));
}

// Lift f = g*h (mod p^k) to (mod p^{k+1}); g monic, lc(h) corrected to lc(f).
// s*g + t*h = 1 (mod p) precomputed. All polynomials in symmetric range.
void hensel_step(const IntPoly& f, IntPoly& g, IntPoly& h, const PPoly& s, const PPoly& t,
                 uint64_t p, const mpz_class& pk) {
    mpz_class pk1 = pk * static_cast<long>(p);
    // Pin lc(h) to lc(f) mod p^{k+1} so f - g*h drops degree.
    {
        std::vector<mpz_class> hc = h.coeffs();
        hc.back() = symmetric_mod(f.lead(), pk1);
        h = IntPoly(std::move(hc));
    }
    IntPoly e = f - g * h;
    // e is divisible by p^k
    std::vector<mpz_class> ec = e.coeffs();
    for (auto& x : ec) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
        x = q;
    }
    PPoly ep = pp_from_int(IntPoly(std::move(ec)), p);
    PPoly gp = pp_from_int(g, p);
    PPoly hp = pp_from_int(h, p);

    // a*h + b*g = e (mod p), deg a < deg g
    PPoly te = pp_mul(t, ep, p);
    PPoly a = pp_mod(te, gp, p);
    // b = (e - a*h)/g mod p
    PPoly ah = pp_mul(a, hp, p);
    PPoly num(std::max(ep.size(), ah.size()), 0);
    for (std::size_t i = 0; i < ep.size(); ++i) num[i] = ep[i];
    for (std::size_t i = 0; i < ah.size(); ++i) num[i] = (num[i] + p - ah[i]) % p;
    pp_trim(num);
    PPoly b, rem;
    pp_divmod(num, gp, b, rem, p);
    if (!rem.empty()) throw std::logic_error("hensel_step: correction not divisible");

    IntPoly gn = g + poly_from_pp(a) * IntPoly::constant(pk);
    IntPoly hn = h + poly_from_pp(b) * IntPoly::constant(pk);
    g = poly_mod(gn, pk1, true);
    // keep g monic exactly
    {
        std::vector<mpz_class> gc = g.coeffs();
        gc.back() = 1;
        g = IntPoly(std::move(gc));
    }
    h = poly_mod(hn, pk1, true);
}

// Lift the full modular factor list of f to mod p^K (K = p^steps target).
// factors monic mod p; returns factors mod p^K (monic, symmetric range).
std::vector<IntPoly> hensel_lift_tree(const IntPoly& f, std::vector<PPoly> factors, uint64_t p,
                                      const mpz_class& target);

std::vector<IntPoly> hensel_lift_split(const IntPoly& f, const std::vector<PPoly>& factors,
                                       std::size_t lo, std::size_t hi, uint64_t p,
                                       const mpz_class& target) {
    // factors[lo, hi) multiply (with lc f) to f mod p; hi - lo >= 2 here.
    std::size_t mid = lo + (hi - lo) / 2;
    PPoly gp{1};
    for (std::size_t i = lo; i < mid; ++i) gp = pp_mul(gp, factors[i], p);
    PPoly hp{1};
    for (std::size_t i = mid; i < hi; ++i) hp = pp_mul(hp, factors[i], p);
    // distribute lc(f) onto the h side
    mpz_class lcn = f.lead() % static_cast<long>(p);
    if (lcn < 0) lcn += static_cast<long>(p);
    hp = pp_scale(hp, lcn.get_ui(), p);

    PPoly s, t;
    pp_ext_gcd(gp, hp, s, t, p);

    IntPoly g = poly_from_pp(gp);
    IntPoly h = poly_from_pp(hp);
    g = poly_mod(g, mpz_class(static_cast<long>(p)), true);
    h = poly_mod(h, mpz_class(static_cast<long>(p)), true);
    mpz_class pk = static_cast<long>(p);
    while (pk < target) {
        hensel_step(f, g, h, s, t, p, pk);
        pk *= static_cast<long>(p);
    }
    // Recurse: g is monic with known factorization {factors[lo,mid)},
    // h has lc(f) and factorization lc*{factors[mid,hi)}.
    std::vector<IntPoly> left, right;
    if (mid - lo == 1) {
        left.push_back(g);
    } else {
        left = hensel_lift_split(g, factors, lo, mid, p, target);
    }
    if (hi - mid == 1) {
        // make h monic mod target: h = lc * u
        mpz_class lc = h.lead();
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t()) == 0)
            throw std::logic_error("hensel: lc not invertible");
        right.push_back(poly_mod(h * IntPoly::constant(inv), target, true));
    } else {
        right = hensel_lift_split(h, factors, mid, hi, p, target);
    }
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

std::vector<IntPoly> hensel_lift_tree(const IntPoly& f, std::vector<PPoly> factors, uint64_t p,
                                      const mpz_class& target) {
    if (factors.size() == 1) {
        // f irreducible mod p; caller handles this case before lifting.
        mpz_class lc = f.lead(), inv;
        if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t()) == 0)
            throw std::logic_error("hensel: lc not invertible");
        return {poly_mod(f * IntPoly::constant(inv), target, true)};
    }
    return hensel_lift_split(f, factors, 0, factors.size(), p, target);
}

// ---------------------------------------------------------------------------
// Landau-Mignotte style bound on coefficients of factors (times lc).
// ---------------------------------------------------------------------------

mpz_class factor_coeff_bound(const IntPoly& f) {
    // |b_i| <= 2^n * ||f||_2 for any monic-scaled divisor; multiply by |lc|
    // for the lc-adjusted candidates and double for the symmetric range.
    mpz_class norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    root += 1;
    mpz_class pow2 = 1;
    mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), static_cast<unsigned>(f.degree() + 1));
    return pow2 * root * abs(f.lead());
}

// ---------------------------------------------------------------------------
// Zassenhaus: factor a primitive squarefree polynomial with positive lead.
// ---------------------------------------------------------------------------

std::vector<IntPoly> factor_primitive_squarefree(IntPoly f, unsigned degree_cap) {
    std::vector<IntPoly> out;
    if (f.degree() <= 0) return out;
    if (f.degree() == 1) {
        out.push_back(f);
        return out;
    }
    if (static_cast<unsigned>(f.degree()) > degree_cap)
        throw capability_error("factor_squarefree_rational: degree " +
                               std::to_string(f.degree()) + " exceeds cap " +
                               std::to_string(degree_cap));

    // Strip x | f upfront (guaranteed squarefree input may still have one x).
    unsigned v = f.valuation_at_zero();
    if (v > 0) {
        out.push_back(IntPoly::monomial(1));
        f = f.shift_down(v);
        if (f.degree() == 0) return out;
        auto rest = factor_primitive_squarefree(f, degree_cap);
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    }

    // Smallest odd prime with squarefree reduction and nonvanishing lead.
    uint64_t p = 0;
    for (uint64_t cand = 2;; ++cand) {
        if (!is_prime_u64(cand)) continue;
        if (mpz_divisible_ui_p(f.lead().get_mpz_t(), cand)) continue;
        PPoly fp = pp_from_int(f, cand);
        if (pp_deg(fp) != f.degree()) continue;
        PPoly g = pp_gcd(fp, pp_derivative(fp, cand), cand);
        if (pp_deg(g) == 0) {
            p = cand;
            break;
        }
        if (cand > 10000) throw std::logic_error("factor: no usable prime found");
    }

    PPoly fp = pp_monic(pp_from_int(f, p), p);
    std::vector<PPoly> modular = berlekamp(fp, p);
    if (modular.size() == 1) {
        out.push_back(f); // irreducible mod p => irreducible over Q
        return out;
    }

    // Lift to p^K beyond twice the coefficient bound.
    mpz_class bound = factor_coeff_bound(f);
    mpz_class target = static_cast<long>(p);
    while (target <= 2 * bound) target *= static_cast<long>(p);
    std::vector<IntPoly> lifted = hensel_lift_tree(f, modular, p, target);

    // Subset recombination.
    std::vector<IntPoly> pool = lifted;
    IntPoly rem = f;
    bool progress = true;
    while (progress && !pool.empty()) {
        progress = false;
        std::size_t r = pool.size();
        for (std::size_t size = 1; size <= r / 2 + (r % 2) && !progress; ++size) {
            // enumerate subsets of given size via bitmask combinations
            std::vector<std::size_t> idx(size);
            for (std::size_t i = 0; i < size; ++i) idx[i] = i;
            for (;;) {
                // candidate = lc(rem) * prod pool[idx] mod target, symmetric
                IntPoly cand = IntPoly::constant(rem.lead());
                for (std::size_t i : idx) {
                    cand = poly_mod(cand * pool[i], target, true);
                }
                IntPoly candpp = cand.primitive_part();
                if (candpp.lead() < 0) candpp = -candpp;
                IntPoly q;
                if (candpp.degree() >= 1 && IntPoly::try_divide_exact(rem, candpp, q)) {
                    out.push_back(candpp);
                    rem = q;
                    // remove used modular factors
                    std::vector<IntPoly> np;
                    std::size_t ii = 0;
                    for (std::size_t i = 0; i < pool.size(); ++i) {
                        if (ii < idx.size() && idx[ii] == i) {
                            ++ii;
                            continue;
                        }
                        np.push_back(pool[i]);
                    }
                    pool = std::move(np);
                    progress = true;
                    break;
                }
                // next combination
                std::size_t k = size;
                while (k > 0 && idx[k - 1] == r - size + (k - 1)) --k;
                if (k == 0) break;
                ++idx[k - 1];
                for (std::size_t j = k; j < size; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        // When no subset of size <= r/2 works the remainder is irreducible.
        if (!progress) break;
        if (rem.degree() == 0) break;
    }
    if (rem.degree() >= 1) {
        IntPoly r2 = rem.primitive_part();
        if (r2.lead() < 0) r2 = -r2;
        out.push_back(r2);
    }
    return out;
}

} // namespace

IntPoly Factorization::reassemble() const {
    IntPoly p = IntPoly::constant(content * sign);
    for (const auto& [f, m] : factors)
        for (unsigned i = 0; i < m; ++i) p = p * f;
    return p;
}

Factorization factor_squarefree_rational(const IntPoly& p, unsigned degree_cap) {
    if (p.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    Factorization out;
    out.content = p.content();
    out.sign = p.lead() < 0 ? -1 : 1;
    if (p.degree() == 0) return out;
    if (static_cast<unsigned>(p.degree()) > degree_cap)
        throw capability_error("factor_squarefree_rational: degree " +
                               std::to_string(p.degree()) + " exceeds cap " +
                               std::to_string(degree_cap));

    for (const auto& [g, mult] : p.squarefree_decomposition()) {
        for (const IntPoly& f : factor_primitive_squarefree(g, degree_cap))
            out.factors.emplace_back(f, mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

bool is_irreducible(const IntPoly& p, unsigned degree_cap) {
    if (p.degree() < 1) return false;
    auto f = factor_squarefree_rational(p, degree_cap);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

} // namespace torlab
