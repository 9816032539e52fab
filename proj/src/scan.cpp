#include "torlab/scan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "torlab/errors.hpp"
#include "torlab/factor.hpp"
#include "torlab/numtheory.hpp"
#include "torlab/parallel.hpp"

namespace torlab {

std::string point_source_name(PointSource s) {
    switch (s) {
        case PointSource::Torsion: return "torsion";
        case PointSource::CurveSection: return "curve-section";
        case PointSource::CorpusProduct: return "corpus-product";
    }
    return "curve-section";
}

namespace {

double log_max_ratio(const mpq_class& q) {
    mpz_class num = abs(mpz_class(q.get_num()));
    const mpz_class& den = q.get_den();
    const mpz_class& m = num >= den ? num : den;
    signed long e;
    double mant = mpz_get_d_2exp(&e, m.get_mpz_t());
    return std::log(std::abs(mant)) + static_cast<double>(e) * std::log(2.0);
}

// Height memo for cyclotomic values, seeded with every conjugate after a
// computation (conjugates share the height, and corpus sections walk whole
// Galois orbits).
class HeightCache {
public:
    double height(const CycElement& v) {
        if (v.is_root_of_unity()) return 0.0;
        if (v.is_rational()) return log_max_ratio(v.to_rational());
        std::string key = v.canonical_key();
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        double h = weil_height_cyc(v);
        std::lock_guard<std::mutex> lock(mu_);
        for (const auto& c : v.conjugates()) map_.emplace(c.canonical_key(), h);
        return h;
    }

private:
    std::mutex mu_;
    std::map<std::string, double> map_;
};

} // namespace

std::vector<CorpusValue> corpus_values(const CorpusSpec& spec) {
    if (spec.max_numerator < 1 || spec.max_denominator < 1 || spec.max_order < 1)
        throw std::invalid_argument("corpus_values: caps must be positive");

    // positive reduced rationals in the box
    std::vector<mpq_class> mags;
    for (long num = 1; num <= spec.max_numerator; ++num)
        for (long den = 1; den <= spec.max_denominator; ++den) {
            if (std::gcd(num, den) != 1) continue;
            mags.emplace_back(num, den);
        }
    std::sort(mags.begin(), mags.end(), [](const mpq_class& a, const mpq_class& b) {
        return a < b;
    });

    // angle fractions j/o: identity plus primitive fractions up to max_order;
    // the sign of the rational folds into the angle (+1/2 turn)
    std::vector<std::pair<unsigned, unsigned>> angles{{0, 1}};
    for (unsigned o = 2; o <= spec.max_order; ++o)
        for (unsigned j = 1; j < o; ++j)
            if (std::gcd(j, o) == 1) angles.emplace_back(j, o);

    std::set<std::pair<std::string, std::pair<unsigned, unsigned>>> seen;
    std::vector<CorpusValue> out;
    for (const auto& mag : mags) {
        double h = log_max_ratio(mag);
        for (int sign = 0; sign < 2; ++sign) {
            for (auto [j, o] : angles) {
                if (!spec.include_products && mag != 1 && o != 1) continue;
                // canonical angle including the sign of the rational
                unsigned long oo = sign ? std::lcm<unsigned long>(o, 2) : o;
                unsigned long jj = (static_cast<unsigned long>(j) * (oo / o) + (sign ? oo / 2 : 0)) % oo;
                unsigned long g = std::gcd(jj == 0 ? oo : jj, oo);
                jj /= g;
                oo /= g;
                auto key = std::make_pair(mag.get_str(),
                                          std::make_pair(static_cast<unsigned>(jj),
                                                         static_cast<unsigned>(oo)));
                if (!seen.insert(key).second) continue;
                CycElement v = CycElement::from_rational(mag, 1) *
                               CycElement::zeta(static_cast<unsigned>(oo), static_cast<long>(jj));
                out.push_back(CorpusValue{std::move(v), h});
            }
        }
    }
    return out;
}

TorsionEnumResult torsion_points_on_curve(const LaurentHypersurface& f, unsigned m_max) {
    if (f.ambient_dim() != 2)
        throw std::invalid_argument("torsion_points_on_curve: curves in G_m^2 only");
    if (m_max < 1) throw std::invalid_argument("torsion_points_on_curve: m_max must be >= 1");
    TorsionEnumResult result;
    auto coset = torsion_coset_test(f);
    if (coset.is_coset && coset.torsion) {
        result.coset_detected = true;
        return result;
    }

    // roots of unity up to the order cap, as reduced angle fractions
    std::vector<std::pair<unsigned, unsigned>> roots{{0, 1}};
    for (unsigned o = 2; o <= m_max; ++o)
        for (unsigned j = 1; j < o; ++j)
            if (std::gcd(j, o) == 1) roots.emplace_back(j, o);
    const std::size_t R = roots.size();

    // distinct exponents per variable, term -> (x-exp slot, y-exp slot, coeff)
    std::vector<long> xe, ye;
    for (const auto& t : f.terms()) {
        xe.push_back(t.exponents[0]);
        ye.push_back(t.exponents[1]);
    }
    std::sort(xe.begin(), xe.end());
    xe.erase(std::unique(xe.begin(), xe.end()), xe.end());
    std::sort(ye.begin(), ye.end());
    ye.erase(std::unique(ye.begin(), ye.end()), ye.end());
    struct TermIdx {
        std::size_t xi, yi;
        std::complex<double> c;
    };
    std::vector<TermIdx> terms;
    double scale = 0.0;
    for (const auto& t : f.terms()) {
        TermIdx ti;
        ti.xi = static_cast<std::size_t>(std::lower_bound(xe.begin(), xe.end(), t.exponents[0]) -
                                         xe.begin());
        ti.yi = static_cast<std::size_t>(std::lower_bound(ye.begin(), ye.end(), t.exponents[1]) -
                                         ye.begin());
        ti.c = t.coeff.embed();
        scale += std::abs(ti.c);
        terms.push_back(ti);
    }
    const double tol = 1e-6 * scale;

    // power tables: value^e for each distinct exponent, via angle arithmetic
    auto power_table = [&](const std::vector<long>& exps) {
        std::vector<std::vector<std::complex<double>>> table(R,
                                                             std::vector<std::complex<double>>(
                                                                 exps.size()));
        for (std::size_t r = 0; r < R; ++r) {
            auto [j, o] = roots[r];
            for (std::size_t k = 0; k < exps.size(); ++k) {
                long e = ((exps[k] % static_cast<long>(o)) + o) % static_cast<long>(o);
                double ang = 2.0 * M_PI * static_cast<double>(e) * static_cast<double>(j) /
                             static_cast<double>(o);
                table[r][k] = {std::cos(ang), std::sin(ang)};
            }
        }
        return table;
    };
    auto xpow = power_table(xe);
    auto ypow = power_table(ye);

    // numeric prefilter, parallel over the alpha axis with per-slot results
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> hits(R);
    parallel_for(R, [&](std::size_t a) {
        // fold alpha powers into the coefficients once per alpha
        std::vector<std::complex<double>> ca(terms.size());
        for (std::size_t t = 0; t < terms.size(); ++t) ca[t] = terms[t].c * xpow[a][terms[t].xi];
        for (std::size_t b = 0; b < R; ++b) {
            std::complex<double> acc = 0;
            for (std::size_t t = 0; t < terms.size(); ++t) acc += ca[t] * ypow[b][terms[t].yi];
            if (std::abs(acc.real()) + std::abs(acc.imag()) < tol) hits[a].emplace_back(a, b);
        }
    });

    // exact verification of the candidates
    for (std::size_t a = 0; a < R; ++a) {
        for (auto [ia, ib] : hits[a]) {
            auto [j1, o1] = roots[ia];
            auto [j2, o2] = roots[ib];
            unsigned m = static_cast<unsigned>(std::lcm(o1, o2));
            std::vector<CycElement> coords{CycElement::zeta(o1, j1).lift_to_conductor(m),
                                           CycElement::zeta(o2, j2).lift_to_conductor(m)};
            if (f.evaluate(coords).is_zero()) result.points.emplace_back(std::move(coords));
        }
    }
    return result;
}

std::vector<SmallPointRecord> essential_locus_filter(const LaurentHypersurface& f,
                                                     std::vector<SmallPointRecord> records) {
    auto coset = torsion_coset_test(f);
    if (coset.is_coset) return {}; // the curve equals a coset: Z° is empty
    return records;
}

namespace {

// Specialized polynomial in y with exact zero trimming; returns the shifted
// dense coefficients and whether the whole specialization vanished.
struct Specialized {
    std::vector<CycElement> coeffs; // trailing/leading exact zeros removed
    bool identically_zero = false;
};

Specialized specialize_section(const LaurentHypersurface& f, const CycElement& x0) {
    Specialized out;
    auto dense = f.specialize_exact(1, {x0});
    std::size_t lo = 0, hi = dense.size();
    while (lo < hi && dense[lo].is_zero()) ++lo;
    while (hi > lo && dense[hi - 1].is_zero()) --hi;
    if (lo == hi) {
        out.identically_zero = true;
        return out;
    }
    out.coeffs.assign(dense.begin() + static_cast<std::ptrdiff_t>(lo),
                      dense.begin() + static_cast<std::ptrdiff_t>(hi));
    return out;
}

bool all_rational(const std::vector<CycElement>& v) {
    for (const auto& c : v)
        if (!c.is_rational()) return false;
    return true;
}

IntPoly clear_to_int_poly(const std::vector<CycElement>& coeffs) {
    mpz_class den_lcm = 1;
    for (const auto& c : coeffs)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                c.to_rational().get_den().get_mpz_t());
    std::vector<mpz_class> ic(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        mpq_class q = coeffs[i].to_rational() * mpq_class(den_lcm);
        q.canonicalize();
        ic[i] = q.get_num();
    }
    return IntPoly(std::move(ic));
}

// Galois norm of a cyclotomic-coefficient polynomial: the product of the
// conjugate polynomials has rational coefficients and is divisible by the
// minimal polynomial of every root.
IntPoly norm_poly(const std::vector<CycElement>& coeffs, unsigned m) {
    std::vector<CycElement> acc{CycElement::one(m)};
    for (uint64_t a : units_mod(m)) {
        std::vector<CycElement> conj(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            conj[i] = (m == 1) ? coeffs[i] : coeffs[i].lift_to_conductor(m).galois(a);
        std::vector<CycElement> next(acc.size() + conj.size() - 1, CycElement::zero(m));
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < conj.size(); ++j)
                next[i + j] = next[i + j] + acc[i] * conj[j];
        acc = std::move(next);
    }
    std::vector<CycElement> rational(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (!acc[i].is_rational()) throw std::logic_error("norm_poly: non-rational coefficient");
        rational[i] = acc[i];
    }
    return clear_to_int_poly(rational).primitive_part();
}

AlgebraicNumber exact_to_algebraic(const CycElement& v) {
    IntPoly mp = v.min_poly();
    return AlgebraicNumber{mp, v.embed(), 1e-12};
}

} // namespace

std::vector<SmallPointRecord> small_point_scan(const LaurentHypersurface& f,
                                               const CorpusSpec& corpus, double bound,
                                               const std::string& curve_id, ScanAudit* audit) {
    if (f.ambient_dim() != 2)
        throw std::invalid_argument("small_point_scan: curves in G_m^2 only");
    if (!(bound > 0)) throw std::invalid_argument("small_point_scan: bound must be positive");

    std::vector<SmallPointRecord> records;
    std::set<std::string> seen;
    HeightCache cache;

    // torsion stratum
    auto torsion = torsion_points_on_curve(f, corpus.max_order);
    if (torsion.coset_detected) {
        if (audit) audit->skip("torsion coset: height-zero stratum not enumerable");
    } else {
        for (auto& p : torsion.points) {
            if (!seen.insert(p.canonical_key()).second) continue;
            records.push_back(SmallPointRecord{std::move(p), 0.0, PointSource::Torsion, curve_id});
        }
    }

    const double slack = 1e-12; // height comparisons at the certification edge
    for (const auto& cv : corpus_values(corpus)) {
        if (cv.height > bound + slack) continue;
        const CycElement& x0 = cv.value;
        auto spec = specialize_section(f, x0);
        if (spec.identically_zero) {
            if (audit)
                audit->skip("vertical line x = " + x0.to_string() + " contained in the curve");
            continue;
        }
        if (spec.coeffs.size() == 1) continue; // no y solutions
        PointSource source =
            x0.is_rational() || x0.is_root_of_unity() ? PointSource::CurveSection
                                                      : PointSource::CorpusProduct;

        if (spec.coeffs.size() == 2) {
            // linear: y = -c0/c1, exact at any conductor
            CycElement y = -(spec.coeffs[0] / spec.coeffs[1]);
            if (y.is_zero()) continue;
            double hy = cache.height(y);
            if (cv.height + hy > bound + slack) continue;
            TorusPoint p(std::vector<CycElement>{x0, y});
            if (!seen.insert(p.canonical_key()).second) continue;
            records.push_back(SmallPointRecord{std::move(p), cv.height + hy, source, curve_id});
            continue;
        }

        // degree >= 2: reduce to an integer polynomial (directly or via the
        // Galois norm), factor, and match roots back to the section
        IntPoly target;
        bool via_norm = false;
        if (all_rational(spec.coeffs)) {
            target = clear_to_int_poly(spec.coeffs);
        } else {
            via_norm = true;
            unsigned m = 1;
            for (const auto& c : spec.coeffs) m = static_cast<unsigned>(std::lcm<uint64_t>(m, c.conductor()));
            if (euler_phi(m) * (spec.coeffs.size() - 1) > kDefaultFactorDegreeCap) {
                if (audit)
                    audit->skip("norm degree " +
                                std::to_string(euler_phi(m) * (spec.coeffs.size() - 1)) +
                                " beyond factorization cap at x = " + x0.to_string());
                continue;
            }
            target = norm_poly(spec.coeffs, m);
        }

        Factorization fact;
        try {
            fact = factor_squarefree_rational(target);
        } catch (const capability_error& e) {
            if (audit) audit->skip(std::string("factorization cap: ") + e.what());
            continue;
        }

        // numeric section values for root matching
        std::vector<std::complex<double>> sc(spec.coeffs.size());
        double sscale = 0;
        for (std::size_t i = 0; i < sc.size(); ++i) {
            sc[i] = spec.coeffs[i].embed();
            sscale = std::max(sscale, std::abs(sc[i]));
        }
        auto section_residual = [&](std::complex<double> y) {
            std::complex<double> acc = 0;
            for (std::size_t i = sc.size(); i-- > 0;) acc = acc * y + sc[i];
            return std::abs(acc);
        };

        for (const auto& [g, mult] : fact.factors) {
            (void)mult;
            if (g.degree() < 1) continue;
            if (g.degree() == 1 && g.coeff(0) == 0) continue; // y = 0 not on the torus
            double hy = std::log(mahler_measure(g)) / static_cast<double>(g.degree());
            if (cv.height + hy > bound + slack) continue;
            std::vector<AlgebraicNumber> roots;
            try {
                roots = algebraic_roots_of(g);
            } catch (const numeric_error&) {
                if (audit) audit->skip("root certification failed for a section factor");
                continue;
            }
            for (const auto& r : roots) {
                if (via_norm && section_residual(r.approx) > 1e-10 * std::max(1.0, sscale))
                    continue; // conjugate root not on this section
                TorusPoint p(std::vector<AlgebraicNumber>{exact_to_algebraic(x0), r});
                if (!seen.insert(p.canonical_key()).second) continue;
                records.push_back(SmallPointRecord{std::move(p), cv.height + hy, source, curve_id});
            }
        }
    }

    std::sort(records.begin(), records.end(), [](const SmallPointRecord& a, const SmallPointRecord& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.point.canonical_key() < b.point.canonical_key();
    });
    return records;
}

std::vector<ScanReport> uniform_scan(const SupportFamily& fam,
                                     const std::vector<MemberParams>& members,
                                     std::vector<double> thresholds, const CorpusSpec& corpus) {
    if (thresholds.empty()) throw std::invalid_argument("uniform_scan: empty threshold grid");
    std::sort(thresholds.begin(), thresholds.end());
    const double bound = thresholds.back();

    // the family's fixed degree: multidegree of the full support
    std::vector<LaurentTerm> generic;
    for (const auto& e : fam.entries())
        generic.push_back(LaurentTerm{e.exponents, CycElement::one()});
    const long family_degree = LaurentHypersurface(fam.ambient_dim(), generic).multidegree().total;

    // degree precondition checked up front, before any parallel work
    std::vector<LaurentHypersurface> fibers;
    std::vector<std::string> ids;
    fibers.reserve(members.size());
    for (const auto& params : members) {
        std::string id;
        for (const auto& [k, v] : params) {
            if (!id.empty()) id += ",";
            id += k + "=" + v.to_string();
        }
        LaurentHypersurface f = fam.instantiate_named(params);
        if (f.multidegree().total != family_degree)
            throw std::invalid_argument("uniform_scan: member " + id +
                                        " breaks the family degree " +
                                        std::to_string(family_degree));
        fibers.push_back(std::move(f));
        ids.push_back(std::move(id));
    }

    std::vector<ScanReport> reports(members.size());
    std::mutex err_mu;
    std::string first_error;
    parallel_for(members.size(), [&](std::size_t mi) {
        ScanReport rep;
        rep.thresholds = thresholds;
        rep.member_id = ids[mi];
        const std::string& id = ids[mi];
        const LaurentHypersurface& f = fibers[mi];
        try {
        auto stab = stabilizer(f);
        if (!stab.is_finite()) {
            rep.skip_reason = "finite-stabilizer";
            reports[mi] = std::move(rep);
            return;
        }
        if (generates_ambient(f) == Generates::No) {
            rep.skip_reason = "generates-ambient";
            reports[mi] = std::move(rep);
            return;
        }
        rep.accepted = true;

        ScanAudit audit;
        auto raw = small_point_scan(f, corpus, bound, id, &audit);
        std::size_t before = raw.size();
        auto records = essential_locus_filter(f, std::move(raw));
        rep.filtered_count = before - records.size();

        rep.counts.assign(thresholds.size(), 0);
        for (const auto& r : records) {
            for (std::size_t t = 0; t < thresholds.size(); ++t)
                if (r.height <= thresholds[t] + 1e-12) ++rep.counts[t];
            if (r.height > 1e-9 &&
                (!rep.min_positive_height || r.height < *rep.min_positive_height))
                rep.min_positive_height = r.height;
            if (r.source == PointSource::Torsion ||
                (r.point.exact() && r.point.is_torsion()))
                ++rep.torsion_count;
        }
        reports[mi] = std::move(rep);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (first_error.empty()) first_error = "member " + id + ": " + e.what();
        }
    });
    if (!first_error.empty()) throw numeric_error("uniform_scan: " + first_error);

    // running family maximum on the smallest threshold >= 0.05 (or the last)
    std::size_t tgt = thresholds.size() - 1;
    for (std::size_t t = 0; t < thresholds.size(); ++t)
        if (thresholds[t] >= 0.05 - 1e-12) {
            tgt = t;
            break;
        }
    std::size_t running_max = 0;
    bool first = true;
    for (auto& rep : reports) {
        if (!rep.accepted) continue;
        if (!first && rep.counts[tgt] > running_max) rep.exceeds_family_max = true;
        running_max = std::max(running_max, rep.counts[tgt]);
        first = false;
    }
    return reports;
}

} // namespace torlab
