#include "torlab/family.hpp"

#include <algorithm>
#include <sstream>

#include "torlab/errors.hpp"

namespace torlab {

SupportFamily::SupportFamily(unsigned n, std::vector<Entry> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n_ == 0) throw std::invalid_argument("SupportFamily: ambient dimension 0");
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.exponents < b.exponents; });
    free_count_ = 0;
    for (const auto& e : entries_) {
        if (e.exponents.size() != n_)
            throw std::invalid_argument("SupportFamily: exponent arity mismatch");
        if (!e.fixed) {
            ++free_count_;
            if (e.param_name.empty())
                throw std::invalid_argument("SupportFamily: free parameter needs a name");
        } else if (e.fixed->is_zero()) {
            throw std::invalid_argument("SupportFamily: fixed coefficient must be nonzero");
        }
    }
    for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
        if (entries_[i].exponents == entries_[i + 1].exponents)
            throw std::invalid_argument("SupportFamily: duplicate exponent vector");
    // A family with no free parameters is a single fixed fiber; pinning on it
    // is trivial (empty point list, fiber dimension 0), so it stays legal.
}

std::vector<std::string> SupportFamily::param_names() const {
    std::vector<std::string> out;
    for (const auto& e : entries_)
        if (!e.fixed) out.push_back(e.param_name);
    return out;
}

LaurentHypersurface SupportFamily::instantiate(const std::vector<CycElement>& params) const {
    if (params.size() != free_count_)
        throw std::invalid_argument("SupportFamily: parameter count mismatch");
    std::vector<LaurentTerm> terms;
    std::size_t pi = 0;
    for (const auto& e : entries_) {
        CycElement c = e.fixed ? *e.fixed : params[pi++];
        if (c.is_zero()) continue; // a vanishing free coefficient drops the monomial
        terms.push_back(LaurentTerm{e.exponents, c});
    }
    return LaurentHypersurface(n_, std::move(terms));
}

LaurentHypersurface SupportFamily::instantiate_named(
    const std::vector<std::pair<std::string, CycElement>>& params) const {
    std::vector<CycElement> ordered(free_count_);
    std::vector<bool> seen(free_count_, false);
    auto names = param_names();
    for (const auto& [name, value] : params) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            throw std::invalid_argument("SupportFamily: unknown parameter " + name);
        std::size_t idx = static_cast<std::size_t>(it - names.begin());
        ordered[idx] = value;
        seen[idx] = true;
    }
    for (std::size_t i = 0; i < free_count_; ++i)
        if (!seen[i]) throw std::invalid_argument("SupportFamily: missing parameter " + names[i]);
    return instantiate(ordered);
}

SupportFamily::MembershipRow SupportFamily::membership_row(const TorusPoint& p) const {
    if (p.dim() != n_) throw std::invalid_argument("membership_row: dimension mismatch");
    const auto& x = p.exact_coords();
    MembershipRow row;
    row.coeffs.reserve(free_count_);
    row.rhs = CycElement::zero();
    for (const auto& e : entries_) {
        CycElement mono = CycElement::one();
        for (unsigned i = 0; i < n_; ++i)
            if (e.exponents[i] != 0) mono = mono * x[i].pow(e.exponents[i]);
        if (e.fixed) {
            row.rhs = row.rhs - (*e.fixed) * mono;
        } else {
            row.coeffs.push_back(mono);
        }
    }
    return row;
}

std::string SupportFamily::to_document() const {
    std::ostringstream os;
    os << "support-family v1\n";
    os << "n " << n_ << "\n";
    for (const auto& e : entries_) {
        os << "term";
        for (long v : e.exponents) os << " " << v;
        if (e.fixed) {
            os << " " << (e.fixed->is_rational()
                              ? e.fixed->to_rational().get_str()
                              : e.fixed->to_string());
        } else {
            os << " ?" << e.param_name;
        }
        os << "\n";
    }
    return os.str();
}

SupportFamily SupportFamily::parse_document(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "support-family v1")
        throw config_error("family document: bad header");
    unsigned n = 0;
    std::vector<Entry> entries;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "n") {
            ls >> n;
        } else if (kw == "term") {
            if (n == 0) throw config_error("family document: n before terms");
            Entry e;
            e.exponents.resize(n);
            for (unsigned i = 0; i < n; ++i)
                if (!(ls >> e.exponents[i])) throw config_error("family document: bad exponents");
            std::string cs;
            if (!(ls >> cs)) throw config_error("family document: missing coefficient");
            if (cs[0] == '?') {
                e.param_name = cs.substr(1);
                if (e.param_name.empty()) throw config_error("family document: empty parameter name");
            } else {
                mpq_class q(cs);
                q.canonicalize();
                e.fixed = CycElement::from_rational(q);
            }
            entries.push_back(std::move(e));
        } else {
            throw config_error("family document: unknown keyword " + kw);
        }
    }
    return SupportFamily(n, std::move(entries));
}

std::string SupportFamily::to_string() const {
    std::ostringstream os;
    os << "family(n=" << n_ << ",";
    for (const auto& e : entries_) {
        os << " [";
        for (std::size_t i = 0; i < e.exponents.size(); ++i) os << (i ? "," : "") << e.exponents[i];
        os << "]:" << (e.fixed ? e.fixed->to_string() : "?" + e.param_name);
    }
    os << ")";
    return os.str();
}

namespace {

// Incremental exact row echelon over the cyclotomic field for the augmented
// system [coeffs | rhs].
struct EchelonState {
    std::size_t cols;
    // rows in echelon form; pivot_col[i] is the pivot of row i
    std::vector<std::vector<CycElement>> rows; // each of size cols + 1 (rhs last)
    std::vector<std::size_t> pivot_col;

    explicit EchelonState(std::size_t c) : cols(c) {}

    enum class AddResult { RankUp, Inconsistent, Redundant };

    AddResult add(std::vector<CycElement> row, CycElement rhs) {
        row.push_back(rhs);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::size_t pc = pivot_col[r];
            if (!row[pc].is_zero()) {
                CycElement factor = row[pc] / rows[r][pc];
                for (std::size_t j = 0; j <= cols; ++j) row[j] = row[j] - factor * rows[r][j];
            }
        }
        std::size_t pivot = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (!row[j].is_zero()) {
                pivot = j;
                break;
            }
        if (pivot == cols) {
            return row[cols].is_zero() ? AddResult::Redundant : AddResult::Inconsistent;
        }
        rows.push_back(std::move(row));
        pivot_col.push_back(pivot);
        return AddResult::RankUp;
    }
};

} // namespace

PinningCertificate pinning_points(const SupportFamily& fam, const std::vector<TorusPoint>& corpus) {
    PinningCertificate cert;
    EchelonState ech(fam.free_count());
    for (const auto& p : corpus) {
        if (ech.rows.size() == fam.free_count()) break;
        auto row = fam.membership_row(p);
        if (ech.add(std::move(row.coeffs), row.rhs) == EchelonState::AddResult::RankUp)
            cert.points.push_back(p);
    }
    cert.residual_rank = static_cast<unsigned>(ech.rows.size());
    cert.fiber_dim = static_cast<unsigned>(fam.free_count()) - cert.residual_rank;
    return cert;
}

bool nondegenerate_power(const SupportFamily& fam, unsigned u, const std::vector<TorusPoint>& corpus) {
    if (u < 1) throw std::invalid_argument("nondegenerate_power: u must be >= 1");
    PinningCertificate cert = pinning_points(fam, corpus);
    return cert.fiber_dim == 0 && cert.points.size() <= u;
}

} // namespace torlab
