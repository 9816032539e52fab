#include "torlab/int_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace torlab {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

mpz_class IntMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant: square matrix required");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : mpz_class(-m.at(n - 1, n - 1));
}

std::size_t IntMatrix::rank() const {
    // Fraction-free elimination; enough for the small matrices in play.
    IntMatrix m = *this;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
        std::size_t p = rank;
        while (p < rows_ && m.at(p, col) == 0) ++p;
        if (p == rows_) continue;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(rank, j), m.at(p, j));
        for (std::size_t i = rank + 1; i < rows_; ++i) {
            if (m.at(i, col) == 0) continue;
            mpz_class a = m.at(rank, col), b = m.at(i, col);
            for (std::size_t j = 0; j < cols_; ++j)
                m.at(i, j) = m.at(i, j) * a - m.at(rank, j) * b;
        }
        ++rank;
    }
    return rank;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j) os << at(i, j).get_str() << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? ";\n" : "]");
    }
    return os.str();
}

std::vector<mpz_class> SmithResult::invariant_factors() const {
    std::vector<mpz_class> out;
    std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i)
        if (d.at(i, i) != 0) out.push_back(d.at(i, i));
    return out;
}

namespace {

struct SnfWork {
    IntMatrix a, u, v;

    void row_swap(std::size_t r, std::size_t s) {
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(r, j), a.at(s, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(r, j), u.at(s, j));
    }
    void col_swap(std::size_t r, std::size_t s) {
        for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, r), a.at(i, s));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, r), v.at(i, s));
    }
    // row r -= q * row s
    void row_axpy(std::size_t r, std::size_t s, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < a.cols(); ++j) a.at(r, j) -= q * a.at(s, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(r, j) -= q * u.at(s, j);
    }
    // col r -= q * col s
    void col_axpy(std::size_t r, std::size_t s, const mpz_class& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < a.rows(); ++i) a.at(i, r) -= q * a.at(i, s);
        for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, r) -= q * v.at(i, s);
    }
    void row_negate(std::size_t r) {
        for (std::size_t j = 0; j < a.cols(); ++j) a.at(r, j) = -a.at(r, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(r, j) = -u.at(r, j);
    }
};

} // namespace

SmithResult smith_normal_form(const IntMatrix& input) {
    SnfWork w{input, IntMatrix::identity(input.rows()), IntMatrix::identity(input.cols())};
    const std::size_t R = input.rows(), C = input.cols();
    const std::size_t N = std::min(R, C);

    for (std::size_t t = 0; t < N; ++t) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        std::size_t pi = t, pj = t;
        bool found = false;
        mpz_class best;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (w.a.at(i, j) == 0) continue;
                mpz_class v = abs(w.a.at(i, j));
                if (!found || v < best) {
                    found = true;
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != t) w.row_swap(t, pi);
        if (pj != t) w.col_swap(t, pj);

        // Clear row and column t; gcd steps may reintroduce entries, loop
        // until both are clean.
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (w.a.at(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), w.a.at(i, t).get_mpz_t(), w.a.at(t, t).get_mpz_t());
                w.row_axpy(i, t, q);
                if (w.a.at(i, t) != 0) {
                    w.row_swap(t, i); // remainder is smaller: Euclid step
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (w.a.at(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), w.a.at(t, j).get_mpz_t(), w.a.at(t, t).get_mpz_t());
                w.col_axpy(j, t, q);
                if (w.a.at(t, j) != 0) {
                    w.col_swap(t, j);
                    dirty = true;
                }
            }
            if (!dirty) break;
        }

        // Enforce the divisibility chain: d_t must divide every entry of the
        // trailing block; otherwise fold the offending row in and redo.
        bool redo = false;
        for (std::size_t i = t + 1; i < R && !redo; ++i)
            for (std::size_t j = t + 1; j < C && !redo; ++j)
                if (!mpz_divisible_p(w.a.at(i, j).get_mpz_t(), w.a.at(t, t).get_mpz_t())) {
                    w.row_axpy(t, i, mpz_class(-1)); // add row i to row t
                    redo = true;
                }
        if (redo) {
            --t;
            continue;
        }
        if (w.a.at(t, t) < 0) w.row_negate(t);
    }

    return SmithResult{w.a, w.u, w.v};
}

} // namespace torlab
