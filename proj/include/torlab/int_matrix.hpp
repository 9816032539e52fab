#ifndef TORLAB_INT_MATRIX_HPP
#define TORLAB_INT_MATRIX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace torlab {

/// Dense integer matrix, row-major exact entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, mpz_class(0)) {}
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpz_class& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    /// Fraction-free (Bareiss) determinant; requires a square matrix.
    mpz_class determinant() const;
    /// Rank over Q.
    std::size_t rank() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> e_;
};

/// D = U * A * V with U, V unimodular, D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithResult {
    IntMatrix d, u, v;
    /// Nonzero diagonal entries in divisibility order.
    std::vector<mpz_class> invariant_factors() const;
};

SmithResult smith_normal_form(const IntMatrix& a);

} // namespace torlab

#endif
