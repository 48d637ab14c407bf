#ifndef JACPAIR_MATRIX_HPP
#define JACPAIR_MATRIX_HPP

#include "jacpair/ints.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace jacpair {

/// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix operator*(const IntMatrix& o) const;
    std::vector<Int> operator*(const std::vector<Int>& v) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    /// row i += c * row j
    void add_row(std::size_t i, std::size_t j, const Int& c);
    /// col i += c * col j
    void add_col(std::size_t i, std::size_t j, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

private:
    std::size_t rows_, cols_;
    std::vector<Int> entries_;
};

/// U * A * V = S with U, V unimodular and S in Smith normal form.
struct SnfResult {
    IntMatrix U, S, V;

    /// Nonzero diagonal entries d1 | d2 | ... of S.
    std::vector<Int> diagonal() const;
};

SnfResult smith_normal_form(const IntMatrix& a);

/// Exact rational solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_rational(const IntMatrix& a, const std::vector<Int>& b);

/// Integer inverse of a unimodular matrix.
IntMatrix inverse_unimodular(const IntMatrix& u);

} // namespace jacpair

#endif
