#include "jacpair/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace jacpair {

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) += a * o(k, j);
        }
    return r;
}

std::vector<Int> IntMatrix::operator*(const std::vector<Int>& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    std::vector<Int> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t i) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
}

std::vector<Int> SnfResult::diagonal() const {
    std::vector<Int> d;
    std::size_t n = std::min(S.rows(), S.cols());
    for (std::size_t i = 0; i < n && S(i, i) != 0; ++i) d.push_back(S(i, i));
    return d;
}

SnfResult smith_normal_form(const IntMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("smith_normal_form: empty matrix");
    const std::size_t m = a.rows(), n = a.cols();
    SnfResult res{IntMatrix::identity(m), a, IntMatrix::identity(n)};
    IntMatrix& S = res.S;
    IntMatrix& U = res.U;
    IntMatrix& V = res.V;

    std::size_t t = 0;
    const std::size_t rank_bound = std::min(m, n);
    while (t < rank_bound) {
        // Pivot: nonzero entry of minimal absolute value in the trailing block.
        std::size_t pr = t, pc = t;
        Int best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const Int& e = S(i, j);
                if (e != 0 && (best == 0 || abs(e) < best)) {
                    best = abs(e);
                    pr = i;
                    pc = j;
                }
            }
        if (best == 0) break; // trailing block is zero

        S.swap_rows(t, pr); U.swap_rows(t, pr);
        S.swap_cols(t, pc); V.swap_cols(t, pc);

        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (S(i, t) == 0) continue;
            Int q = S(i, t) / S(t, t);
            // round toward the nearer multiple to keep entries small
            if (abs(S(i, t) - q * S(t, t)) * 2 > abs(S(t, t))) q += (S(i, t) * S(t, t) > 0) ? 1 : -1;
            if (q != 0) { S.add_row(i, t, -q); U.add_row(i, t, -q); }
            if (S(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (S(t, j) == 0) continue;
            Int q = S(t, j) / S(t, t);
            if (abs(S(t, j) - q * S(t, t)) * 2 > abs(S(t, t))) q += (S(t, j) * S(t, t) > 0) ? 1 : -1;
            if (q != 0) { S.add_col(j, t, -q); V.add_col(j, t, -q); }
            if (S(t, j) != 0) clean = false;
        }
        if (!clean) continue; // smaller pivot now exists; redo this step

        // Divisibility: fold in any trailing entry the pivot does not divide.
        bool divides_all = true;
        for (std::size_t i = t + 1; i < m && divides_all; ++i)
            for (std::size_t j = t + 1; j < n && divides_all; ++j)
                if (S(i, j) % S(t, t) != 0) {
                    S.add_row(t, i, 1);
                    U.add_row(t, i, 1);
                    divides_all = false;
                }
        if (!divides_all) continue;

        if (S(t, t) < 0) { S.negate_row(t); U.negate_row(t); }
        ++t;
    }
    return res;
}

std::optional<std::vector<Rat>> solve_rational(const IntMatrix& a, const std::vector<Int>& b) {
    if (a.rows() != b.size()) throw std::invalid_argument("solve_rational: dimension mismatch");
    SnfResult snf = smith_normal_form(a);
    std::vector<Int> ub = snf.U * b;
    std::size_t k = std::min(a.rows(), a.cols());
    std::vector<Rat> y(a.cols(), Rat(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int d = (i < k) ? snf.S(i, i) : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else if (i < a.cols()) {
            y[i] = Rat(ub[i], d);
        }
    }
    std::vector<Rat> x(a.cols(), Rat(0));
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (snf.V(i, j) != 0) x[i] += Rat(snf.V(i, j)) * y[j];
    return x;
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("inverse_unimodular: not square");
    SnfResult snf = smith_normal_form(u);
    // U' u V' = I  =>  u^{-1} = V' U'
    for (std::size_t i = 0; i < u.rows(); ++i)
        if (snf.S(i, i) != 1) throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
    return snf.V * snf.U;
}

} // namespace jacpair
