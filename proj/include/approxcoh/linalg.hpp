#pragma once

// Dense linear algebra over a finite field F (PrimeModulus or ExtensionField).

#include <optional>
#include <vector>

#include "field.hpp"

namespace approxcoh {

class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Residue& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    Residue operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    const std::vector<Residue>& data() const noexcept { return a_; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator<(const Matrix& a, const Matrix& b) noexcept {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        return a.a_ < b.a_;
    }

   private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Residue> a_;
};

/// In-place reduced row echelon form; returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        const Residue inv = f.inv(m(row, col));
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Residue factor = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(const F& f, Matrix m) {
    return rref(f, m).size();
}

template <class F>
Matrix multiply(const F& f, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw PreconditionError("matrix shape mismatch in product");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
        }
    return c;
}

template <class F>
Matrix add(const F& f, const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("matrix shape mismatch in sum");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
    return c;
}

template <class F>
Matrix sub(const F& f, const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw PreconditionError("matrix shape mismatch in difference");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.sub(a(i, j), b(i, j));
    return c;
}

template <class F>
Matrix scale(const F& f, Residue c, const Matrix& a) {
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = f.mul(c, a(i, j));
    return r;
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline bool is_zero(const Matrix& a) {
    for (auto v : a.data())
        if (v != 0) return false;
    return true;
}

/// Solves A X = B (B may have several columns). Returns one solution with free variables set to zero.
template <class F>
std::optional<Matrix> solve(const F& f, const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw PreconditionError("row mismatch in solve");
    Matrix aug(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
    }
    const auto pivots = rref(f, aug);
    Matrix x(a.cols(), b.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] >= a.cols()) return std::nullopt;  // inconsistent row
        for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[r], j) = aug(r, a.cols() + j);
    }
    return x;
}

/// Basis of the right kernel {x : A x = 0}, one vector per column of the result.
template <class F>
Matrix kernel(const F& f, const Matrix& a) {
    Matrix m = a;
    const auto pivots = rref(f, m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix k(a.cols(), free.size());
    for (std::size_t t = 0; t < free.size(); ++t) {
        k(free[t], t) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) k(pivots[r], t) = f.neg(m(r, free[t]));
    }
    return k;
}

}  // namespace approxcoh
