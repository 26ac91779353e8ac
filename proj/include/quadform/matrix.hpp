#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quadform/errors.hpp"
#include "quadform/rational.hpp"

namespace quadform {

// Dense row-major matrix of exact rationals. Indices are 0-based in code; the
// formulas quoted in comments use the usual 1-based convention.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) throw dimension_mismatch("matrix dimensions must be positive");
    }

    Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0) throw dimension_mismatch("matrix dimensions must be positive");
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw dimension_mismatch("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix column(const std::vector<Rational>& values) {
        Matrix m(values.size(), 1);
        for (std::size_t i = 0; i < values.size(); ++i) m(i, 0) = values[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[index(i, j)]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!quadform::is_zero(v)) return false;
        return true;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix row(std::size_t i) const {
        Matrix r(1, cols_);
        for (std::size_t j = 0; j < cols_; ++j) r(0, j) = (*this)(i, j);
        return r;
    }

    Matrix col(std::size_t j) const {
        Matrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
        return c;
    }

    std::size_t count_nonzero() const {
        std::size_t k = 0;
        for (const auto& v : data_)
            if (!quadform::is_zero(v)) ++k;
        return k;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    Matrix& operator*=(const Rational& s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("matrix index (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
        return i * cols_ + j;
    }

    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
inline Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
inline Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
inline Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
inline Matrix operator-(Matrix a) { return a *= Rational(-1); }

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw dimension_mismatch("matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

// Symmetric matrix holding only the upper triangle, so (i,j) and (j,i) can never disagree.
class SymMatrix {
public:
    SymMatrix() = default;

    explicit SymMatrix(std::size_t n) : n_(n), data_(n * (n + 1) / 2) {
        if (n == 0) throw dimension_mismatch("matrix dimensions must be positive");
    }

    static SymMatrix diagonal(const std::vector<Rational>& diag) {
        SymMatrix s(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) s.set(i, i, diag[i]);
        return s;
    }

    // Throws asymmetry_detected unless m is exactly symmetric.
    static SymMatrix from_matrix(const Matrix& m) {
        if (!m.is_square()) throw dimension_mismatch("symmetric matrix must be square");
        if (!m.is_symmetric()) throw asymmetry_detected("matrix is not symmetric");
        return from_upper(m);
    }

    // (M + M^T) / 2
    static SymMatrix symmetrize(const Matrix& m) {
        if (!m.is_square()) throw dimension_mismatch("symmetric matrix must be square");
        SymMatrix s(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, (m(i, j) + m(j, i)) / 2);
        return s;
    }

    std::size_t dim() const noexcept { return n_; }

    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
    void set(std::size_t i, std::size_t j, const Rational& v) { data_[index(i, j)] = v; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!quadform::is_zero(v)) return false;
        return true;
    }

    bool is_diagonal() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (!quadform::is_zero((*this)(i, j))) return false;
        return true;
    }

    // Nonzero entries on or above the diagonal, i.e. nonzero monomials of x^T S x.
    std::size_t count_nonzero_upper() const {
        std::size_t k = 0;
        for (const auto& v : data_)
            if (!quadform::is_zero(v)) ++k;
        return k;
    }

    Matrix to_matrix() const {
        Matrix m(n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    friend SymMatrix operator-(SymMatrix s) {
        for (auto& v : s.data_) v = -v;
        return s;
    }

    friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }

private:
    static SymMatrix from_upper(const Matrix& m) {
        SymMatrix s(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, m(i, j));
        return s;
    }

    std::size_t index(std::size_t i, std::size_t j) const {
        if (i >= n_ || j >= n_)
            throw std::out_of_range("symmetric matrix index (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ") outside dimension " + std::to_string(n_));
        if (i > j) std::swap(i, j);
        // row-packed upper triangle
        return i * n_ - i * (i + 1) / 2 + j;
    }

    std::size_t n_ = 0;
    std::vector<Rational> data_;
};

inline std::ostream& operator<<(std::ostream& os, const SymMatrix& s) { return os << s.to_matrix(); }

// ---------------------------------------------------------------------------
// Exact elimination helpers.

namespace detail {

// Reduces m in place to row echelon form; returns the pivot columns.
inline std::vector<std::size_t> row_echelon(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (is_zero(m(i, c))) continue;
            const Rational f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(Matrix m) { return detail::row_echelon(m).size(); }

inline std::size_t nullity(const Matrix& m) { return m.cols() - rank(m); }

// Solves a X = rhs for square nonsingular a. Throws singular_transform otherwise.
inline Matrix solve(const Matrix& a, const Matrix& rhs) {
    if (!a.is_square() || rhs.rows() != a.rows()) throw dimension_mismatch("solve: shape mismatch");
    const std::size_t n = a.rows();
    Matrix aug(n, n + rhs.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < rhs.cols(); ++j) aug(i, n + j) = rhs(i, j);
    }
    const auto pivots = detail::row_echelon(aug);
    if (pivots.size() < n || pivots.back() >= n) throw singular_transform("matrix is singular");
    Matrix x(n, rhs.cols());
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = 0; j < rhs.cols(); ++j) {
            Rational acc = aug(ii, n + j);
            for (std::size_t k = ii + 1; k < n; ++k) acc -= aug(ii, k) * x(k, j);
            x(ii, j) = acc / aug(ii, ii);
        }
    }
    return x;
}

inline Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

// Matrix of a linear map on n x n matrices, acting on the row-major vectorisation.
inline Matrix operator_matrix(std::size_t n, const std::function<Matrix(const Matrix&)>& op) {
    const std::size_t nn = n * n;
    Matrix m(nn, nn);
    for (std::size_t k = 0; k < nn; ++k) {
        Matrix basis(n, n);
        basis(k / n, k % n) = 1;
        const Matrix image = op(basis);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i * n + j, k) = image(i, j);
    }
    return m;
}

inline Matrix vectorize(const Matrix& m) {
    Matrix v(m.rows() * m.cols(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v(i * m.cols() + j, 0) = m(i, j);
    return v;
}

inline Matrix unvectorize(const Matrix& v, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = v(i * cols + j, 0);
    return m;
}

}  // namespace quadform
