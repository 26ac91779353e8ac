#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "quadform/errors.hpp"
#include "quadform/matrix.hpp"
#include "quadform/system.hpp"

namespace quadform {

enum class OperatorMode { Continuous, Discrete };

inline OperatorMode operator_mode(Kind k) {
    return k == Kind::Continuous ? OperatorMode::Continuous : OperatorMode::Discrete;
}

namespace detail {

// A^T M for the shift matrix A: moves every row down by one, zero first row.
inline Matrix shift_rows_down(const Matrix& m, std::size_t by = 1) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = by; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i - by, j);
    return out;
}

// M A for the shift matrix A: moves every column right by one, zero first column.
inline Matrix shift_cols_right(const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 1; j < m.cols(); ++j) out(i, j) = m(i, j - 1);
    return out;
}

inline std::vector<std::vector<Rational>> binomial_rows(std::size_t up_to) {
    std::vector<std::vector<Rational>> c(up_to + 1);
    for (std::size_t m = 0; m <= up_to; ++m) {
        c[m].assign(m + 1, Rational(1));
        for (std::size_t a = 1; a < m; ++a) c[m][a] = c[m - 1][a - 1] + c[m - 1][a];
    }
    return c;
}

}  // namespace detail

// The nilpotent operators built on the canonical shift matrix A of dimension n:
//   continuous  L P = A^T P + P A
//   discrete    L P = A^T P A
// X_0 P stacks the last rows of L^0 P, ..., L^{n-1} P; X_i P = (A^T)^i X_0 P.
// A itself is never taken as a parameter.
class MatrixOperators {
public:
    MatrixOperators(OperatorMode mode, std::size_t n) : mode_(mode), n_(n) {
        if (n == 0) throw dimension_mismatch("operator dimension must be positive");
    }

    OperatorMode mode() const noexcept { return mode_; }
    std::size_t n() const noexcept { return n_; }

    Matrix L(const Matrix& p, std::size_t power = 1) const {
        require_dim(p);
        Matrix out = p;
        for (std::size_t k = 0; k < power; ++k) {
            if (out.is_zero()) break;
            out = mode_ == OperatorMode::Continuous
                      ? detail::shift_rows_down(out) + detail::shift_cols_right(out)
                      : detail::shift_rows_down(detail::shift_cols_right(out));
        }
        return out;
    }

    Matrix L(const SymMatrix& p, std::size_t power = 1) const { return L(p.to_matrix(), power); }

    Matrix X(std::size_t i, const Matrix& p) const {
        require_dim(p);
        Matrix x0(n_, n_);
        Matrix power = p;
        for (std::size_t k = 0; k < n_; ++k) {
            for (std::size_t j = 0; j < n_; ++j) x0(k, j) = power(n_ - 1, j);
            if (k + 1 < n_) power = L(power);
        }
        return i == 0 ? x0 : detail::shift_rows_down(x0, std::min(i, n_));
    }

    Matrix X(std::size_t i, const SymMatrix& p) const { return X(i, p.to_matrix()); }

    // Unique P with X_0 P = M (continuous mode only). Row k of X_0 P is
    //   sum_{a=0}^{k-1} C(k-1, a) P_{n-a, c-(k-1)+a}
    // whose a = k-1 term is P_{n-k+1, c} with coefficient one, so the rows of P
    // are recovered bottom-up.
    Matrix solve_X0(const Matrix& m) const {
        require_continuous("solve_X0");
        require_dim(m);
        const auto binom = detail::binomial_rows(n_);
        Matrix p(n_, n_);
        for (std::size_t k = 0; k < n_; ++k) {  // 0-based; fills row n-1-k of P
            for (std::size_t c = 0; c < n_; ++c) {
                Rational acc = m(k, c);
                for (std::size_t a = 0; a < k; ++a) {
                    // column index c - k + a must be valid
                    if (c + a < k) continue;
                    acc -= binom[k][a] * p(n_ - 1 - a, c + a - k);
                }
                p(n_ - 1 - k, c) = acc;
            }
        }
        return p;
    }

    // Same solve through the n^2 x n^2 matrix of X_0 and exact elimination.
    Matrix solve_X0_dense(const Matrix& m) const {
        require_continuous("solve_X0_dense");
        require_dim(m);
        const Matrix op = operator_matrix(n_, [this](const Matrix& p) { return X(0, p); });
        return unvectorize(solve(op, vectorize(m)), n_, n_);
    }

    // Reads the off-diagonal entries of a symmetric P_1 from X_0 P_1 A = U
    // (discrete mode), using (X_0 P A)_{ij} = P_{n-i+1, j-i} for j > i.
    // The diagonal of the result is zero; it is fixed separately.
    SymMatrix solve_X0A(const Matrix& u) const {
        require_discrete("solve_X0A");
        require_dim(u);
        std::map<std::pair<std::size_t, std::size_t>, Rational> assigned;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if (!is_zero(u(i, j))) throw std::invalid_argument("solve_X0A: U must be strictly upper triangular");
        SymMatrix p(n_);
        for (std::size_t i = 1; i <= n_; ++i) {
            for (std::size_t j = i + 1; j <= n_; ++j) {
                std::size_t k = n_ - i + 1;
                std::size_t l = j - i;
                const Rational& value = u(i - 1, j - 1);
                auto key = std::minmax(k, l);
                auto [it, inserted] = assigned.emplace(key, value);
                if (!inserted && it->second != value)
                    throw inconsistent_symmetry("X0 P A = U assigns two values to P(" + std::to_string(key.first) +
                                                ", " + std::to_string(key.second) + ")");
                p.set(k - 1, l - 1, value);
            }
        }
        return p;
    }

private:
    void require_dim(const Matrix& m) const {
        if (m.rows() != n_ || m.cols() != n_)
            throw dimension_mismatch("operator expects " + std::to_string(n_) + "x" + std::to_string(n_) +
                                     " matrix");
    }
    void require_continuous(const char* what) const {
        if (mode_ != OperatorMode::Continuous) throw std::logic_error(std::string(what) + " needs continuous mode");
    }
    void require_discrete(const char* what) const {
        if (mode_ != OperatorMode::Discrete) throw std::logic_error(std::string(what) + " needs discrete mode");
    }

    OperatorMode mode_;
    std::size_t n_;
};

struct LduParts {
    Matrix lower;     // strictly lower
    Matrix diagonal;
    Matrix upper;     // strictly upper
};

inline LduParts ldu_split(const Matrix& m) {
    if (!m.is_square()) throw dimension_mismatch("ldu_split needs a square matrix");
    const std::size_t n = m.rows();
    LduParts parts{Matrix(n, n), Matrix(n, n), Matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i > j)
                parts.lower(i, j) = m(i, j);
            else if (i == j)
                parts.diagonal(i, j) = m(i, j);
            else
                parts.upper(i, j) = m(i, j);
        }
    return parts;
}

}  // namespace quadform
