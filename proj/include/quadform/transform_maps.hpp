#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadform/errors.hpp"
#include "quadform/matrix.hpp"
#include "quadform/operators.hpp"
#include "quadform/system.hpp"

// Closed-form coefficient maps shared by the continuous and discrete algorithms.

namespace quadform {

namespace detail {

inline void require_reduced(const QuadraticSystem& sys, Kind kind, const char* what) {
    if (sys.kind() != kind)
        throw std::invalid_argument(std::string(what) + ": expected a " + std::string(to_string(kind)) + " system");
    if (!sys.has_brunovsky_linear_part())
        throw not_brunovsky(std::string(what) + ": linear part is not the Brunovsky pair; reduce it first");
}

inline SymMatrix symmetric_or_throw(const Matrix& m, const char* what) {
    if (!m.is_symmetric()) throw asymmetry_detected(std::string(what) + " is not symmetric");
    return SymMatrix::from_matrix(m);
}

// Fbar_i = F_i + P_{i+1} - L P_i - b_i Q, with P_{n+1} = 0.
inline std::vector<SymMatrix> transformed_quadratics(const MatrixOperators& ops, const QuadraticSystem& sys,
                                                     const QuadraticTransform& tf) {
    const std::size_t n = sys.n();
    std::vector<SymMatrix> out;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix f = sys.F()[i].to_matrix() - ops.L(tf.P[i]);
        if (i + 1 < n) f += tf.P[i + 1].to_matrix();
        f -= sys.b()(i, 0) * tf.Q.to_matrix();
        out.push_back(symmetric_or_throw(f, "transformed F_i"));
    }
    return out;
}

}  // namespace detail

// P_{i+1} = L^i P_1 - sum_{j<i} L^j F_{i-j} + sum_{j<i} L^j Fbar_{i-j}   (i = 1..n-1)
// Q       = sum_{j<n} L^j (F_{n-j} - Fbar_{n-j}) [- L^n P_1 in continuous mode]
// F and Fbar are 0-based lists of length n.
inline QuadraticTransform complete_transform(const MatrixOperators& ops, const SymMatrix& p1,
                                             const std::vector<SymMatrix>& F, const std::vector<SymMatrix>& Fbar) {
    const std::size_t n = ops.n();
    if (F.size() != n || Fbar.size() != n || p1.dim() != n)
        throw dimension_mismatch("complete_transform: expected n quadratic matrices");
    QuadraticTransform tf = QuadraticTransform::identity(n);
    tf.P[0] = p1;
    for (std::size_t i = 1; i < n; ++i) {
        Matrix next = ops.L(p1, i);
        for (std::size_t j = 0; j < i; ++j) next -= ops.L(F[i - j - 1].to_matrix() - Fbar[i - j - 1].to_matrix(), j);
        tf.P[i] = detail::symmetric_or_throw(next, "P_i");
    }
    Matrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) q += ops.L(F[n - j - 1].to_matrix() - Fbar[n - j - 1].to_matrix(), j);
    if (ops.mode() == OperatorMode::Continuous) q -= ops.L(p1, n);
    tf.Q = detail::symmetric_or_throw(q, "Q");
    return tf;
}

}  // namespace quadform
