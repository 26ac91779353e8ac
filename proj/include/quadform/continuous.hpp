#pragma once

#include <cstddef>
#include <vector>

#include "quadform/errors.hpp"
#include "quadform/matrix.hpp"
#include "quadform/operators.hpp"
#include "quadform/system.hpp"
#include "quadform/transform_maps.hpp"

namespace quadform {

// Coefficients of the continuous system after xi = x + P(x), mu = nu - x^T Q x - r x nu:
//   Fbar_i = F_i + P_{i+1} - L P_i - b_i Q
//   Gbar_i = G_i - 2 b^T P_i - b_i r
inline QuadraticSystem equivalent_system_cont(const QuadraticSystem& sys, const QuadraticTransform& tf) {
    detail::require_reduced(sys, Kind::Continuous, "equivalent_system_cont");
    tf.check(sys.n());
    const std::size_t n = sys.n();
    const MatrixOperators ops(OperatorMode::Continuous, n);

    Matrix g = sys.G();
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix row = sys.b().transpose() * tf.P[i].to_matrix();
        for (std::size_t j = 0; j < n; ++j) g(i, j) -= 2 * row(0, j) + sys.b()(i, 0) * tf.r(0, j);
    }
    return QuadraticSystem(Kind::Continuous, sys.A(), sys.b(), detail::transformed_quadratics(ops, sys, tf), g);
}

// S = X_0^{-1} (sum_{i=1}^{n-1} X_i F_i + G / 2), the part of the necessary
// condition fixed by the original system (r = 0).
inline Matrix necessary_rhs_cont(const QuadraticSystem& sys) {
    detail::require_reduced(sys, Kind::Continuous, "necessary_rhs_cont");
    const std::size_t n = sys.n();
    const MatrixOperators ops(OperatorMode::Continuous, n);
    Matrix rhs = sys.G() * Rational(1, 2);
    for (std::size_t i = 1; i < n; ++i) rhs += ops.X(i, sys.F(i));
    return ops.solve_X0(rhs);
}

// Splits a lower skew-triangular Delta_1 into diagonal Fbar_1..Fbar_{n-1} with
// sum X_i Fbar_i = Delta_1. Layer i reads fbar_{i,j} = (Delta_i)_{n-j+i+1, j}
// for j = i+1..n, then Delta_{i+1} = Delta_i - X_i Fbar_i.
inline std::vector<SymMatrix> extract_typeI_diagonals(const Matrix& delta1, std::size_t n) {
    const MatrixOperators ops(OperatorMode::Continuous, n);
    if (delta1.rows() != n || delta1.cols() != n) throw dimension_mismatch("extract_typeI_diagonals: shape");
    Matrix residual = delta1;
    std::vector<SymMatrix> out;
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<Rational> diag(n);
        for (std::size_t j = i + 1; j <= n; ++j) diag[j - 1] = residual(n - j + i, j - 1);
        SymMatrix f = SymMatrix::diagonal(diag);
        residual -= ops.X(i, f);
        out.push_back(std::move(f));
    }
    if (!residual.is_zero()) throw extraction_residual("Delta_1 is not a sum of X_i applied to diagonal matrices");
    return out;
}

inline QuadraticTransform complete_transform_cont(const SymMatrix& p1, const std::vector<SymMatrix>& F,
                                                  const std::vector<SymMatrix>& Fbar) {
    return complete_transform(MatrixOperators(OperatorMode::Continuous, p1.dim()), p1, F, Fbar);
}

enum class ContinuousForm { TypeI, TypeII };

inline NormalFormResult brunovsky_cont(const QuadraticSystem& sys, ContinuousForm form) {
    detail::require_reduced(sys, Kind::Continuous, "brunovsky_cont");
    const std::size_t n = sys.n();
    const MatrixOperators ops(OperatorMode::Continuous, n);

    const LduParts parts = ldu_split(necessary_rhs_cont(sys));
    const Matrix lower_t = parts.lower.transpose();
    const SymMatrix p1 = SymMatrix::from_matrix(parts.lower + parts.diagonal + lower_t);
    const Matrix delta1 = ops.X(0, parts.upper - lower_t);

    std::vector<SymMatrix> Fbar(n, SymMatrix(n));
    Matrix Gbar(n, n);
    FormType type = FormType::Linearized;
    if (!delta1.is_zero()) {
        if (form == ContinuousForm::TypeI) {
            auto diagonals = extract_typeI_diagonals(delta1, n);
            for (std::size_t i = 0; i + 1 < n; ++i) Fbar[i] = std::move(diagonals[i]);
            type = FormType::TypeI;
        } else {
            Gbar = delta1 * Rational(2);
            type = FormType::TypeII;
        }
    }

    QuadraticTransform tf = complete_transform(ops, p1, sys.F(), Fbar);
    QuadraticSystem normal(Kind::Continuous, sys.A(), sys.b(), std::move(Fbar), std::move(Gbar));
    if (!(equivalent_system_cont(sys, tf) == normal))
        throw certification_failure("continuous normal form does not match its own transformation");
    const std::size_t terms = count_nonzero_quadratic_terms(normal);
    return {std::move(normal), std::move(tf), type, terms};
}

}  // namespace quadform
