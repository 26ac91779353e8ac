#pragma once

#include <cstddef>
#include <vector>

#include "quadform/errors.hpp"
#include "quadform/matrix.hpp"
#include "quadform/operators.hpp"
#include "quadform/system.hpp"
#include "quadform/transform_maps.hpp"

namespace quadform {

// Coefficients of the discrete system after xi = x + P(x), mu = nu - x^T Q x:
//   Fbar_i = F_i + P_{i+1} - L P_i - b_i Q
//   Gbar_i = G_i - 2 b^T P_i A
//   hbar_i = h_i - (P_i)_{nn}
// The hbar relation is the one the substitution engine produces; a vanishing
// hbar is exactly the condition h_i = (P_i)_{nn}.
inline QuadraticSystem equivalent_system_disc(const QuadraticSystem& sys, const QuadraticTransform& tf) {
    detail::require_reduced(sys, Kind::Discrete, "equivalent_system_disc");
    tf.check(sys.n());
    if (!tf.r.is_zero()) throw nonzero_r("discrete transformations carry no r term");
    const std::size_t n = sys.n();
    const MatrixOperators ops(OperatorMode::Discrete, n);

    Matrix g = sys.G();
    Matrix h = *sys.h();
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix row = sys.b().transpose() * tf.P[i].to_matrix() * sys.A();
        for (std::size_t j = 0; j < n; ++j) g(i, j) -= 2 * row(0, j);
        h(i, 0) -= tf.P[i](n - 1, n - 1);
    }
    return QuadraticSystem(Kind::Discrete, sys.A(), sys.b(), detail::transformed_quadratics(ops, sys, tf), g, h);
}

// Diagonal of P_1 that absorbs h:
//   (P_1)_{n-i, n-i} = sum_{j=0}^{i-1} (L^j F_{i-j})_{nn} + h_{i+1},   (P_1)_{nn} = h_1.
inline std::vector<Rational> p1_diagonal_disc(const std::vector<SymMatrix>& F, const Matrix& h) {
    const std::size_t n = F.size();
    if (n == 0 || h.rows() != n || h.cols() != 1) throw dimension_mismatch("p1_diagonal_disc: shape");
    const MatrixOperators ops(OperatorMode::Discrete, n);
    std::vector<Rational> diag(n);
    diag[n - 1] = h(0, 0);
    for (std::size_t i = 1; i < n; ++i) {
        Rational acc = h(i, 0);
        for (std::size_t j = 0; j < i; ++j) acc += ops.L(F[i - j - 1], j)(n - 1, n - 1);
        diag[n - 1 - i] = acc;
    }
    return diag;
}

inline QuadraticTransform complete_transform_disc(const SymMatrix& p1, const std::vector<SymMatrix>& F,
                                                  const std::vector<SymMatrix>& Fbar) {
    return complete_transform(MatrixOperators(OperatorMode::Discrete, p1.dim()), p1, F, Fbar);
}

// sum_{i=1}^{n-1} X_i F_i A + G / 2
inline Matrix necessary_rhs_disc(const QuadraticSystem& sys) {
    detail::require_reduced(sys, Kind::Discrete, "necessary_rhs_disc");
    const std::size_t n = sys.n();
    const MatrixOperators ops(OperatorMode::Discrete, n);
    Matrix m = sys.G() * Rational(1, 2);
    for (std::size_t i = 1; i < n; ++i) m += ops.X(i, sys.F(i)) * sys.A();
    return m;
}

// The unique discrete normal form: no quadratic-in-state or nu^2 terms, and
// Gbar = 2 (L + D) lower triangular.
inline NormalFormResult brunovsky_disc(const QuadraticSystem& sys) {
    detail::require_reduced(sys, Kind::Discrete, "brunovsky_disc");
    const std::size_t n = sys.n();
    const MatrixOperators ops(OperatorMode::Discrete, n);

    const LduParts parts = ldu_split(necessary_rhs_disc(sys));
    Matrix Gbar = (parts.lower + parts.diagonal) * Rational(2);

    SymMatrix p1 = ops.solve_X0A(parts.upper);
    const auto diag = p1_diagonal_disc(sys.F(), *sys.h());
    for (std::size_t k = 0; k < n; ++k) p1.set(k, k, diag[k]);

    std::vector<SymMatrix> Fbar(n, SymMatrix(n));
    QuadraticTransform tf = complete_transform(ops, p1, sys.F(), Fbar);
    const FormType type = Gbar.is_zero() ? FormType::Linearized : FormType::DiscreteBilinear;
    QuadraticSystem normal(Kind::Discrete, sys.A(), sys.b(), std::move(Fbar), std::move(Gbar), Matrix(n, 1));
    if (!(equivalent_system_disc(sys, tf) == normal))
        throw certification_failure("discrete normal form does not match its own transformation");
    const std::size_t terms = count_nonzero_quadratic_terms(normal);
    return {std::move(normal), std::move(tf), type, terms};
}

}  // namespace quadform
