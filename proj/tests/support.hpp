#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "quadform/quadform.hpp"
#include "quadform/random.hpp"

namespace qt {

using namespace quadform;

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

inline Matrix mat(std::vector<std::vector<long>> rows) {
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

inline SymMatrix sym(std::vector<std::vector<long>> rows) { return SymMatrix::from_matrix(mat(std::move(rows))); }

// x1' = x2, x2' = nu + x2 nu
inline QuadraticSystem example_continuous() {
    return QuadraticSystem(Kind::Continuous, shift_matrix(2), last_basis_vector(2), {SymMatrix(2), SymMatrix(2)},
                           mat({{0, 0}, {0, 1}}));
}

// x1+ = x2 + x1^2 + x2^2 + nu^2, x2+ = nu + nu^2
inline QuadraticSystem example_discrete() {
    return QuadraticSystem(Kind::Discrete, shift_matrix(2), last_basis_vector(2),
                           {SymMatrix::diagonal({1, 1}), SymMatrix(2)}, Matrix(2, 2), mat({{1}, {1}}));
}

// Controllable pair: Brunovsky pair with random feedback, then a random change of basis.
inline std::pair<Matrix, Matrix> random_controllable_pair(std::size_t n, std::uint64_t seed) {
    CoefficientSampler s(seed, 0.8);
    Matrix a = shift_matrix(n);
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = s.coefficient();
    const Matrix S = s.invertible(n);
    return {S * a * inverse(S), S * last_basis_vector(n)};
}

// Block upper-triangular pair whose lower block never sees the input.
inline std::pair<Matrix, Matrix> random_uncontrollable_pair(std::size_t n, std::uint64_t seed) {
    CoefficientSampler s(seed, 0.8);
    const std::size_t top = 1 + s.below(n - 1);  // 1 <= top < n
    Matrix a = s.matrix(n, n), b(n, 1);
    for (std::size_t i = top; i < n; ++i)
        for (std::size_t j = 0; j < top; ++j) a(i, j) = 0;
    for (std::size_t i = 0; i < top; ++i) b(i, 0) = s.small_nonzero();
    const Matrix S = s.invertible(n);
    return {S * a * inverse(S), S * b};
}

inline QuadraticSystem with_linear_part(const QuadraticSystem& sys, const Matrix& a, const Matrix& b) {
    return QuadraticSystem(sys.kind(), a, b, sys.F(), sys.G(), sys.h());
}

}  // namespace qt
