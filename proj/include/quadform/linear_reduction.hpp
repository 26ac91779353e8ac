#pragma once

#include <cstddef>
#include <utility>

#include "quadform/errors.hpp"
#include "quadform/matrix.hpp"
#include "quadform/oracle.hpp"
#include "quadform/system.hpp"

namespace quadform {

// C = [A^{n-1} b, ..., A b, b]
inline Matrix controllability_matrix(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || b.rows() != a.rows() || b.cols() != 1)
        throw dimension_mismatch("controllability_matrix: A must be n x n and b n x 1");
    const std::size_t n = a.rows();
    Matrix c(n, n);
    Matrix power = b;
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t i = 0; i < n; ++i) c(i, k) = power(i, 0);
        power = a * power;
    }
    return c;
}

// Linear transform (T, v) with xi = T x, mu = u + x^T v taking (A, b) to the
// shift pair. With d the first row of C^{-1}, the rows d, dA, ..., dA^{n-1}
// map xi to controller coordinates, so T is the inverse of that stack.
inline LinearTransform linear_brunovsky(const Matrix& a, const Matrix& b) {
    const Matrix c = controllability_matrix(a, b);
    const std::size_t n = a.rows();
    if (const std::size_t r = rank(c); r < n) throw not_controllable(r, n);

    const Matrix d = inverse(c).row(0);
    Matrix stack(n, n);
    Matrix row = d;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) stack(k, j) = row(0, j);
        row = row * a;
    }

    LinearTransform lt{inverse(stack), Matrix(n, 1)};
    const Matrix controller = stack * a * lt.T;  // T^{-1} A T
    for (std::size_t j = 0; j < n; ++j) lt.v(j, 0) = -controller(n - 1, j);

    Matrix closed_loop = controller;
    for (std::size_t j = 0; j < n; ++j) closed_loop(n - 1, j) += lt.v(j, 0);
    if (!is_brunovsky_pair(closed_loop, stack * b))
        throw certification_failure("linear reduction did not reach the Brunovsky pair");
    return lt;
}

inline QuadraticSystem apply_linear_transform(const QuadraticSystem& sys, const LinearTransform& lt) {
    if (rank(lt.T) < lt.T.rows()) throw singular_transform("coordinate change T is singular");
    return substitute_linear(sys, lt);
}

struct LinearReduction {
    QuadraticSystem system;
    LinearTransform transform;
};

inline LinearReduction reduce_linear(const QuadraticSystem& sys) {
    LinearTransform lt = linear_brunovsky(sys.A(), sys.b());
    QuadraticSystem reduced = apply_linear_transform(sys, lt);
    if (!reduced.has_brunovsky_linear_part())
        throw certification_failure("reduced system does not have the Brunovsky linear part");
    return {std::move(reduced), std::move(lt)};
}

}  // namespace quadform
