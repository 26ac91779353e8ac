#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadform/errors.hpp"
#include "quadform/matrix.hpp"
#include "quadform/poly2.hpp"
#include "quadform/system.hpp"

// Certification engine. Recomputes transformed systems by substituting the
// change of coordinates into the equations and truncating at degree two. It
// deliberately uses nothing from operators.hpp, so agreement with the
// closed-form maps is a genuine cross-check.

namespace quadform {

namespace oracle_detail {

// xi = T x + P(x),  mu = nu + v^T x - x^T Q x - (r x) nu
struct GeneralTransform {
    Matrix T;
    Matrix v;
    std::vector<SymMatrix> P;
    SymMatrix Q;
    Matrix r;
};

// sum_{j,l} S(j,l) * a_j * b_l
inline TruncatedPoly2 bilinear_form(const SymMatrix& s, const std::vector<TruncatedPoly2>& a,
                                    const std::vector<TruncatedPoly2>& b) {
    TruncatedPoly2 out(a.front().n());
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t l = 0; l < b.size(); ++l)
            if (!is_zero(s(j, l))) out += s(j, l) * (a[j] * b[l]);
    return out;
}

inline std::vector<TruncatedPoly2> state_variables(std::size_t n) {
    std::vector<TruncatedPoly2> x;
    for (std::size_t j = 0; j < n; ++j) x.push_back(TruncatedPoly2::x(n, j));
    return x;
}

inline QuadraticSystem read_off(Kind kind, const std::vector<TruncatedPoly2>& rhs) {
    const std::size_t n = rhs.size();
    Matrix A(n, n), b(n, 1), G(n, n);
    std::vector<SymMatrix> F(n, SymMatrix(n));
    std::optional<Matrix> h;
    if (kind == Kind::Discrete) h = Matrix(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        const TruncatedPoly2& p = rhs[i];
        if (!is_zero(p.constant_term()))
            throw certification_failure("substitution produced a constant term in equation " + std::to_string(i + 1));
        for (std::size_t j = 0; j < n; ++j) {
            A(i, j) = p.linear(j);
            G(i, j) = p.bilinear(j);
            F[i].set(j, j, p.quadratic(j, j));
            for (std::size_t l = j + 1; l < n; ++l) F[i].set(j, l, p.quadratic(j, l) / 2);
        }
        b(i, 0) = p.nu_linear();
        if (kind == Kind::Discrete)
            (*h)(i, 0) = p.nu_squared();
        else if (!is_zero(p.nu_squared()))
            throw residual_nu_squared("continuous substitution left a nu^2 term in equation " + std::to_string(i + 1));
    }
    return QuadraticSystem(kind, std::move(A), std::move(b), std::move(F), std::move(G), std::move(h));
}

inline QuadraticSystem substitute(const QuadraticSystem& sys, const GeneralTransform& tf) {
    const std::size_t n = sys.n();
    const auto x = state_variables(n);
    const TruncatedPoly2 nu = TruncatedPoly2::nu(n);

    std::vector<TruncatedPoly2> xi;
    for (std::size_t k = 0; k < n; ++k) {
        TruncatedPoly2 p(n);
        for (std::size_t j = 0; j < n; ++j) p += tf.T(k, j) * x[j];
        p += bilinear_form(tf.P[k], x, x);
        xi.push_back(std::move(p));
    }
    TruncatedPoly2 mu = nu;
    for (std::size_t j = 0; j < n; ++j) {
        mu += tf.v(j, 0) * x[j];
        mu -= tf.r(0, j) * (x[j] * nu);
    }
    mu -= bilinear_form(tf.Q, x, x);

    // right-hand sides with (xi, mu) substituted
    std::vector<TruncatedPoly2> rhs;
    for (std::size_t i = 0; i < n; ++i) {
        TruncatedPoly2 p(n);
        for (std::size_t k = 0; k < n; ++k) p += sys.A()(i, k) * xi[k];
        p += sys.b()(i, 0) * mu;
        p += bilinear_form(sys.F()[i], xi, xi);
        TruncatedPoly2 g(n);
        for (std::size_t k = 0; k < n; ++k) g += sys.G()(i, k) * xi[k];
        p += g * mu;
        if (sys.kind() == Kind::Discrete) p += (*sys.h())(i, 0) * (mu * mu);
        rhs.push_back(std::move(p));
    }

    const Matrix t_inv = [&] {
        try {
            return inverse(tf.T);
        } catch (const singular_transform&) {
            throw singular_transform("coordinate change T is singular");
        }
    }();

    // first-order dynamics of the new state: T^{-1} times the linear part
    std::vector<TruncatedPoly2> first_order;
    for (std::size_t i = 0; i < n; ++i) {
        TruncatedPoly2 p(n);
        for (std::size_t k = 0; k < n; ++k) p += t_inv(i, k) * rhs[k].linear_part();
        first_order.push_back(std::move(p));
    }

    // contribution of the quadratic part of xi on the left-hand side
    std::vector<TruncatedPoly2> lhs_quadratic;
    for (std::size_t k = 0; k < n; ++k) {
        if (sys.kind() == Kind::Continuous)  // d/dt (x^T P_k x)
            lhs_quadratic.push_back(bilinear_form(tf.P[k], first_order, x) + bilinear_form(tf.P[k], x, first_order));
        else  // x+^T P_k x+
            lhs_quadratic.push_back(bilinear_form(tf.P[k], first_order, first_order));
    }

    std::vector<TruncatedPoly2> result;
    for (std::size_t i = 0; i < n; ++i) {
        TruncatedPoly2 p(n);
        for (std::size_t k = 0; k < n; ++k) p += t_inv(i, k) * (rhs[k] - lhs_quadratic[k]);
        result.push_back(std::move(p));
    }
    return read_off(sys.kind(), result);
}

}  // namespace oracle_detail

// Equation i of the system as a polynomial in (x, nu).
inline TruncatedPoly2 equation_polynomial(const QuadraticSystem& sys, std::size_t i) {
    const std::size_t n = sys.n();
    TruncatedPoly2 p(n);
    for (std::size_t j = 0; j < n; ++j) {
        p.linear(j) = sys.A()(i, j);
        p.quadratic(j, n) = sys.G()(i, j);
        p.quadratic(j, j) = sys.F()[i](j, j);
        for (std::size_t l = j + 1; l < n; ++l) p.quadratic(j, l) = 2 * sys.F()[i](j, l);
    }
    p.linear(n) = sys.b()(i, 0);
    if (sys.h()) p.quadratic(n, n) = (*sys.h())(i, 0);
    return p;
}

inline QuadraticSystem substitute_and_truncate_cont(const QuadraticSystem& sys, const QuadraticTransform& tf) {
    if (sys.kind() != Kind::Continuous) throw std::invalid_argument("continuous substitution needs a continuous system");
    tf.check(sys.n());
    return oracle_detail::substitute(
        sys, {Matrix::identity(sys.n()), Matrix(sys.n(), 1), tf.P, tf.Q, tf.r});
}

inline QuadraticSystem substitute_and_truncate_disc(const QuadraticSystem& sys, const QuadraticTransform& tf) {
    if (sys.kind() != Kind::Discrete) throw std::invalid_argument("discrete substitution needs a discrete system");
    tf.check(sys.n());
    if (!tf.r.is_zero()) throw nonzero_r("discrete transformations carry no r term");
    return oracle_detail::substitute(
        sys, {Matrix::identity(sys.n()), Matrix(sys.n(), 1), tf.P, tf.Q, tf.r});
}

inline QuadraticSystem substitute_and_truncate(const QuadraticSystem& sys, const QuadraticTransform& tf) {
    return sys.kind() == Kind::Continuous ? substitute_and_truncate_cont(sys, tf)
                                          : substitute_and_truncate_disc(sys, tf);
}

// xi = T x, mu = u + x^T v, exact to degree two.
inline QuadraticSystem substitute_linear(const QuadraticSystem& sys, const LinearTransform& lt) {
    const std::size_t n = sys.n();
    if (lt.T.rows() != n || lt.T.cols() != n || lt.v.rows() != n || lt.v.cols() != 1)
        throw dimension_mismatch("linear transform does not match system dimension");
    return oracle_detail::substitute(
        sys, {lt.T, lt.v, std::vector<SymMatrix>(n, SymMatrix(n)), SymMatrix(n), Matrix(1, n)});
}

// Inverse to second order: the transform maps are additive at this order, so
// negating every coefficient undoes them.
inline QuadraticTransform invert_transform_order2(const QuadraticTransform& tf) {
    if (!tf.r.is_zero()) throw nonzero_r("order-2 inversion is defined for r = 0");
    QuadraticTransform inv{{}, -tf.Q, tf.r};
    for (const auto& p : tf.P) inv.P.push_back(-p);
    return inv;
}

struct Difference {
    std::size_t equation;  // 1-based
    std::string monomial;
    Rational lhs;
    Rational rhs;
};

inline std::string monomial_name(std::size_t n, std::size_t v, std::size_t w) {
    auto var = [n](std::size_t k) { return k == n ? std::string("nu") : "x" + std::to_string(k + 1); };
    if (v == w) return var(v) + "^2";
    return var(std::min(v, w)) + "*" + var(std::max(v, w));
}

inline std::vector<Difference> verify_equivalence(const QuadraticSystem& a, const QuadraticSystem& b) {
    if (a.kind() != b.kind()) throw dimension_mismatch("systems are of different kinds");
    if (a.n() != b.n()) throw dimension_mismatch("systems have different dimensions");
    const std::size_t n = a.n();
    std::vector<Difference> diffs;
    for (std::size_t i = 0; i < n; ++i) {
        const TruncatedPoly2 pa = equation_polynomial(a, i);
        const TruncatedPoly2 pb = equation_polynomial(b, i);
        for (std::size_t v = 0; v <= n; ++v)
            if (pa.linear(v) != pb.linear(v))
                diffs.push_back({i + 1, v == n ? "nu" : "x" + std::to_string(v + 1), pa.linear(v), pb.linear(v)});
        for (std::size_t v = 0; v <= n; ++v)
            for (std::size_t w = v; w <= n; ++w)
                if (pa.quadratic(v, w) != pb.quadratic(v, w))
                    diffs.push_back({i + 1, monomial_name(n, v, w), pa.quadratic(v, w), pb.quadratic(v, w)});
    }
    return diffs;
}

}  // namespace quadform
