#pragma once

#include <cstddef>
#include <vector>

#include "quadform/errors.hpp"
#include "quadform/rational.hpp"

namespace quadform {

// Polynomial in (x_1, ..., x_n, nu) with every term of total degree >= 3
// dropped. Variable index n (0-based) is nu.
class TruncatedPoly2 {
public:
    explicit TruncatedPoly2(std::size_t n)
        : n_(n), linear_(n + 1), quadratic_((n + 1) * (n + 2) / 2) {}

    static TruncatedPoly2 constant(std::size_t n, const Rational& c) {
        TruncatedPoly2 p(n);
        p.constant_ = c;
        return p;
    }

    static TruncatedPoly2 x(std::size_t n, std::size_t i) {
        TruncatedPoly2 p(n);
        p.linear_.at(i) = 1;
        return p;
    }

    static TruncatedPoly2 nu(std::size_t n) { return x(n, n); }

    std::size_t n() const noexcept { return n_; }
    std::size_t variables() const noexcept { return n_ + 1; }

    const Rational& constant_term() const noexcept { return constant_; }
    Rational& constant_term() noexcept { return constant_; }

    // Coefficient of variable v (v == n is nu).
    const Rational& linear(std::size_t v) const { return linear_.at(v); }
    Rational& linear(std::size_t v) { return linear_.at(v); }

    // Coefficient of the monomial v*w (v == w gives a square).
    const Rational& quadratic(std::size_t v, std::size_t w) const { return quadratic_.at(index(v, w)); }
    Rational& quadratic(std::size_t v, std::size_t w) { return quadratic_.at(index(v, w)); }

    const Rational& nu_linear() const { return linear(n_); }
    const Rational& bilinear(std::size_t i) const { return quadratic(i, n_); }
    const Rational& nu_squared() const { return quadratic(n_, n_); }

    // Keeps only the degree-one part.
    TruncatedPoly2 linear_part() const {
        TruncatedPoly2 p(n_);
        p.linear_ = linear_;
        return p;
    }

    bool is_zero() const {
        if (!quadform::is_zero(constant_)) return false;
        for (const auto& c : linear_)
            if (!quadform::is_zero(c)) return false;
        for (const auto& c : quadratic_)
            if (!quadform::is_zero(c)) return false;
        return true;
    }

    TruncatedPoly2& operator+=(const TruncatedPoly2& o) {
        require_same(o);
        constant_ += o.constant_;
        for (std::size_t k = 0; k < linear_.size(); ++k) linear_[k] += o.linear_[k];
        for (std::size_t k = 0; k < quadratic_.size(); ++k) quadratic_[k] += o.quadratic_[k];
        return *this;
    }

    TruncatedPoly2& operator-=(const TruncatedPoly2& o) {
        require_same(o);
        constant_ -= o.constant_;
        for (std::size_t k = 0; k < linear_.size(); ++k) linear_[k] -= o.linear_[k];
        for (std::size_t k = 0; k < quadratic_.size(); ++k) quadratic_[k] -= o.quadratic_[k];
        return *this;
    }

    TruncatedPoly2& operator*=(const Rational& s) {
        constant_ *= s;
        for (auto& c : linear_) c *= s;
        for (auto& c : quadratic_) c *= s;
        return *this;
    }

    friend TruncatedPoly2 operator*(const TruncatedPoly2& a, const TruncatedPoly2& b) {
        a.require_same(b);
        const std::size_t m = a.variables();
        TruncatedPoly2 out(a.n_);
        out.constant_ = a.constant_ * b.constant_;
        for (std::size_t v = 0; v < m; ++v) out.linear_[v] = a.constant_ * b.linear_[v] + b.constant_ * a.linear_[v];
        for (std::size_t k = 0; k < out.quadratic_.size(); ++k)
            out.quadratic_[k] = a.constant_ * b.quadratic_[k] + b.constant_ * a.quadratic_[k];
        for (std::size_t v = 0; v < m; ++v) {
            if (quadform::is_zero(a.linear_[v])) continue;
            for (std::size_t w = 0; w < m; ++w) out.quadratic(v, w) += a.linear_[v] * b.linear_[w];
        }
        return out;
    }

    friend TruncatedPoly2 operator+(TruncatedPoly2 a, const TruncatedPoly2& b) { return a += b; }
    friend TruncatedPoly2 operator-(TruncatedPoly2 a, const TruncatedPoly2& b) { return a -= b; }
    friend TruncatedPoly2 operator*(TruncatedPoly2 a, const Rational& s) { return a *= s; }
    friend TruncatedPoly2 operator*(const Rational& s, TruncatedPoly2 a) { return a *= s; }

    friend bool operator==(const TruncatedPoly2& a, const TruncatedPoly2& b) {
        return a.n_ == b.n_ && a.constant_ == b.constant_ && a.linear_ == b.linear_ && a.quadratic_ == b.quadratic_;
    }

private:
    std::size_t index(std::size_t v, std::size_t w) const {
        if (v > w) std::swap(v, w);
        const std::size_t m = n_ + 1;
        if (w >= m) throw std::out_of_range("monomial variable out of range");
        return v * m - v * (v + 1) / 2 + w;
    }

    void require_same(const TruncatedPoly2& o) const {
        if (n_ != o.n_) throw dimension_mismatch("polynomials over different variable sets");
    }

    std::size_t n_;
    Rational constant_;
    std::vector<Rational> linear_;
    std::vector<Rational> quadratic_;
};

}  // namespace quadform
