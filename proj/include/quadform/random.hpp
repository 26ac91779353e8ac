#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "quadform/matrix.hpp"
#include "quadform/system.hpp"

namespace quadform {

// Deterministic draws on top of mt19937_64, whose output sequence is fixed by
// the standard. The std distributions are not, so they are avoided here.
class CoefficientSampler {
public:
    explicit CoefficientSampler(std::uint64_t seed, double density = 1.0) : rng_(seed), density_(density) {}

    std::uint64_t below(std::uint64_t k) { return rng_() % k; }

    bool chance(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }

    // numerator in [-9, 9] \ {0}, denominator in {1, 2, 3, 4}
    Rational small_nonzero() {
        long num = static_cast<long>(below(18)) - 9;
        if (num >= 0) ++num;
        const long den = static_cast<long>(below(4)) + 1;
        return make_rational(num, den);
    }

    // Zero with probability 1 - density.
    Rational coefficient() { return chance(density_) ? small_nonzero() : Rational(0); }

    Matrix matrix(std::size_t rows, std::size_t cols) {
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = coefficient();
        return m;
    }

    SymMatrix symmetric(std::size_t n) {
        SymMatrix s(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) s.set(i, j, coefficient());
        return s;
    }

    // Unit lower triangular times unit upper triangular: always invertible.
    Matrix invertible(std::size_t n) {
        Matrix lower = Matrix::identity(n), upper = Matrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                lower(i, j) = coefficient();
                upper(j, i) = coefficient();
            }
        Matrix m = lower * upper;
        // a random row permutation keeps it invertible
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t k = below(i);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(i - 1, j), m(k, j));
        }
        return m;
    }

    std::mt19937_64& engine() noexcept { return rng_; }

private:
    std::mt19937_64 rng_;
    double density_;
};

// Quadratic system with the Brunovsky linear part and random quadratic data.
inline QuadraticSystem random_system(std::size_t n, Kind kind, std::uint64_t seed, double density) {
    CoefficientSampler s(seed, density);
    std::vector<SymMatrix> F;
    for (std::size_t i = 0; i < n; ++i) F.push_back(s.symmetric(n));
    Matrix G = s.matrix(n, n);
    std::optional<Matrix> h;
    if (kind == Kind::Discrete) h = s.matrix(n, 1);
    return QuadraticSystem(kind, shift_matrix(n), last_basis_vector(n), std::move(F), std::move(G), std::move(h));
}

inline QuadraticTransform random_transform(std::size_t n, std::uint64_t seed, double density, bool with_r) {
    CoefficientSampler s(seed, density);
    QuadraticTransform tf = QuadraticTransform::identity(n);
    for (auto& p : tf.P) p = s.symmetric(n);
    tf.Q = s.symmetric(n);
    if (with_r) tf.r = s.matrix(1, n);
    return tf;
}

}  // namespace quadform
