#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

TEST(Poly, ProductTruncatesAtDegreeTwo) {
    const std::size_t n = 2;
    const auto x1 = TruncatedPoly2::x(n, 0), x2 = TruncatedPoly2::x(n, 1), nu = TruncatedPoly2::nu(n);
    const auto one = TruncatedPoly2::constant(n, 1);
    const auto p = one + x1 + q(3) * x2;  // 1 + x1 + 3 x2
    const auto sq = p * p;
    EXPECT_EQ(sq.constant_term(), 1);
    EXPECT_EQ(sq.linear(0), 2);
    EXPECT_EQ(sq.linear(1), 6);
    EXPECT_EQ(sq.quadratic(0, 0), 1);
    EXPECT_EQ(sq.quadratic(0, 1), 6);
    EXPECT_EQ(sq.quadratic(1, 1), 9);
    EXPECT_TRUE(((x1 * x2) * nu).is_zero());
    EXPECT_EQ((x2 * nu).bilinear(1), 1);
}

TEST(Poly, RingLawsOnRandomInputs) {
    CoefficientSampler s(17, 0.7);
    auto draw = [&](std::size_t n) {
        TruncatedPoly2 p(n);
        p.constant_term() = s.coefficient();
        for (std::size_t v = 0; v <= n; ++v) {
            p.linear(v) = s.coefficient();
            for (std::size_t w = v; w <= n; ++w) p.quadratic(v, w) = s.coefficient();
        }
        return p;
    };
    for (int k = 0; k < 30; ++k) {
        const auto a = draw(3), b = draw(3), c = draw(3);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(Oracle, IdentityTransformIsNeutral) {
    for (Kind k : {Kind::Continuous, Kind::Discrete})
        for (std::size_t n = 2; n <= 4; ++n) {
            const auto sys = random_system(n, k, 31 * n, 0.7);
            EXPECT_EQ(substitute_and_truncate(sys, QuadraticTransform::identity(n)), sys);
        }
}

// xi_2 = x_2 + x_1^2 in x1' = x2, x2' = nu gives x1' = x2 + x1^2, x2' = nu - 2 x1 x2.
TEST(Oracle, ContinuousHandComputation) {
    const auto sys = QuadraticSystem::linear_brunovsky(Kind::Continuous, 2);
    QuadraticTransform tf = QuadraticTransform::identity(2);
    tf.P[1] = sym({{1, 0}, {0, 0}});
    const auto out = substitute_and_truncate(sys, tf);
    EXPECT_EQ(out.F(1), sym({{1, 0}, {0, 0}}));
    EXPECT_EQ(out.F(2), sym({{0, -1}, {-1, 0}}));
    EXPECT_TRUE(out.G().is_zero());
    EXPECT_TRUE(out.has_brunovsky_linear_part());
}

// xi_2 = x_2 + x_2^2 in x1+ = x2, x2+ = nu gives x1+ = x2 + x2^2, x2+ = nu - nu^2.
TEST(Oracle, DiscreteHandComputation) {
    const auto sys = QuadraticSystem::linear_brunovsky(Kind::Discrete, 2);
    QuadraticTransform tf = QuadraticTransform::identity(2);
    tf.P[1] = sym({{0, 0}, {0, 1}});
    const auto out = substitute_and_truncate(sys, tf);
    EXPECT_EQ(out.F(1), sym({{0, 0}, {0, 1}}));
    EXPECT_TRUE(out.F(2).is_zero());
    EXPECT_EQ(*out.h(), mat({{0}, {-1}}));
}

// Feedback mu = nu - x^T Q x - (r x) nu.
TEST(Oracle, FeedbackTermsLandInLastEquation) {
    const auto sys = QuadraticSystem::linear_brunovsky(Kind::Continuous, 3);
    QuadraticTransform tf = QuadraticTransform::identity(3);
    tf.Q = sym({{1, 2, 0}, {2, 0, 0}, {0, 0, 3}});
    tf.r = mat({{4, 0, -1}});
    const auto out = substitute_and_truncate(sys, tf);
    EXPECT_EQ(out.F(3), -tf.Q);
    EXPECT_EQ(out.G(), mat({{0, 0, 0}, {0, 0, 0}, {-4, 0, 1}}));
}

TEST(Oracle, ClosedFormMapsAgree) {
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            const auto cs = random_system(n, Kind::Continuous, seed, 0.6);
            const auto ct = random_transform(n, seed + 100, 0.6, true);
            EXPECT_EQ(equivalent_system_cont(cs, ct), substitute_and_truncate_cont(cs, ct));
            const auto ds = random_system(n, Kind::Discrete, seed, 0.6);
            const auto dt = random_transform(n, seed + 100, 0.6, false);
            EXPECT_EQ(equivalent_system_disc(ds, dt), substitute_and_truncate_disc(ds, dt));
        }
}

TEST(Oracle, OrderTwoInverseUndoesTransform) {
    for (Kind k : {Kind::Continuous, Kind::Discrete})
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto sys = random_system(3, k, seed, 0.6);
            const auto tf = random_transform(3, seed + 50, 0.6, false);
            const auto there = substitute_and_truncate(sys, tf);
            EXPECT_EQ(substitute_and_truncate(there, invert_transform_order2(tf)), sys);
        }
}

TEST(Oracle, DiscreteRejectsNonzeroR) {
    const auto sys = random_system(2, Kind::Discrete, 1, 0.5);
    auto tf = QuadraticTransform::identity(2);
    tf.r(0, 1) = 1;
    EXPECT_THROW(substitute_and_truncate(sys, tf), nonzero_r);
    EXPECT_THROW(equivalent_system_disc(sys, tf), nonzero_r);
    EXPECT_THROW(invert_transform_order2(tf), nonzero_r);
}

TEST(Oracle, LinearSubstitutionWithFeedback) {
    const auto sys = QuadraticSystem::linear_brunovsky(Kind::Continuous, 3);
    const LinearTransform lt{Matrix::identity(3), mat({{1}, {2}, {3}})};
    const auto out = substitute_linear(sys, lt);
    EXPECT_EQ(out.A(), mat({{0, 1, 0}, {0, 0, 1}, {1, 2, 3}}));
    Matrix singular = Matrix::identity(3);
    singular(2, 2) = 0;
    EXPECT_THROW(apply_linear_transform(sys, {singular, Matrix(3, 1)}), singular_transform);
}

TEST(Oracle, DifferenceReportNamesMonomials) {
    const auto a = example_continuous();
    auto raw = a.to_raw();
    raw.F[0](0, 1) = raw.F[0](1, 0) = q(1, 2);
    raw.G(1, 0) = 5;
    const auto b = QuadraticSystem::from_raw(raw);
    const auto diffs = verify_equivalence(a, b);
    ASSERT_EQ(diffs.size(), 2u);
    EXPECT_EQ(diffs[0].equation, 1u);
    EXPECT_EQ(diffs[0].monomial, "x1*x2");
    EXPECT_EQ(diffs[0].rhs, 1);
    EXPECT_EQ(diffs[1].equation, 2u);
    EXPECT_EQ(diffs[1].monomial, "x1*nu");
    EXPECT_TRUE(verify_equivalence(a, a).empty());
    EXPECT_THROW(verify_equivalence(a, example_discrete()), dimension_mismatch);
}
