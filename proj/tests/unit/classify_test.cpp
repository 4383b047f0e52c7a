#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nullity/classify.hpp"
#include "nullity/generators.hpp"
#include "nullity/jacobi.hpp"
#include "nullity/linalg.hpp"

using namespace nullity;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

const Matrix kRotation = mat2(0, 1, -1, 0);

}  // namespace

TEST(ClassifySpectrum, SphereFullCircleRejectsRealEigenvalues) {
    const auto v = classify_splitting_spectrum(SpaceFormCurvature(1.0), SplittingTensor::zero(2),
                                               GeodesicDomain::segment(std::numbers::pi));
    EXPECT_FALSE(v.consistent);
    ASSERT_TRUE(v.violated_clause);
    EXPECT_EQ(*v.violated_clause, Clause::I);
    EXPECT_EQ(v.offending_eigenvalues.size(), 2u);
}

TEST(ClassifySpectrum, SphereShortSegmentHasNoClause) {
    const auto v = classify_splitting_spectrum(SpaceFormCurvature(1.0), SplittingTensor::zero(2),
                                               GeodesicDomain::segment(3.0));
    EXPECT_TRUE(v.consistent);
    EXPECT_FALSE(v.admissible_interval);
}

TEST(ClassifySpectrum, FlatLineSymmetricNonzero) {
    const auto v = classify_splitting_spectrum(SpaceFormCurvature(0.0), SplittingTensor(mat2(1, 0.5, 0.5, -0.2)),
                                               GeodesicDomain::line());
    EXPECT_FALSE(v.consistent);
    EXPECT_EQ(*v.violated_clause, Clause::II1);
    EXPECT_EQ(label(*v.violated_clause), "(ii.1)");
}

TEST(ClassifySpectrum, FlatLineZeroAndSkewAreConsistent) {
    EXPECT_TRUE(classify_splitting_spectrum(SpaceFormCurvature(0.0), SplittingTensor::zero(3), GeodesicDomain::line())
                    .consistent);
    EXPECT_TRUE(
        classify_splitting_spectrum(SpaceFormCurvature(0.0), SplittingTensor(kRotation), GeodesicDomain::line())
            .consistent);
}

TEST(ClassifySpectrum, HyperbolicRayRejectsLargeEigenvalue) {
    const SplittingTensor c0(2.0 * Matrix::Identity(2, 2));
    const auto v = classify_splitting_spectrum(SpaceFormCurvature(-1.0), c0, GeodesicDomain::ray());
    EXPECT_FALSE(v.consistent);
    EXPECT_EQ(*v.violated_clause, Clause::II);
    EXPECT_LT(max_invertible_time(SpaceFormCurvature(-1.0), c0), kInfinity);
}

TEST(ClassifySpectrum, HyperbolicLineInterval) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    EXPECT_TRUE(classify_splitting_spectrum(SpaceFormCurvature(-1.0), SplittingTensor(d), GeodesicDomain::line())
                    .consistent);
    d(1, 1) = -1.2;
    const auto v = classify_splitting_spectrum(SpaceFormCurvature(-1.0), SplittingTensor(d), GeodesicDomain::line());
    EXPECT_EQ(*v.violated_clause, Clause::II2);
    ASSERT_EQ(v.offending_eigenvalues.size(), 1u);
    EXPECT_NEAR(v.offending_eigenvalues[0].real(), -1.2, 1e-14);
}

TEST(ClassifySpectrum, BoundaryEigenvalueWithinSlack) {
    const SplittingTensor c0((1.0 + 5e-11) * Matrix::Identity(1, 1));
    EXPECT_TRUE(classify_splitting_spectrum(SpaceFormCurvature(-1.0), c0, GeodesicDomain::ray()).consistent);
}

TEST(ClassifySpectrum, VerdictSoundnessOnHyperbolicRays) {
    gen::Rng rng(41);
    const SpaceFormCurvature k(-1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index q = 1 + trial % 5;
        const SplittingTensor c0(gen::random_matrix(rng, q, q, 1.5));
        const auto v = classify_splitting_spectrum(k, c0, GeodesicDomain::ray());
        const double b = max_invertible_time(k, c0);
        EXPECT_EQ(v.consistent, std::isinf(b)) << "trial " << trial;
        EXPECT_EQ(v.consistent, !v.violated_clause.has_value());
    }
}

TEST(DecayReport, SkewOnHyperbolicRayDecays) {
    const ShapeOperatorSet a0({mat2(1.0, 0.3, 0.3, -1.0)});
    ASSERT_TRUE(is_codazzi_compatible(a0, SplittingTensor(kRotation)));
    const auto r = decay_report(a0, SpaceFormCurvature(-1.0), SplittingTensor(kRotation), GeodesicDomain::ray());
    ASSERT_EQ(r.per_block.size(), 1u);
    EXPECT_EQ(r.per_block[0].behavior, Behavior::DecaysToZero);
    EXPECT_DOUBLE_EQ(r.per_block[0].rate, 1.0);
    EXPECT_EQ(r.global_alpha_limit, AlphaLimit::Zero);
    EXPECT_LE(r.per_block[0].sampled_norms[2], 1e-6 * (1.0 + norm_max(a0[0])));
}

TEST(DecayReport, FlatZeroIsParallel) {
    const ShapeOperatorSet a0({mat2(2.0, 1.0, 1.0, 0.0), mat2(0.0, -1.0, -1.0, 3.0)});
    const auto r = decay_report(a0, SpaceFormCurvature(0.0), SplittingTensor::zero(2), GeodesicDomain::ray());
    ASSERT_EQ(r.per_block.size(), 1u);
    EXPECT_TRUE(r.per_block[0].critical);
    EXPECT_EQ(r.per_block[0].behavior, Behavior::ParallelConstant);
    EXPECT_EQ(r.global_alpha_limit, AlphaLimit::Nonzero);
    EXPECT_DOUBLE_EQ(r.per_block[0].sampled_norms[2], 3.0);
}

TEST(DecayReport, CriticalEigenspaceBlowsUp) {
    const ShapeOperatorSet a0({Matrix::Identity(2, 2)});
    const auto r = decay_report(a0, SpaceFormCurvature(-1.0), SplittingTensor(Matrix::Identity(2, 2)),
                                GeodesicDomain::ray());
    ASSERT_EQ(r.per_block.size(), 1u);
    EXPECT_EQ(r.per_block[0].behavior, Behavior::BlowsUp);
    EXPECT_DOUBLE_EQ(r.per_block[0].rate, 1.0);
    EXPECT_EQ(r.global_alpha_limit, AlphaLimit::Divergent);
    // ||A(t) X|| = e^t ||A0 X||
    EXPECT_NEAR(r.per_block[0].sampled_norms[0] / std::exp(5.0), 1.0, 1e-10);
    EXPECT_GE(r.per_block[0].sampled_norms[2], 1e3);
}

TEST(DecayReport, CriticalEigenspaceInKernelIsIdenticallyZero) {
    Matrix c0 = Matrix::Zero(2, 2);
    c0(0, 0) = 1.0;
    c0(1, 1) = -0.5;
    Matrix a = Matrix::Zero(2, 2);
    a(1, 1) = 2.0;
    const auto r =
        decay_report(ShapeOperatorSet({a}), SpaceFormCurvature(-1.0), SplittingTensor(c0), GeodesicDomain::ray());
    ASSERT_EQ(r.per_block.size(), 2u);
    EXPECT_EQ(r.per_block[0].behavior, Behavior::DecaysToZero);
    EXPECT_EQ(r.per_block[1].behavior, Behavior::IdenticallyZero);
    EXPECT_EQ(r.global_alpha_limit, AlphaLimit::Zero);
}

TEST(DecayReport, FlatNilpotentBlock) {
    // C0 nilpotent: J^-1 = I + t C0, so A(t) = A0 + t A0 C0.
    const SplittingTensor c0(mat2(0, 1, 0, 0));

    const ShapeOperatorSet constant({mat2(0, 0, 0, 1)});
    ASSERT_TRUE(is_codazzi_compatible(constant, c0));
    const auto r = decay_report(constant, SpaceFormCurvature(0.0), c0, GeodesicDomain::ray());
    ASSERT_EQ(r.per_block.size(), 1u);
    EXPECT_EQ(r.per_block[0].behavior, Behavior::ParallelConstant);

    const ShapeOperatorSet growing({mat2(0, 1, 1, 0)});
    ASSERT_TRUE(is_codazzi_compatible(growing, c0));
    const auto g = decay_report(growing, SpaceFormCurvature(0.0), c0, GeodesicDomain::ray());
    EXPECT_EQ(g.per_block[0].behavior, Behavior::BlowsUp);
    EXPECT_DOUBLE_EQ(g.per_block[0].rate, 0.0);
    EXPECT_NEAR(g.per_block[0].sampled_norms[2], 20.0, 1e-12);

    const auto z = decay_report(ShapeOperatorSet({Matrix::Zero(2, 2)}), SpaceFormCurvature(0.0), c0,
                                GeodesicDomain::ray());
    EXPECT_EQ(z.per_block[0].behavior, Behavior::IdenticallyZero);
}

TEST(DecayReport, LineReportsBothDirections) {
    Matrix c0 = Matrix::Zero(2, 2);
    c0(0, 0) = 1.0;
    c0(1, 1) = -1.0;
    const auto r = decay_report(ShapeOperatorSet({Matrix::Identity(2, 2)}), SpaceFormCurvature(-1.0),
                                SplittingTensor(c0), GeodesicDomain::line());
    ASSERT_TRUE(r.backward_limit);
    EXPECT_EQ(r.forward_limit, AlphaLimit::Divergent);
    EXPECT_EQ(*r.backward_limit, AlphaLimit::Divergent);
    EXPECT_EQ(r.global_alpha_limit, AlphaLimit::Divergent);

    const auto skew = decay_report(ShapeOperatorSet({mat2(1, 0, 0, -1)}), SpaceFormCurvature(-1.0),
                                   SplittingTensor(kRotation), GeodesicDomain::line());
    EXPECT_EQ(skew.global_alpha_limit, AlphaLimit::Zero);
}

TEST(DecayReport, MixedLimitOnALine) {
    // Forward: eigenvalue 1 is critical with A0 X0 = 0; backward: -C0 has
    // eigenvalue 1 on the other axis with A0 X0 != 0.
    Matrix c0 = Matrix::Zero(2, 2);
    c0(0, 0) = 1.0;
    c0(1, 1) = -1.0;
    Matrix a = Matrix::Zero(2, 2);
    a(1, 1) = 1.0;
    const auto r = decay_report(ShapeOperatorSet({a}), SpaceFormCurvature(-1.0), SplittingTensor(c0),
                                GeodesicDomain::line());
    EXPECT_EQ(r.forward_limit, AlphaLimit::Zero);
    EXPECT_EQ(*r.backward_limit, AlphaLimit::Divergent);
    EXPECT_EQ(r.global_alpha_limit, AlphaLimit::Mixed);
}

TEST(DecayReport, Preconditions) {
    const ShapeOperatorSet a0({Matrix::Identity(2, 2)});
    EXPECT_THROW(decay_report(a0, SpaceFormCurvature(-1.0), SplittingTensor::zero(2), GeodesicDomain::segment(1.0)),
                 PreconditionViolated);
    EXPECT_THROW(decay_report(a0, SpaceFormCurvature(1.0), SplittingTensor::zero(2), GeodesicDomain::ray()),
                 PreconditionViolated);
    EXPECT_THROW(decay_report(a0, SpaceFormCurvature(-1.0), SplittingTensor(2.0 * Matrix::Identity(2, 2)),
                              GeodesicDomain::ray()),
                 InconsistentSpectrum);
    EXPECT_THROW(decay_report(a0, SpaceFormCurvature(-1.0), SplittingTensor::zero(3), GeodesicDomain::ray()),
                 DimensionMismatch);
}

TEST(DecayReport, VerdictAgreementOnRandomDecayingPairs) {
    gen::Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index q = 2 + trial % 4;
        const auto pair = gen::random_decaying_pair(rng, q, 2);
        const auto r = decay_report(pair.a0, SpaceFormCurvature(-1.0), pair.c0, GeodesicDomain::ray());
        double a0n = 0.0;
        for (const auto& a : pair.a0) a0n = std::max(a0n, norm_max(a));
        for (const auto& blk : r.per_block) {
            if (blk.behavior == Behavior::DecaysToZero) EXPECT_LE(blk.sampled_norms[2], 1e-6 * (1.0 + a0n));
        }
    }
}

TEST(SignBalance, Examples) {
    const SpaceFormCurvature sphere(1.0);
    gen::Rng rng(47);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const double a = u(rng);
        const double b = u(rng);
        EXPECT_TRUE(sign_balance_check(ShapeOperatorSet({mat2(a, b, b, -a)}), sphere, SplittingTensor(kRotation)));
    }
    EXPECT_TRUE(sign_balance_check(ShapeOperatorSet({Matrix::Zero(2, 2)}), sphere, SplittingTensor(kRotation)));
    EXPECT_THROW(sign_balance_check(ShapeOperatorSet({Matrix::Zero(2, 2)}), sphere, SplittingTensor::zero(2)),
                 PreconditionViolated);
    EXPECT_THROW(sign_balance_check(ShapeOperatorSet({Matrix::Identity(2, 2)}), sphere, SplittingTensor(kRotation)),
                 PreconditionViolated);
    EXPECT_THROW(
        sign_balance_check(ShapeOperatorSet({Matrix::Zero(2, 2)}), SpaceFormCurvature(0.0), SplittingTensor(kRotation)),
        PreconditionViolated);
}

TEST(SignBalance, InvariantAlongTheFlowAndAntipodalNegation) {
    gen::Rng rng(53);
    const SpaceFormCurvature sphere(1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto pair = gen::random_rotation_pair(rng, 2);
        const Inertia in0 = inertia(pair.a0[0]);
        for (double t : {0.4, 1.3, 2.2, 3.0}) {
            EXPECT_EQ(inertia(shape_operator_at(pair.a0, sphere, pair.c0, t)[0]), in0);
        }
        const auto at_pi = shape_operator_at(pair.a0, sphere, pair.c0, std::numbers::pi);
        for (std::size_t x = 0; x < at_pi.size(); ++x) EXPECT_LE(norm_max(at_pi[x] + pair.a0[x]), 1e-8);
    }
}
