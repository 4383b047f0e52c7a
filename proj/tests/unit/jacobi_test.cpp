#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nullity/generators.hpp"
#include "nullity/jacobi.hpp"
#include "nullity/linalg.hpp"
#include "support/oracles.hpp"

using namespace nullity;

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

Matrix rotation() { return mat2(0, 1, -1, 0); }

}  // namespace

TEST(JacobiTensor, FlatIsAffine) {
    const Matrix c0 = mat2(0.3, -1.2, 0.7, 2.0);
    for (double t : {-1.5, 0.0, 0.25, 3.0}) {
        const auto j = jacobi_tensor(SpaceFormCurvature(0.0), SplittingTensor(c0), t);
        EXPECT_LE(norm_max(j.mat - (Matrix::Identity(2, 2) - t * c0)), 1e-15);
        EXPECT_EQ(j.t, t);
    }
}

TEST(JacobiTensor, SphereAntipodalIsMinusIdentity) {
    const auto j = jacobi_tensor(SpaceFormCurvature(1.0), SplittingTensor::zero(3), std::numbers::pi);
    EXPECT_LE(norm_max(j.mat + Matrix::Identity(3, 3)), 1e-15);
}

TEST(JacobiTensor, IdentityAtZero) {
    for (double c : {-2.0, -1.0, 0.0, 0.5, 1.0}) {
        const auto j = jacobi_tensor(SpaceFormCurvature(c), SplittingTensor::zero(4), 0.0);
        EXPECT_EQ(j.mat, Matrix::Identity(4, 4));
    }
}

TEST(JacobiTensor, HyperbolicRotationMatchesCoshSinh) {
    const auto j = jacobi_tensor(SpaceFormCurvature(-1.0), SplittingTensor(rotation()), 1.0);
    const Matrix expected = std::cosh(1.0) * Matrix::Identity(2, 2) - std::sinh(1.0) * rotation();
    EXPECT_LE(norm_max(j.mat - expected), 1e-14);
}

TEST(JacobiTensor, GeneralCurvatureScales) {
    const Matrix c0 = mat2(0.4, 0.1, -0.2, 0.3);
    const double s = std::sqrt(2.5);
    const auto j = jacobi_tensor(SpaceFormCurvature(2.5), SplittingTensor(c0), 0.7);
    const Matrix expected = std::cos(s * 0.7) * Matrix::Identity(2, 2) - std::sin(s * 0.7) / s * c0;
    EXPECT_LE(norm_max(j.mat - expected), 1e-14);
}

TEST(JacobiDerivative, InitialValueIsMinusC0) {
    const Matrix c0 = mat2(0.4, 0.1, -0.2, 0.3);
    for (double c : {-1.0, 0.0, 1.0, 3.0}) {
        EXPECT_LE(norm_max(jacobi_derivative(SpaceFormCurvature(c), SplittingTensor(c0), 0.0) + c0), 1e-15);
    }
}

TEST(JacobiDerivative, FlatIsConstant) {
    const Matrix c0 = mat2(0.4, 0.1, -0.2, 0.3);
    EXPECT_LE(norm_max(jacobi_derivative(SpaceFormCurvature(0.0), SplittingTensor(c0), 7.0) + c0), 1e-15);
}

TEST(JacobiDerivative, HyperbolicZeroIsSinh) {
    const Matrix d = jacobi_derivative(SpaceFormCurvature(-1.0), SplittingTensor::zero(2), 1.0);
    EXPECT_LE(norm_max(d - std::sinh(1.0) * Matrix::Identity(2, 2)), 1e-14);
}

TEST(JacobiProperties, SecondDifferenceResidualAndDerivative) {
    gen::Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const double c = std::array{-1.0, 0.0, 1.0}[trial % 3];
        const Eigen::Index q = 1 + trial % 5;
        const SplittingTensor c0(gen::random_matrix(rng, q, q));
        const SpaceFormCurvature k(c);
        auto j = [&](double t) { return jacobi_tensor(k, c0, t).mat; };
        for (double t : {0.3, 1.7, 4.2}) {
            const Matrix jt = j(t);
            const Matrix residual = oracle::second_difference(j, t, 1e-3) + c * jt;
            EXPECT_LE(norm_max(residual), 1e-4 * (1.0 + norm_max(jt))) << "c=" << c << " t=" << t;

            const Matrix dj = jacobi_derivative(k, c0, t);
            const Matrix fd = oracle::central_difference(j, t, 1e-6);
            EXPECT_LE(norm_max(dj - fd), 1e-6 * (1.0 + norm_max(dj))) << "c=" << c << " t=" << t;
        }
    }
}

TEST(JacobiProperties, LargeHyperbolicTimeKeepsPrecision) {
    // cosh t - sinh t at t = 30 is e^-30; a naive evaluation returns ~1e-3 noise.
    const auto j = jacobi_tensor(SpaceFormCurvature(-1.0), SplittingTensor(Matrix::Identity(1, 1)), 30.0);
    EXPECT_NEAR(j.mat(0, 0) / std::exp(-30.0), 1.0, 1e-12);
}

TEST(MaxInvertibleTime, SpecValues) {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = -3.0;
    EXPECT_NEAR(max_invertible_time(SpaceFormCurvature(0.0), SplittingTensor(d)), 0.5, 1e-15);
    EXPECT_NEAR(max_invertible_time(SpaceFormCurvature(1.0), SplittingTensor(Matrix::Ones(1, 1))), std::numbers::pi / 4,
                1e-15);
    EXPECT_EQ(max_invertible_time(SpaceFormCurvature(-1.0), SplittingTensor(rotation())), kInfinity);
    EXPECT_NEAR(max_invertible_time(SpaceFormCurvature(-1.0), SplittingTensor(2.0 * Matrix::Identity(2, 2))),
                0.5 * std::log(3.0), 1e-15);
}

TEST(MaxInvertibleTime, ComplexEigenvaluesNeverSingular) {
    EXPECT_EQ(max_invertible_time(SpaceFormCurvature(0.0), SplittingTensor(rotation())), kInfinity);
    // For c > 0 the complex pair is harmless, the real eigenvalue still decides.
    Matrix m = Matrix::Zero(3, 3);
    m.block(0, 0, 2, 2) = rotation();
    m(2, 2) = 0.0;
    EXPECT_NEAR(max_invertible_time(SpaceFormCurvature(1.0), SplittingTensor(m)), std::numbers::pi / 2, 1e-15);
}

TEST(MaxInvertibleTime, NegativeEigenvaluesOnlyForFlatAndHyperbolic) {
    const SplittingTensor neg(-Matrix::Identity(2, 2));
    EXPECT_EQ(max_invertible_time(SpaceFormCurvature(0.0), neg), kInfinity);
    EXPECT_EQ(max_invertible_time(SpaceFormCurvature(-1.0), neg), kInfinity);
    EXPECT_EQ(max_invertible_time(SpaceFormCurvature(-1.0), SplittingTensor(Matrix::Identity(2, 2))), kInfinity);
    EXPECT_NEAR(max_invertible_time(SpaceFormCurvature(1.0), neg), 3.0 * std::numbers::pi / 4, 1e-14);
}

TEST(MaxInvertibleTime, AgreesWithDeterminantSampling) {
    gen::Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const double c = std::array{-1.0, 0.0, 1.0}[trial % 3];
        const Eigen::Index q = 1 + trial % 4;
        const Matrix c0 = gen::random_matrix(rng, q, q, 1.5);
        const double horizon = 30.0;
        const double sampled = oracle::first_det_root(c, c0, horizon);
        const double closed = max_invertible_time(SpaceFormCurvature(c), SplittingTensor(c0));
        if (sampled == oracle::kNoRoot) {
            EXPECT_GT(closed, horizon - 1e-3) << "trial " << trial;
        } else {
            EXPECT_NEAR(closed, sampled, 1e-6) << "trial " << trial;
        }
    }
}

TEST(MaxInvertibleTime, DoubleRootFoundByOracleToo) {
    const Matrix c0 = 2.0 * Matrix::Identity(2, 2);
    EXPECT_NEAR(oracle::first_det_root(0.0, c0, 5.0), 0.5, 1e-6);
    EXPECT_NEAR(max_invertible_time(SpaceFormCurvature(0.0), SplittingTensor(c0)), 0.5, 1e-15);
}

TEST(SplittingTensorAt, Examples) {
    const SpaceFormCurvature flat(0.0);
    EXPECT_EQ(norm_max(splitting_tensor_at(flat, SplittingTensor::zero(3), 2.0).matrix()), 0.0);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.8;
    d(1, 1) = -0.5;
    for (double t : {0.3, 1.0}) {
        const Matrix c = splitting_tensor_at(flat, SplittingTensor(d), t).matrix();
        EXPECT_NEAR(c(0, 0), 0.8 / (1 - 0.8 * t), 1e-14);
        EXPECT_NEAR(c(1, 1), -0.5 / (1 + 0.5 * t), 1e-14);
        EXPECT_NEAR(c(0, 1), 0.0, 1e-15);
    }

    const Matrix h = splitting_tensor_at(SpaceFormCurvature(-1.0), SplittingTensor::zero(2), 0.9).matrix();
    EXPECT_LE(norm_max(h + std::tanh(0.9) * Matrix::Identity(2, 2)), 1e-15);
}

TEST(SplittingTensorAt, SingularAtOrBeyondHorizon) {
    const SplittingTensor one(Matrix::Ones(1, 1));
    EXPECT_THROW(splitting_tensor_at(SpaceFormCurvature(0.0), one, 1.0), SingularJacobi);
    EXPECT_THROW(splitting_tensor_at(SpaceFormCurvature(0.0), one, 2.0), SingularJacobi);
    EXPECT_NO_THROW(splitting_tensor_at(SpaceFormCurvature(0.0), one, 0.999));
    EXPECT_THROW(shape_operator_at(ShapeOperatorSet({Matrix::Ones(1, 1)}), SpaceFormCurvature(0.0), one, 1.0),
                 SingularJacobi);
}

TEST(SplittingTensorAt, BackwardTimeUsesReversedGeodesic) {
    const SplittingTensor one(Matrix::Ones(1, 1));
    // J(t) = 1 - t is invertible for every t < 0.
    EXPECT_NEAR(splitting_tensor_at(SpaceFormCurvature(0.0), one, -3.0).matrix()(0, 0), 1.0 / 4.0, 1e-15);
    EXPECT_THROW(splitting_tensor_at(SpaceFormCurvature(0.0), SplittingTensor(-Matrix::Ones(1, 1)), -1.0),
                 SingularJacobi);
}

TEST(GaugeIdentity, ExactAtZero) {
    gen::Rng rng(3);
    for (double c : {-1.0, 0.0, 1.0}) {
        const auto pair = gen::random_compatible_pair(rng, 3, 2);
        const SpaceFormCurvature k(c);
        EXPECT_EQ(splitting_tensor_at(k, pair.c0, 0.0).matrix(), pair.c0.matrix());
        const auto a = shape_operator_at(pair.a0, k, pair.c0, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], pair.a0[i]);
    }
}

TEST(ShapeOperatorAt, Examples) {
    const ShapeOperatorSet a0({mat2(1.0, 0.5, 0.5, -2.0)});
    const auto same = shape_operator_at(a0, SpaceFormCurvature(0.0), SplittingTensor::zero(2), 4.0);
    EXPECT_EQ(same[0], a0[0]);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.6;
    const auto a = shape_operator_at(a0, SpaceFormCurvature(0.0), SplittingTensor(d), 1.0);
    Matrix scale = Matrix::Identity(2, 2);
    scale(0, 0) = 1.0 / (1.0 - 0.6);
    EXPECT_LE(norm_max(a[0] - a0[0] * scale), 1e-14);
}

TEST(ShapeOperatorAt, CriticalEigenvectorBlowsUpLikeOneOverExpMinus) {
    // C0 X0 = X0 with sqrt(-c) = 1; ||A(t) X0|| = ||A0 X0|| / (cosh t - sinh t).
    const SplittingTensor c0(Matrix::Identity(2, 2));
    const ShapeOperatorSet a0({mat2(2.0, 0.0, 0.0, 1.0)});
    const Vector x0 = Vector::Unit(2, 0);
    for (double t : {1.0, 5.0, 10.0}) {
        const auto a = shape_operator_at(a0, SpaceFormCurvature(-1.0), c0, t);
        EXPECT_NEAR((a[0] * x0).norm() / ((a0[0] * x0).norm() * std::exp(t)), 1.0, 1e-12);
    }
}

TEST(Codazzi, Examples) {
    gen::Rng rng(17);
    EXPECT_TRUE(is_codazzi_compatible(ShapeOperatorSet({gen::random_symmetric(rng, 3)}), SplittingTensor::zero(3)));

    const Matrix s0 = mat2(2.0, 0.3, 0.3, -1.0);
    const Matrix s1 = mat2(0.5, -0.7, -0.7, 0.2);
    EXPECT_TRUE(is_codazzi_compatible(ShapeOperatorSet({s0}), SplittingTensor(s0.inverse() * s1)));

    EXPECT_FALSE(is_codazzi_compatible(ShapeOperatorSet({mat2(1, 0, 0, 2)}), SplittingTensor(mat2(0, 1, 0, 0))));
}

TEST(Codazzi, EquivalentToSymmetryAlongTheFlow) {
    gen::Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index q = 2 + trial % 3;
        const auto pair = gen::random_compatible_pair(rng, q, 2);
        const double b = max_invertible_time(SpaceFormCurvature(0.0), pair.c0);
        for (double frac : {0.2, 0.5, 0.8}) {
            const double t = std::isinf(b) ? 3.0 * frac : frac * b;
            for (const auto& a : shape_operator_at(pair.a0, SpaceFormCurvature(0.0), pair.c0, t)) {
                EXPECT_LE(asymmetry(a), 1e-8 * (1.0 + norm_max(a)));
            }
        }
    }
}

TEST(FlowProperties, RankSignatureAndKernelInvariance) {
    gen::Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const double c = std::array{-1.0, 0.0, 1.0}[trial % 3];
        const SpaceFormCurvature k(c);
        const Eigen::Index q = 3 + trial % 2;
        auto pair = gen::random_compatible_pair(rng, q, 1);
        const double b = std::min(max_invertible_time(k, pair.c0), 5.0);
        const Inertia in0 = inertia(pair.a0[0]);
        const int rank0 = numerical_rank(pair.a0[0]);
        for (int i = 1; i <= 10; ++i) {
            const double t = 0.9 * b * i / 10.0;
            const Matrix a = shape_operator_at(pair.a0, k, pair.c0, t)[0];
            EXPECT_EQ(numerical_rank(a), rank0) << "trial " << trial << " t " << t;
            EXPECT_EQ(inertia(a), in0) << "trial " << trial << " t " << t;
        }
    }

    // Singular A0 compatible with C0: A0 = S1 with S1 of rank 1, C0 = S0^-1 S1.
    Matrix s0 = Matrix::Identity(3, 3);
    s0(2, 2) = -2.0;
    const Vector v = (Vector(3) << 1.0, -0.5, 0.25).finished();
    const Matrix s1 = v * v.transpose();
    const SplittingTensor c0(s0.inverse() * s1);
    const ShapeOperatorSet a0({s1});
    ASSERT_TRUE(is_codazzi_compatible(a0, c0));
    const Matrix ker = null_space(a0[0]);
    ASSERT_EQ(ker.cols(), 2);
    const Matrix image = c0.matrix() * ker;
    EXPECT_LE(norm_max(a0[0] * image), 1e-8);
}

TEST(FlowProperties, Cocycle) {
    gen::Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const double c = std::array{-1.0, 0.0, 1.0}[trial % 3];
        const SpaceFormCurvature k(c);
        const Eigen::Index q = 1 + trial % 4;
        const SplittingTensor c0(gen::random_matrix(rng, q, q));
        const double b = std::min(max_invertible_time(k, c0), 4.0);
        const double s = 0.3 * b;
        const double t = 0.4 * b;
        const Matrix direct = splitting_tensor_at(k, c0, s + t).matrix();
        const Matrix composed = splitting_tensor_at(k, splitting_tensor_at(k, c0, s), t).matrix();
        EXPECT_LE(norm_max(direct - composed), 1e-8 * (1.0 + norm_max(direct))) << "trial " << trial;
    }
}

TEST(Evolve, StateIsConsistent) {
    gen::Rng rng(37);
    const auto pair = gen::random_compatible_pair(rng, 3, 2);
    const SpaceFormCurvature k(-1.0);
    const double b = std::min(max_invertible_time(k, pair.c0), 2.0);
    const auto state = evolve(pair.a0, k, pair.c0, 0.5 * b);
    EXPECT_EQ(state.t, 0.5 * b);
    EXPECT_LE(norm_max(state.jacobi.mat - jacobi_tensor(k, pair.c0, 0.5 * b).mat), 0.0);
    const Matrix jinv = state.jacobi.mat.inverse();
    EXPECT_LE(norm_max(state.splitting.matrix() + jacobi_derivative(k, pair.c0, 0.5 * b) * jinv), 1e-10);
    EXPECT_LE(norm_max(state.shape[1] - pair.a0[1] * jinv), 1e-10);
}
