#pragma once

#include "nullity/types.hpp"

namespace nullity {

/// Closed-form evolution along a unit speed nullity geodesic, in a parallel
/// orthonormal frame (parallel transport is the identity in coordinates).
///
/// J(t) solves J'' + cJ = 0 with J(0) = I, J'(0) = -C0:
///
///   c > 0:  J = cos(st) I - sin(st)/s C0          s = sqrt(|c|)
///   c = 0:  J = I - t C0
///   c < 0:  J = cosh(st) I - sinh(st)/s C0
///
/// and the splitting tensor and shape operators are
///
///   C(t) = -J'(t) J(t)^-1,    A(t) = A0 J(t)^-1.
///
/// Negative t walks the geodesic backwards (equivalently, forward with -C0).
/// The invertibility horizon is computed once from the spectrum of C0.
class JacobiFlow {
public:
    JacobiFlow(SpaceFormCurvature c, SplittingTensor c0);

    const SpaceFormCurvature& curvature() const noexcept { return c_; }
    const SplittingTensor& initial_splitting() const noexcept { return c0_; }

    /// inf{t > 0 : det J(t) = 0}, or infinity.
    double forward_limit() const noexcept { return forward_limit_; }
    /// Same for the reversed geodesic, i.e. the limit for -t.
    double backward_limit() const noexcept { return backward_limit_; }
    /// -backward_limit() < t < forward_limit()
    bool invertible_at(double t) const noexcept;

    Matrix jacobi(double t) const;
    Matrix jacobi_derivative(double t) const;

    /// Throws SingularJacobi outside the open invertibility interval.
    SplittingTensor splitting(double t) const;
    ShapeOperatorSet shape(const ShapeOperatorSet& a0, double t) const;

private:
    void require_invertible(double t) const;

    SpaceFormCurvature c_;
    SplittingTensor c0_;
    double forward_limit_;
    double backward_limit_;
};

JacobiTensor jacobi_tensor(SpaceFormCurvature c, const SplittingTensor& c0, double t);

/// Exact derivative d/dt of jacobi_tensor.
Matrix jacobi_derivative(SpaceFormCurvature c, const SplittingTensor& c0, double t);

/// First positive zero of det J(t), or infinity. Only real eigenvalues of
/// C0 can make J singular:
///   c > 0: first root of cot(st) = lambda/s (every real lambda)
///   c = 0: 1/lambda for lambda > 0
///   c < 0: artanh(s/lambda)/s for lambda > s
double max_invertible_time(SpaceFormCurvature c, const SplittingTensor& c0);

SplittingTensor splitting_tensor_at(SpaceFormCurvature c, const SplittingTensor& c0, double t);

ShapeOperatorSet shape_operator_at(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0,
                                   double t);

/// True iff A * C0^k is symmetric (relative kSymmetryTol) for every A in a0
/// and k = 0..q-1. By Cayley-Hamilton this is symmetry of A J(t)^-1 for all t.
bool is_codazzi_compatible(const ShapeOperatorSet& a0, const SplittingTensor& c0);

EvolutionState evolve(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0, double t);

}  // namespace nullity
