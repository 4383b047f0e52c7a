#pragma once

#include <span>
#include <vector>

#include "nullity/types.hpp"

namespace nullity {

/// Numerical oracles: fixed-step RK4 integration of the evolution ODEs,
/// independent of the closed forms in jacobi.hpp.
///
///   dC/dt = C^2 + cI,   C(0) = C0       (Riccati flow of the splitting tensor)
///   dA/dt = A C(t),     A(0) = A0       (shape operators, parallel normal frame)
///
/// Each interval [t_i, t_{i+1}] is split into ceil(dt / step) equal steps so
/// that sample times are hit exactly.

inline constexpr double kDefaultOracleStep = 1e-3;

/// Integrates the Riccati flow to t_end. Throws SingularJacobi once ||C||
/// exceeds kBlowUpGuard (the trajectory ran into a zero of det J).
SplittingTensor riccati_flow(SpaceFormCurvature c, const SplittingTensor& c0, double t_end,
                             double step = kDefaultOracleStep);

/// Riccati flow sampled at nondecreasing times >= 0.
std::vector<SplittingTensor> riccati_trajectory(SpaceFormCurvature c, const SplittingTensor& c0,
                                                std::span<const double> times, double step = kDefaultOracleStep);

/// Integrates dA/dt = A C(t) to t_end, with C(t) from the closed-form
/// splitting tensor. Throws SingularJacobi when t_end is past the
/// invertibility horizon.
ShapeOperatorSet shape_ode_flow(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0,
                                double t_end, double step = kDefaultOracleStep);

std::vector<ShapeOperatorSet> shape_ode_trajectory(const ShapeOperatorSet& a0, SpaceFormCurvature c,
                                                   const SplittingTensor& c0, std::span<const double> times,
                                                   double step = kDefaultOracleStep);

}  // namespace nullity
