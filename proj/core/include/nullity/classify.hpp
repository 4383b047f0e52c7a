#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nullity/linalg.hpp"
#include "nullity/types.hpp"

namespace nullity {

/// Eigenvalue obstructions on the splitting tensor C0 of a complete nullity
/// geodesic:
///   I    c > 0, length >= pi/sqrt(c): no real eigenvalues
///   II   c <= 0, ray:  real eigenvalues in (-inf, sqrt(-c)]
///   II1  c = 0, line:  the only possible real eigenvalue is 0
///   II2  c < 0, line:  real eigenvalues in [-sqrt(-c), sqrt(-c)]
enum class Clause { I, II, II1, II2 };

/// "(i)", "(ii)", "(ii.1)", "(ii.2)"
std::string label(Clause clause);

struct Interval {
    double lo = -kInfinity;
    double hi = kInfinity;

    static Interval empty() { return {kInfinity, -kInfinity}; }
    bool is_empty() const noexcept { return lo > hi; }
    bool contains(double x, double slack = kIntervalSlack) const noexcept {
        return !is_empty() && x >= lo - slack && x <= hi + slack;
    }
};

struct SpectrumVerdict {
    bool consistent = true;
    std::optional<Clause> violated_clause;
    std::vector<Complex> offending_eigenvalues;
    /// Interval the real eigenvalues must lie in; absent when no clause
    /// applies to the (curvature, domain) pair.
    std::optional<Interval> admissible_interval;
    /// Full spectrum of C0, for reporting.
    std::vector<Complex> spectrum;
};

/// On a line the line clause (II1 or II2) is checked; it contains the ray
/// clause for both orientations of the geodesic.
SpectrumVerdict classify_splitting_spectrum(SpaceFormCurvature c, const SplittingTensor& c0,
                                            const GeodesicDomain& domain);

enum class Behavior { DecaysToZero, ParallelConstant, BlowsUp, IdenticallyZero };
enum class AlphaLimit { Zero, Nonzero, Divergent, Mixed };

std::string to_string(Behavior behavior);
std::string to_string(AlphaLimit limit);

inline constexpr std::array<double, 3> kDecaySampleTimes = {5.0, 10.0, 20.0};

/// One C0-invariant block of the conullity: the generalized eigenspace of
/// the critical eigenvalue (sqrt(-c), or 0 when c = 0) or its complement.
struct DecayBlock {
    std::string descriptor;
    Matrix basis;  ///< orthonormal columns spanning the block
    bool critical = false;
    std::vector<Complex> eigenvalues;
    Behavior behavior = Behavior::DecaysToZero;
    /// Exponential rate per unit length; 0 for algebraic behaviour.
    double rate = 0.0;
    /// max_xi ||A_xi(t) basis||_inf at kDecaySampleTimes.
    std::array<double, 3> sampled_norms{};
};

struct DecayReport {
    std::vector<DecayBlock> per_block;  ///< forward direction, t -> +inf
    AlphaLimit forward_limit = AlphaLimit::Zero;
    /// Only for a line: the reversed geodesic, t -> -inf.
    std::vector<DecayBlock> backward_blocks;
    std::optional<AlphaLimit> backward_limit;
    /// forward_limit on a ray; on a line the common limit, or Mixed.
    AlphaLimit global_alpha_limit = AlphaLimit::Zero;
};

/// Asymptotics of A_xi(t) X along a ray or line (c <= 0).
/// Throws PreconditionViolated for a segment or c > 0, and
/// InconsistentSpectrum when classify_splitting_spectrum rejects C0.
DecayReport decay_report(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0,
                         const GeodesicDomain& domain);

/// For c > 0 and C0 without real eigenvalues: true iff every A_xi has as
/// many positive as negative eigenvalues. Throws PreconditionViolated when
/// c <= 0, C0 has a real eigenvalue, or (A0, C0) is not Codazzi compatible.
bool sign_balance_check(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0);

}  // namespace nullity
