#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nullity/classify.hpp"
#include "nullity/types.hpp"

namespace nullity {

// ---------------------------------------------------------------------------
// Dimension thresholds

/// rho(m) = 8a + 2^b for m = 2^(4a+b) * odd, b in {0,1,2,3}.
int radon_hurwitz(int m);

/// nu0 >= rho(q): the rigidity condition for complete submanifolds of the
/// sphere with minimum nullity nu0 and conullity q.
bool sphere_rigidity_threshold(int nu0, int q);

/// max{k in [0, n-1] : rho(n - k) >= k + 1}
int nu_n(int n);

/// n - nu_n(n) >= 2p + 1, the dimension condition that, combined with the
/// nonpositive-extrinsic-curvature nullity estimate, forces total geodesy in
/// the sphere. Evaluated verbatim; no geometric claim is attached.
bool nonpositive_sphere_rigidity(int n, int p);

/// nu0 >= q(q+1)/2: enough nullity to find a nullity direction whose
/// splitting tensor lies in Skew + span{I}.
bool high_nullity_applicable(int nu0, int q);

/// max(n - 2p, 0): lower bound for the nullity of a submanifold with
/// nonpositive extrinsic curvature in codimension p.
int florit_bound(int n, int p);

/// n >= 2p^2 + 3p
bool nonpositive_extrinsic_applicable(int n, int p);

/// For every nu0 >= florit_bound(n, p), with q = n - nu0:
/// nonpositive_extrinsic_applicable(n, p) implies high_nullity_applicable(nu0, q).
bool nonpositive_extrinsic_chain_holds(int n, int p);

// ---------------------------------------------------------------------------
// Special nullity direction

/// Splitting tensors C_{T_i} of an orthonormal nullity basis T_1..T_nu0.
/// C_T is linear in T, so a direction sum a_i T_i maps to sum a_i C_{T_i}.
class SplittingFamily {
public:
    SplittingFamily() = default;
    SplittingFamily(std::vector<SplittingTensor> basis, Eigen::Index q);
    explicit SplittingFamily(std::vector<SplittingTensor> basis);

    Eigen::Index q() const noexcept { return q_; }
    std::size_t size() const noexcept { return basis_.size(); }
    bool empty() const noexcept { return basis_.empty(); }
    const std::vector<SplittingTensor>& basis() const noexcept { return basis_; }
    const SplittingTensor& operator[](std::size_t i) const { return basis_[i]; }

    SplittingTensor combine(const Vector& coeffs) const;

private:
    std::vector<SplittingTensor> basis_;
    Eigen::Index q_ = 0;
};

/// A unit nullity direction T0 with C_{T0} = -S - lambda I, S skew.
struct SpecialDirection {
    Vector coeffs;
    Matrix skew;
    double lambda = 0.0;
    SplittingTensor splitting;  ///< C_{T0}
};

/// Kernel search for T -> symmetric traceless part of C_T. Returns a unit
/// kernel vector, sign-normalized so lambda <= 0 (ties broken by making the
/// first nonzero coefficient positive), or nullopt when the map is
/// injective. Always succeeds when high_nullity_applicable(nu0, q).
std::optional<SpecialDirection> find_special_nullity_direction(const SplittingFamily& family);

struct HighNullityResult {
    SpecialDirection direction;
    /// +1 when the geodesic runs along T0, -1 along -T0.
    int orientation = 1;
    DecayReport report;
    /// lambda == -sqrt(-c) within 1e-12: sqrt(-c) may be a real eigenvalue
    /// of C_{T0}, so the forward direction alone does not decide the limit.
    bool boundary_case = false;
};

/// Special direction followed by the decay report along its ray (c <= 0).
/// The T0 orientation is used unless the ray along T0 is inconsistent or
/// has sqrt(-c) as an eigenvalue, in which case -T0 is used.
/// Throws NoDirection when the kernel search fails.
HighNullityResult high_nullity_pipeline(const SplittingFamily& family, const ShapeOperatorSet& a0,
                                        SpaceFormCurvature c);

// ---------------------------------------------------------------------------
// Scalar curvature and minimality

/// ||H|| = (1/n) sqrt(sum_xi (tr A_xi)^2). Operators of size <= n are
/// understood as zero-padded to the full tangent space.
double mean_curvature_norm(const ShapeOperatorSet& a, int n);

/// ||alpha||^2 = sum_xi ||A_xi||_F^2
double alpha_norm_squared(const ShapeOperatorSet& a);
double alpha_norm(const ShapeOperatorSet& a);

/// sup_{|X|=1} ||alpha(X, .)||: the spectral norm of the stacked operators.
double alpha_operator_norm(const ShapeOperatorSet& a);

/// Gauss equation: s = c + n/(n-1) ||H||^2 - ||alpha||^2 / (n(n-1)).
double scalar_curvature(const ShapeOperatorSet& a, int n, SpaceFormCurvature c);

enum class MinimalityVerdict { Minimal, Inconclusive };
std::string to_string(MinimalityVerdict verdict);

/// Samples of the second fundamental form along a trajectory. Requires
/// ||H|| constant to 1e-8 (else InconsistentInput). Reports Minimal when
/// alpha_operator_norm drops below 1e-6 at some sample.
MinimalityVerdict minimality_certificate(std::span<const ShapeOperatorSet> samples, int n);

// ---------------------------------------------------------------------------
// Cylinders and integrable conullity

struct CylinderSample {
    Vector point;          ///< f(x) in R^m
    Matrix nullity_basis;  ///< m x k, spans f_* D at x
    int leaf = 0;          ///< samples with equal leaf lie on one leaf of D
};

struct CylinderSplit {
    Matrix axis;  ///< V: m x k orthonormal
    std::vector<Vector> base_points;   ///< V-perp components g(x)
    std::vector<Vector> fiber_coords;  ///< V components
    double residual = 0.0;             ///< max base-point spread within a leaf
    double max_angle = 0.0;            ///< largest principal angle to V
};

/// Checks f_* D is one constant k-plane V (principal angles <= 1e-8, else
/// NotConstant) and splits every sample into base and fiber parts.
CylinderSplit cylinder_split(std::span<const CylinderSample> samples, int k);

enum class ConullityVerdictKind { MustBeTotallyGeodesic, MustBeCylinder, LeafBound };
std::string to_string(ConullityVerdictKind kind);

struct IntegrableConullityVerdict {
    ConullityVerdictKind kind = ConullityVerdictKind::MustBeTotallyGeodesic;
    /// c > 0: conullity is trivial (q == 0); c = 0: family vanishes;
    /// c < 0: every eigenvalue lies in bound.
    bool check_passed = true;
    std::optional<Interval> bound;
    std::vector<double> offending_eigenvalues;
};

/// Requires every C_{T_i} symmetric (integrable conullity), else NotIntegrable.
IntegrableConullityVerdict integrable_conullity_classify(SpaceFormCurvature c, const SplittingFamily& family);

}  // namespace nullity
