#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nullity {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative asymmetry tolerance: ||M - M^T|| <= kSymmetryTol * (1 + ||M||).
inline constexpr double kSymmetryTol = 1e-8;
/// An eigenvalue is treated as real when |Im| <= kRealEigenTol * (1 + |lambda|).
inline constexpr double kRealEigenTol = 1e-10;
/// Slack applied to closed eigenvalue intervals.
inline constexpr double kIntervalSlack = 1e-10;
/// RK4 integration of the Riccati flow aborts once ||C|| exceeds this.
inline constexpr double kBlowUpGuard = 1e8;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Jacobi tensor is singular at (or before) the requested time.
class SingularJacobi : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class InconsistentSpectrum : public Error {
public:
    using Error::Error;
};

class NoDirection : public Error {
public:
    using Error::Error;
};

class InconsistentInput : public Error {
public:
    using Error::Error;
};

class NotConstant : public Error {
public:
    using Error::Error;
};

class NotIntegrable : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Domain types

/// Constant sectional curvature c of the ambient space form.
class SpaceFormCurvature {
public:
    explicit SpaceFormCurvature(double c);

    double value() const noexcept { return c_; }
    /// sqrt(|c|), the natural inverse length scale.
    double sqrt_abs() const noexcept { return scale_; }
    int sign() const noexcept { return (c_ > 0.0) - (c_ < 0.0); }

    bool spherical() const noexcept { return c_ > 0.0; }
    bool flat() const noexcept { return c_ == 0.0; }
    bool hyperbolic() const noexcept { return c_ < 0.0; }

private:
    double c_;
    double scale_;
};

/// Dimensions (n, p, nu, q) of a configuration; q = n - nu.
struct NullityProfile {
    int n = 1;
    int p = 0;
    int nu = 0;
    int q = 1;

    /// Validates n >= 1, p >= 0, 0 <= nu <= n and derives q.
    static NullityProfile make(int n, int p, int nu);
};

/// Splitting tensor C_T on the conullity, in a parallel orthonormal frame.
/// Not assumed symmetric.
class SplittingTensor {
public:
    SplittingTensor() = default;
    explicit SplittingTensor(Matrix mat);

    static SplittingTensor zero(Eigen::Index q) { return SplittingTensor(Matrix::Zero(q, q)); }

    const Matrix& matrix() const noexcept { return mat_; }
    Eigen::Index dim() const noexcept { return mat_.rows(); }

private:
    Matrix mat_;
};

/// Shape operators A_xi (restricted to the conullity) for a parallel
/// orthonormal normal frame xi_1..xi_p.
///
/// Construction only enforces square, equally sized entries: operators
/// evolved from Codazzi-incompatible data are legitimately asymmetric.
/// Use checked() for input data that must be symmetric.
class ShapeOperatorSet {
public:
    ShapeOperatorSet() = default;
    explicit ShapeOperatorSet(std::vector<Matrix> ops);

    /// Same as the constructor, but also rejects entries that are not
    /// symmetric to kSymmetryTol.
    static ShapeOperatorSet checked(std::vector<Matrix> ops);

    std::size_t size() const noexcept { return ops_.size(); }
    bool empty() const noexcept { return ops_.empty(); }
    /// Operator dimension; 0 for an empty set.
    Eigen::Index dim() const noexcept { return ops_.empty() ? 0 : ops_.front().rows(); }

    const Matrix& operator[](std::size_t i) const { return ops_[i]; }
    const std::vector<Matrix>& ops() const noexcept { return ops_; }

    auto begin() const noexcept { return ops_.begin(); }
    auto end() const noexcept { return ops_.end(); }

    /// Largest relative asymmetry over all entries.
    double max_relative_asymmetry() const;

private:
    std::vector<Matrix> ops_;
};

struct JacobiTensor {
    Matrix mat;
    double t = 0.0;
};

/// Parameter domain of a unit speed nullity geodesic.
class GeodesicDomain {
public:
    enum class Kind { Segment, Ray, Line };

    /// [0, b) with 0 < b < infinity.
    static GeodesicDomain segment(double b);
    /// [0, infinity)
    static GeodesicDomain ray() { return GeodesicDomain(Kind::Ray, kInfinity); }
    /// (-infinity, infinity)
    static GeodesicDomain line() { return GeodesicDomain(Kind::Line, kInfinity); }

    Kind kind() const noexcept { return kind_; }
    /// Forward length: b for a segment, infinity otherwise.
    double length() const noexcept { return b_; }

private:
    GeodesicDomain(Kind kind, double b) : kind_(kind), b_(b) {}

    Kind kind_;
    double b_;
};

std::string to_string(GeodesicDomain::Kind kind);

struct EvolutionState {
    double t = 0.0;
    JacobiTensor jacobi;
    SplittingTensor splitting;
    ShapeOperatorSet shape;
};

/// Checks that a and b have equal dimensions, throwing DimensionMismatch
/// with `what` in the message otherwise.
void require_same_dim(const ShapeOperatorSet& a, const SplittingTensor& b, const char* what);

}  // namespace nullity
