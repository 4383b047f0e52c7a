#pragma once

#include <string>
#include <vector>

#include "nullity/theorems.hpp"
#include "nullity/types.hpp"

namespace nullity::catalog {

/// A machine-checkable claim about a model; `tag` selects the check.
struct ExpectedProperty {
    std::string tag;
    std::string statement;
    std::vector<double> expected;  ///< reference values the check compares against
};

struct PropertyCheck {
    std::string tag;
    bool passed = false;
    double value = 0.0;  ///< the quantity compared, e.g. a residual
    std::string detail;
};

/// Tensor-level data of an exact model submanifold. The shape operators
/// act on the full tangent space (n x n); the conullity frame (n x q,
/// orthonormal columns) carries the splitting family's coordinates.
struct ModelSubmanifold {
    std::string name;
    NullityProfile profile;
    SpaceFormCurvature c{0.0};
    ShapeOperatorSet shape;
    Matrix conullity_frame;
    SplittingFamily splitting_family;
    std::string splitting_provenance;
    std::vector<ExpectedProperty> expected_properties;

    /// F^T A F for each shape operator.
    ShapeOperatorSet conullity_shape() const;
    /// Eigenvalues of the first shape operator, ascending.
    std::vector<double> principal_curvatures() const;
};

/// Totally geodesic inclusion: zero shape, nu = n, q = 0.
ModelSubmanifold totally_geodesic(int n, int p, double c);

/// Hyperbolic cylinder S^k(rho) x H^(n-k)(sqrt(1 + rho^2)) in H^(n+1): c = -1,
/// principal curvatures sqrt(1+rho^2)/rho (multiplicity k) and
/// rho/sqrt(1+rho^2) (multiplicity n-k), nu = 0.
ModelSubmanifold hyperbolic_cylinder(int k, int n, double rho);

/// Polar map of the Veronese surface: minimal isoparametric hypersurface of
/// S^4 with principal curvatures (sqrt3, 0, -sqrt3) and nu = 1.
ModelSubmanifold cartan_veronese_polar();

/// Cylinder over a plane curve of curvature kappa in R^(n+1): shape
/// diag(kappa, 0, ..., 0), nu = n - 1, vanishing splitting family.
ModelSubmanifold euclidean_cylinder(int n, double kappa);

/// Runs the check behind every expected property of the model.
std::vector<PropertyCheck> check_expected_properties(const ModelSubmanifold& model);

struct HyperbolicCylinderCurvatures {
    double sphere_principal = 0.0;      ///< lambda_s
    double hyperbolic_principal = 0.0;  ///< lambda_h
    double sphere_factor = 0.0;         ///< c + lambda_s^2
    double hyperbolic_factor = 0.0;     ///< c + lambda_h^2
    double mixed = 0.0;                 ///< c + lambda_s lambda_h
};

/// Gauss equation applied to the hyperbolic cylinder's principal curvatures.
HyperbolicCylinderCurvatures hyperbolic_cylinder_curvatures(double rho);

/// Cartan's identity for isoparametric hypersurfaces of space forms:
///   sum_{j != i} m_j (c + l_i l_j) / (l_i - l_j) = 0  for each i,
/// for distinct principal curvatures l with multiplicities m.
std::vector<double> cartan_identity_residuals(const std::vector<double>& distinct_curvatures,
                                              const std::vector<int>& multiplicities, double c);

/// Exact samples of the round cylinder (circle of the given radius) x R^(n-1)
/// in R^(n+1); D is spanned by the R^(n-1) factor and every circle angle is
/// its own leaf index.
std::vector<CylinderSample> circle_line_samples(int n, double radius, int angles, int per_leaf);

/// Samples of a circular cone in R^3 with the ruling direction as D.
/// f_* D rotates, so cylinder_split must reject it.
std::vector<CylinderSample> cone_samples(double opening_angle, int angles, int per_leaf);

}  // namespace nullity::catalog
