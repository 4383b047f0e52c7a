#include "nullity/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "nullity/classify.hpp"
#include "nullity/jacobi.hpp"
#include "nullity/linalg.hpp"

namespace nullity::catalog {
namespace {

Matrix diagonal(const std::vector<double>& values) {
    Vector d(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) d(static_cast<Eigen::Index>(i)) = values[i];
    return d.asDiagonal();
}

std::vector<double> sorted_eigenvalues(const Matrix& a) {
    if (a.size() == 0) return {};
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
    const Vector& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> pairwise_products(const std::vector<double>& l) {
    std::vector<double> out;
    for (std::size_t i = 0; i < l.size(); ++i) {
        for (std::size_t j = i + 1; j < l.size(); ++j) out.push_back(l[i] * l[j]);
    }
    return out;
}

PropertyCheck make_check(const std::string& tag, bool passed, double value, std::string detail) {
    return PropertyCheck{tag, passed, value, std::move(detail)};
}

using CheckFn = std::function<PropertyCheck(const ModelSubmanifold&, const ExpectedProperty&)>;

const std::map<std::string, CheckFn>& check_table() {
    static const std::map<std::string, CheckFn> table = {
        {"kernel_dimension",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const int n = m.profile.n;
             Matrix stacked(n * static_cast<Eigen::Index>(m.shape.size()), n);
             for (std::size_t i = 0; i < m.shape.size(); ++i) {
                 stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = m.shape[i];
             }
             const int kernel = n - numerical_rank(stacked);
             return make_check(p.tag, kernel == m.profile.nu, kernel,
                               "dim ker alpha = " + std::to_string(kernel) + ", nu = " + std::to_string(m.profile.nu));
         }},
        {"codazzi_compatible",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto a = m.conullity_shape();
             bool ok = true;
             for (const auto& c : m.splitting_family.basis()) ok = ok && is_codazzi_compatible(a, c);
             return make_check(p.tag, ok, ok ? 1.0 : 0.0,
                               std::to_string(m.splitting_family.size()) + " splitting tensors checked");
         }},
        {"scalar_curvature",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const double s = m.profile.n >= 2 ? scalar_curvature(m.shape, m.profile.n, m.c) : m.c.value();
             const double err = std::abs(s - p.expected.at(0));
             return make_check(p.tag, err <= 1e-12, s, "intrinsic value " + std::to_string(p.expected.at(0)));
         }},
        {"principal_curvature_product",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto l = m.principal_curvatures();
             const double prod = l.back() * l.front();
             return make_check(p.tag, std::abs(prod - 1.0) <= 1e-15, prod, "lambda_s * lambda_h");
         }},
        {"gauss_factor_curvatures",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto l = m.principal_curvatures();
             const double sphere = m.c.value() + l.back() * l.back();
             const double hyper = m.c.value() + l.front() * l.front();
             const double err = std::max(std::abs(sphere - p.expected.at(0)), std::abs(hyper - p.expected.at(1)));
             return make_check(p.tag, err <= 1e-12, err,
                               "factor curvatures " + std::to_string(sphere) + ", " + std::to_string(hyper));
         }},
        {"positive_extrinsic_curvature",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto prods = pairwise_products(m.principal_curvatures());
             const double lo = prods.empty() ? 0.0 : *std::min_element(prods.begin(), prods.end());
             return make_check(p.tag, lo > 0.0, lo, "smallest lambda_i lambda_j");
         }},
        {"nonpositive_extrinsic_curvature",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto prods = pairwise_products(m.principal_curvatures());
             const double hi = prods.empty() ? 0.0 : *std::max_element(prods.begin(), prods.end());
             return make_check(p.tag, hi <= 1e-12, hi, "largest lambda_i lambda_j");
         }},
        {"bounded_away_from_zero",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const double op = alpha_operator_norm(m.shape);
             return make_check(p.tag, op > 0.0 && std::abs(op - p.expected.at(0)) <= 1e-12, op,
                               "constant operator norm of alpha");
         }},
        {"minimal",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const double h = mean_curvature_norm(m.shape, m.profile.n);
             return make_check(p.tag, h <= 1e-12, h, "||H||");
         }},
        {"cartan_identity",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             std::vector<double> distinct;
             std::vector<int> mult;
             for (double x : m.principal_curvatures()) {
                 if (!distinct.empty() && std::abs(x - distinct.back()) <= 1e-9) {
                     ++mult.back();
                 } else {
                     distinct.push_back(x);
                     mult.push_back(1);
                 }
             }
             double worst = 0.0;
             for (double r : cartan_identity_residuals(distinct, mult, m.c.value())) worst = std::max(worst, std::abs(r));
             return make_check(p.tag, worst <= 1e-12, worst, "max |residual|");
         }},
        {"splitting_segment_consistent",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto domain = GeodesicDomain::segment(std::numbers::pi / m.c.sqrt_abs());
             bool ok = true;
             for (const auto& c : m.splitting_family.basis()) {
                 ok = ok && classify_splitting_spectrum(m.c, c, domain).consistent;
             }
             return make_check(p.tag, ok, ok ? 1.0 : 0.0, "no real eigenvalues on closed nullity geodesics");
         }},
        {"sign_balance",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto a = m.conullity_shape();
             bool ok = true;
             for (const auto& c : m.splitting_family.basis()) ok = ok && sign_balance_check(a, m.c, c);
             return make_check(p.tag, ok, ok ? 1.0 : 0.0, "equal numbers of positive and negative curvatures");
         }},
        {"constant_principal_curvatures",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto a0 = m.conullity_shape();
             const auto initial = sorted_eigenvalues(a0[0]);
             double worst = 0.0;
             for (const auto& c : m.splitting_family.basis()) {
                 const JacobiFlow flow(m.c, c);
                 for (double t : {0.3, 1.1, 2.9, std::numbers::pi, 5.0}) {
                     const auto now = sorted_eigenvalues(flow.shape(a0, t)[0]);
                     for (std::size_t i = 0; i < now.size(); ++i) worst = std::max(worst, std::abs(now[i] - initial[i]));
                 }
             }
             return make_check(p.tag, worst <= 1e-10, worst, "max eigenvalue drift along the nullity geodesic");
         }},
        {"cylinder_split",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto samples = circle_line_samples(m.profile.n, p.expected.at(0), 8, 4);
             const auto split = cylinder_split(samples, m.profile.n - 1);
             return make_check(p.tag, split.residual <= 1e-10 && split.max_angle <= 1e-8, split.residual,
                               "residual of the (g x I) splitting");
         }},
        {"integrable_conullity_cylinder",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto v = integrable_conullity_classify(m.c, m.splitting_family);
             const bool ok = v.kind == ConullityVerdictKind::MustBeCylinder && v.check_passed;
             return make_check(p.tag, ok, ok ? 1.0 : 0.0, to_string(v.kind));
         }},
        {"flat_decay_parallel",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const auto a = m.conullity_shape();
             bool ok = true;
             for (const auto& c : m.splitting_family.basis()) {
                 const auto report = decay_report(a, m.c, c, GeodesicDomain::ray());
                 for (const auto& blk : report.per_block) ok = ok && blk.behavior == Behavior::ParallelConstant;
             }
             return make_check(p.tag, ok, ok ? 1.0 : 0.0, "every block parallel along nullity rays");
         }},
        {"spectrum_consistent",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             bool ok = true;
             for (const auto& c : m.splitting_family.basis()) {
                 for (const auto& d : {GeodesicDomain::segment(1.0), GeodesicDomain::ray(), GeodesicDomain::line()}) {
                     ok = ok && classify_splitting_spectrum(m.c, c, d).consistent;
                 }
             }
             return make_check(p.tag, ok, ok ? 1.0 : 0.0, "segment, ray and line");
         }},
        {"alpha_norm",
         [](const ModelSubmanifold& m, const ExpectedProperty& p) {
             const double a = alpha_norm(m.shape);
             return make_check(p.tag, std::abs(a - p.expected.at(0)) <= 1e-12, a, "||alpha||");
         }},
    };
    return table;
}

}  // namespace

ShapeOperatorSet ModelSubmanifold::conullity_shape() const {
    std::vector<Matrix> ops;
    for (const auto& a : shape) ops.push_back(conullity_frame.transpose() * a * conullity_frame);
    return ShapeOperatorSet(std::move(ops));
}

std::vector<double> ModelSubmanifold::principal_curvatures() const {
    return shape.empty() ? std::vector<double>{} : sorted_eigenvalues(shape[0]);
}

ModelSubmanifold totally_geodesic(int n, int p, double c) {
    ModelSubmanifold m;
    m.name = "totally_geodesic";
    m.profile = NullityProfile::make(n, p, n);
    m.c = SpaceFormCurvature(c);
    m.shape = ShapeOperatorSet(std::vector<Matrix>(static_cast<std::size_t>(p), Matrix::Zero(n, n)));
    m.conullity_frame = Matrix(n, 0);
    m.splitting_family = SplittingFamily(std::vector<SplittingTensor>(static_cast<std::size_t>(n), SplittingTensor::zero(0)), 0);
    m.splitting_provenance = "trivial: the conullity is zero";
    m.expected_properties = {
        {"kernel_dimension", "relative nullity is the whole tangent space", {}},
        {"scalar_curvature", "intrinsic curvature equals the ambient curvature", {c}},
        {"codazzi_compatible", "shape data compatible with the splitting family", {}},
        {"spectrum_consistent", "no eigenvalue obstruction on any domain", {}},
    };
    return m;
}

HyperbolicCylinderCurvatures hyperbolic_cylinder_curvatures(double rho) {
    HyperbolicCylinderCurvatures k;
    const double r = std::sqrt(1.0 + rho * rho);
    k.sphere_principal = r / rho;
    k.hyperbolic_principal = rho / r;
    k.sphere_factor = -1.0 + k.sphere_principal * k.sphere_principal;
    k.hyperbolic_factor = -1.0 + k.hyperbolic_principal * k.hyperbolic_principal;
    k.mixed = -1.0 + k.sphere_principal * k.hyperbolic_principal;
    return k;
}

ModelSubmanifold hyperbolic_cylinder(int k, int n, double rho) {
    if (k < 1 || k > n - 1) throw std::invalid_argument("hyperbolic_cylinder: need 1 <= k <= n - 1");
    if (!(rho > 0.0)) throw std::invalid_argument("hyperbolic_cylinder: rho must be positive");
    const auto curv = hyperbolic_cylinder_curvatures(rho);

    std::vector<double> diag(static_cast<std::size_t>(n), curv.hyperbolic_principal);
    std::fill_n(diag.begin(), k, curv.sphere_principal);

    ModelSubmanifold m;
    m.name = "hyperbolic_cylinder";
    m.profile = NullityProfile::make(n, 1, 0);
    m.c = SpaceFormCurvature(-1.0);
    m.shape = ShapeOperatorSet({diagonal(diag)});
    m.conullity_frame = Matrix::Identity(n, n);
    m.splitting_family = SplittingFamily({}, n);
    m.splitting_provenance = "none: relative nullity is trivial";

    // Intrinsic scalar curvature of S^k(rho) x H^(n-k)(sqrt(1+rho^2)), from the
    // factor radii alone; mixed planes are flat.
    const double kk = k;
    const double hh = n - k;
    const double nn = n;
    const double intrinsic = (kk * (kk - 1.0) / (rho * rho) - hh * (hh - 1.0) / (1.0 + rho * rho)) / (nn * (nn - 1.0));

    m.expected_properties = {
        {"kernel_dimension", "no relative nullity", {}},
        {"principal_curvature_product", "lambda_s * lambda_h = 1", {}},
        {"gauss_factor_curvatures", "factors have curvature 1/rho^2 and -1/(1+rho^2)",
         {1.0 / (rho * rho), -1.0 / (1.0 + rho * rho)}},
        {"positive_extrinsic_curvature", "strictly positive extrinsic sectional curvature", {}},
        {"bounded_away_from_zero", "shape operator bounded away from zero", {curv.sphere_principal}},
        {"scalar_curvature", "scalar curvature of the product metric", {intrinsic}},
    };
    return m;
}

ModelSubmanifold cartan_veronese_polar() {
    const double r3 = std::sqrt(3.0);
    ModelSubmanifold m;
    m.name = "cartan_veronese_polar";
    m.profile = NullityProfile::make(3, 1, 1);
    m.c = SpaceFormCurvature(1.0);
    m.shape = ShapeOperatorSet({diagonal({r3, 0.0, -r3})});
    m.conullity_frame = Matrix::Zero(3, 2);
    m.conullity_frame(0, 0) = 1.0;
    m.conullity_frame(2, 1) = 1.0;

    // Along the nullity geodesic, constant principal curvatures force
    // det J = 1 (tr C = 0, det C = 1) and minimality forces a zero diagonal:
    // C is the rotation generator, unique up to the orientation of T.
    Matrix rotation(2, 2);
    rotation << 0.0, 1.0, -1.0, 0.0;
    m.splitting_family = SplittingFamily({SplittingTensor(rotation)}, 2);
    m.splitting_provenance = "derived from the isoparametric structure (constant principal curvatures, minimality)";

    m.expected_properties = {
        {"minimal", "minimal hypersurface", {}},
        {"kernel_dimension", "index of relative nullity 1", {}},
        {"cartan_identity", "Cartan's identity for (sqrt3, 0, -sqrt3)", {}},
        {"nonpositive_extrinsic_curvature", "nonpositive extrinsic sectional curvature", {}},
        {"bounded_away_from_zero", "shape operator bounded away from zero", {r3}},
        {"codazzi_compatible", "shape data compatible with the splitting tensor", {}},
        {"splitting_segment_consistent", "nullity leaves are complete great circles", {}},
        {"sign_balance", "equal numbers of positive and negative principal curvatures", {}},
        {"constant_principal_curvatures", "principal curvatures constant along the nullity", {}},
    };
    return m;
}

ModelSubmanifold euclidean_cylinder(int n, double kappa) {
    if (n < 2) throw std::invalid_argument("euclidean_cylinder: n must be >= 2");
    if (kappa == 0.0 || !std::isfinite(kappa)) throw std::invalid_argument("euclidean_cylinder: kappa must be nonzero");

    std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
    diag[0] = kappa;

    ModelSubmanifold m;
    m.name = "euclidean_cylinder";
    m.profile = NullityProfile::make(n, 1, n - 1);
    m.c = SpaceFormCurvature(0.0);
    m.shape = ShapeOperatorSet({diagonal(diag)});
    m.conullity_frame = Matrix::Zero(n, 1);
    m.conullity_frame(0, 0) = 1.0;
    m.splitting_family =
        SplittingFamily(std::vector<SplittingTensor>(static_cast<std::size_t>(n - 1), SplittingTensor::zero(1)), 1);
    m.splitting_provenance = "exact: the rulings are parallel";

    m.expected_properties = {
        {"kernel_dimension", "relative nullity of dimension n - 1", {}},
        {"alpha_norm", "||alpha|| = |kappa|", {std::abs(kappa)}},
        {"scalar_curvature", "flat", {0.0}},
        {"codazzi_compatible", "shape data compatible with the splitting family", {}},
        {"cylinder_split", "splits as (plane curve) x R^(n-1)", {1.0 / std::abs(kappa)}},
        {"integrable_conullity_cylinder", "integrable conullity in Euclidean space gives a cylinder", {}},
        {"flat_decay_parallel", "second fundamental form parallel along the rulings", {}},
    };
    return m;
}

std::vector<PropertyCheck> check_expected_properties(const ModelSubmanifold& model) {
    std::vector<PropertyCheck> out;
    const auto& table = check_table();
    for (const auto& prop : model.expected_properties) {
        const auto it = table.find(prop.tag);
        if (it == table.end()) {
            out.push_back(make_check(prop.tag, false, 0.0, "no check registered for this tag"));
            continue;
        }
        try {
            out.push_back(it->second(model, prop));
        } catch (const std::exception& e) {
            out.push_back(make_check(prop.tag, false, 0.0, e.what()));
        }
    }
    return out;
}

std::vector<double> cartan_identity_residuals(const std::vector<double>& distinct_curvatures,
                                              const std::vector<int>& multiplicities, double c) {
    if (distinct_curvatures.size() != multiplicities.size()) {
        throw DimensionMismatch("cartan identity: one multiplicity per principal curvature");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < distinct_curvatures.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < distinct_curvatures.size(); ++j) {
            if (i == j) continue;
            const double li = distinct_curvatures[i];
            const double lj = distinct_curvatures[j];
            sum += multiplicities[j] * (c + li * lj) / (li - lj);
        }
        out.push_back(sum);
    }
    return out;
}

std::vector<CylinderSample> circle_line_samples(int n, double radius, int angles, int per_leaf) {
    if (n < 2 || angles < 1 || per_leaf < 1 || !(radius > 0.0)) {
        throw std::invalid_argument("circle_line_samples: need n >= 2, radius > 0 and positive counts");
    }
    const int m = n + 1;
    Matrix axis = Matrix::Zero(m, n - 1);
    for (int l = 0; l < n - 1; ++l) axis(l + 2, l) = 1.0;

    std::vector<CylinderSample> out;
    for (int i = 0; i < angles; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / angles;
        for (int j = 0; j < per_leaf; ++j) {
            Vector x(m);
            x(0) = radius * std::cos(theta);
            x(1) = radius * std::sin(theta);
            for (int l = 0; l < n - 1; ++l) x(l + 2) = 0.75 * (j - per_leaf / 2) + 0.25 * l;
            out.push_back({x, axis, i});
        }
    }
    return out;
}

std::vector<CylinderSample> cone_samples(double opening_angle, int angles, int per_leaf) {
    if (angles < 2 || per_leaf < 1) throw std::invalid_argument("cone_samples: need >= 2 angles");
    std::vector<CylinderSample> out;
    for (int i = 0; i < angles; ++i) {
        const double theta = 2.0 * std::numbers::pi * i / angles;
        Vector u(3);
        u << std::sin(opening_angle) * std::cos(theta), std::sin(opening_angle) * std::sin(theta), std::cos(opening_angle);
        for (int j = 1; j <= per_leaf; ++j) out.push_back({static_cast<double>(j) * u, Matrix(u), i});
    }
    return out;
}

}  // namespace nullity::catalog
