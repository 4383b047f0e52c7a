#include <gtest/gtest.h>

#include <cmath>

#include "nullity/catalog.hpp"
#include "nullity/classify.hpp"
#include "nullity/jacobi.hpp"
#include "nullity/linalg.hpp"

using namespace nullity;
using namespace nullity::catalog;

namespace {

void expect_all_pass(const ModelSubmanifold& m) {
    const auto checks = check_expected_properties(m);
    EXPECT_EQ(checks.size(), m.expected_properties.size());
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << m.name << ": " << c.tag << " (" << c.detail << ")";
}

}  // namespace

TEST(Catalog, TotallyGeodesic) {
    const auto m = totally_geodesic(3, 1, 1.0);
    EXPECT_EQ(m.profile.nu, 3);
    EXPECT_EQ(m.profile.q, 0);
    EXPECT_EQ(norm_max(m.shape[0]), 0.0);
    EXPECT_EQ(scalar_curvature(m.shape, 3, m.c), 1.0);
    EXPECT_EQ(scalar_curvature(totally_geodesic(2, 2, -1.0).shape, 2, SpaceFormCurvature(-1.0)), -1.0);
    for (double c : {-1.0, 0.0, 1.0}) {
        const auto tg = totally_geodesic(4, 2, c);
        for (const auto& d : {GeodesicDomain::segment(10.0), GeodesicDomain::ray(), GeodesicDomain::line()}) {
            for (const auto& t : tg.splitting_family.basis()) {
                EXPECT_TRUE(classify_splitting_spectrum(tg.c, t, d).consistent);
            }
        }
        expect_all_pass(tg);
    }
}

TEST(Catalog, HyperbolicCylinder) {
    const auto m = hyperbolic_cylinder(1, 2, 1.0);
    const auto l = m.principal_curvatures();
    ASSERT_EQ(l.size(), 2u);
    EXPECT_NEAR(l[1], std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(l[0], 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(m.profile.nu, 0);
    EXPECT_TRUE(m.splitting_family.empty());

    for (double rho : {0.5, 1.0, 2.0}) {
        const auto k = hyperbolic_cylinder_curvatures(rho);
        EXPECT_NEAR(k.sphere_principal * k.hyperbolic_principal, 1.0, 1e-15);
        EXPECT_NEAR(k.sphere_factor, 1.0 / (rho * rho), 1e-12);
        EXPECT_NEAR(k.hyperbolic_factor, -1.0 / (1.0 + rho * rho), 1e-12);
        EXPECT_NEAR(k.mixed, 0.0, 1e-15);
        expect_all_pass(hyperbolic_cylinder(2, 5, rho));
    }

    const auto far = hyperbolic_cylinder_curvatures(1e6);
    EXPECT_GT(far.sphere_principal, 1.0);
    EXPECT_LT(far.hyperbolic_principal, 1.0);
    EXPECT_NEAR(far.sphere_principal, 1.0, 1e-11);

    EXPECT_THROW(hyperbolic_cylinder(0, 3, 1.0), std::invalid_argument);
    EXPECT_THROW(hyperbolic_cylinder(3, 3, 1.0), std::invalid_argument);
    EXPECT_THROW(hyperbolic_cylinder(1, 3, 0.0), std::invalid_argument);
}

TEST(Catalog, CartanVeronesePolar) {
    const auto m = cartan_veronese_polar();
    EXPECT_EQ(m.profile.n, 3);
    EXPECT_EQ(m.profile.nu, 1);
    EXPECT_EQ(m.shape[0].trace(), 0.0);
    EXPECT_EQ(m.shape[0].rows() - numerical_rank(m.shape[0]), 1);

    const double r3 = std::sqrt(3.0);
    for (double r : cartan_identity_residuals({r3, 0.0, -r3}, {1, 1, 1}, 1.0)) EXPECT_NEAR(r, 0.0, 1e-12);
    // A non-isoparametric triple fails the identity.
    const auto bad = cartan_identity_residuals({2.0, 0.0, -1.0}, {1, 1, 1}, 1.0);
    EXPECT_GT(std::abs(bad[0]) + std::abs(bad[1]) + std::abs(bad[2]), 0.1);

    ASSERT_EQ(m.splitting_family.size(), 1u);
    EXPECT_TRUE(real_eigenvalues(m.splitting_family[0].matrix()).empty());
    expect_all_pass(m);
}

TEST(Catalog, EuclideanCylinder) {
    const auto m = euclidean_cylinder(2, 1.0);
    EXPECT_EQ(m.profile.nu, 1);
    EXPECT_NEAR(alpha_norm(m.shape), 1.0, 1e-15);
    const auto report = decay_report(m.conullity_shape(), m.c, m.splitting_family[0], GeodesicDomain::ray());
    for (const auto& blk : report.per_block) EXPECT_EQ(blk.behavior, Behavior::ParallelConstant);
    expect_all_pass(m);
    expect_all_pass(euclidean_cylinder(4, -2.5));
    EXPECT_THROW(euclidean_cylinder(3, 0.0), std::invalid_argument);
}

TEST(Catalog, EveryEntryIsCodazziCompatible) {
    for (const auto& m : {totally_geodesic(3, 2, 0.0), hyperbolic_cylinder(1, 3, 0.7), cartan_veronese_polar(),
                          euclidean_cylinder(3, 0.5)}) {
        for (const auto& t : m.splitting_family.basis()) EXPECT_TRUE(is_codazzi_compatible(m.conullity_shape(), t));
        const Eigen::Index kernel = m.profile.n - numerical_rank(m.shape[0]);
        if (m.shape.size() == 1) EXPECT_EQ(kernel, m.profile.nu) << m.name;
    }
}

TEST(Catalog, UnknownTagFailsLoudly) {
    auto m = euclidean_cylinder(2, 1.0);
    m.expected_properties.push_back({"no_such_check", "", {}});
    const auto checks = check_expected_properties(m);
    EXPECT_FALSE(checks.back().passed);
}
