#include "nullity/theorems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "nullity/jacobi.hpp"
#include "nullity/linalg.hpp"

namespace nullity {

// ---------------------------------------------------------------------------
// Dimension thresholds

int radon_hurwitz(int m) {
    if (m < 1) throw std::invalid_argument("radon_hurwitz: m must be >= 1");
    const int e = std::countr_zero(static_cast<unsigned>(m));
    return 8 * (e / 4) + (1 << (e % 4));
}

bool sphere_rigidity_threshold(int nu0, int q) {
    if (q < 1) throw std::invalid_argument("sphere_rigidity_threshold: q must be >= 1");
    return nu0 >= radon_hurwitz(q);
}

int nu_n(int n) {
    if (n < 2) throw std::invalid_argument("nu_n: n must be >= 2");
    int best = 0;
    for (int k = 0; k <= n - 1; ++k) {
        if (radon_hurwitz(n - k) >= k + 1) best = k;
    }
    return best;
}

bool nonpositive_sphere_rigidity(int n, int p) { return n - nu_n(n) >= 2 * p + 1; }

bool high_nullity_applicable(int nu0, int q) {
    return 2L * nu0 >= static_cast<long>(q) * (q + 1);
}

int florit_bound(int n, int p) {
    if (p < 1) throw std::invalid_argument("florit_bound: p must be >= 1");
    return std::max(n - 2 * p, 0);
}

bool nonpositive_extrinsic_applicable(int n, int p) {
    if (p < 1) throw std::invalid_argument("nonpositive_extrinsic_applicable: p must be >= 1");
    return static_cast<long>(n) >= 2L * p * p + 3L * p;
}

bool nonpositive_extrinsic_chain_holds(int n, int p) {
    if (!nonpositive_extrinsic_applicable(n, p)) return true;
    for (int nu0 = florit_bound(n, p); nu0 <= n; ++nu0) {
        if (!high_nullity_applicable(nu0, n - nu0)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Special nullity direction

SplittingFamily::SplittingFamily(std::vector<SplittingTensor> basis, Eigen::Index q)
    : basis_(std::move(basis)), q_(q) {
    for (const auto& c : basis_) {
        if (c.dim() != q_) {
            throw DimensionMismatch("splitting family: expected " + std::to_string(q_) + "x" + std::to_string(q_) +
                                    " members, got " + std::to_string(c.dim()));
        }
    }
}

SplittingFamily::SplittingFamily(std::vector<SplittingTensor> basis)
    : SplittingFamily(basis, basis.empty() ? 0 : basis.front().dim()) {}

SplittingTensor SplittingFamily::combine(const Vector& coeffs) const {
    if (static_cast<std::size_t>(coeffs.size()) != basis_.size()) {
        throw DimensionMismatch("splitting family: coefficient vector has the wrong length");
    }
    Matrix out = Matrix::Zero(q_, q_);
    for (std::size_t i = 0; i < basis_.size(); ++i) out += coeffs(static_cast<Eigen::Index>(i)) * basis_[i].matrix();
    return SplittingTensor(std::move(out));
}

std::optional<SpecialDirection> find_special_nullity_direction(const SplittingFamily& family) {
    const auto nu0 = static_cast<Eigen::Index>(family.size());
    const Eigen::Index q = family.q();
    if (nu0 == 0) return std::nullopt;

    // Columns: vec of the symmetric traceless part of each C_{T_i}.
    Matrix coeff(q * q, nu0);
    for (Eigen::Index i = 0; i < nu0; ++i) {
        const Matrix p = symmetric_traceless_part(family[static_cast<std::size_t>(i)].matrix());
        coeff.col(i) = Eigen::Map<const Vector>(p.data(), q * q);
    }

    Vector t0;
    if (coeff.size() == 0 || norm_max(coeff) == 0.0) {
        t0 = Vector::Unit(nu0, 0);
    } else {
        Eigen::JacobiSVD<Matrix> svd(coeff, Eigen::ComputeFullV);
        const Vector& sv = svd.singularValues();
        const Eigen::Index rank = (sv.array() > 1e-10 * sv(0)).count();
        if (rank >= nu0) return std::nullopt;
        t0 = svd.matrixV().col(nu0 - 1);
    }
    t0.normalize();

    auto lambda_of = [&](const Vector& coeffs) {
        return q == 0 ? 0.0 : -family.combine(coeffs).matrix().trace() / static_cast<double>(q);
    };
    double lambda = lambda_of(t0);
    if (lambda > 0.0) {
        t0 = -t0;
    } else if (lambda == 0.0) {
        for (Eigen::Index i = 0; i < nu0; ++i) {
            if (std::abs(t0(i)) > 1e-12) {
                if (t0(i) < 0.0) t0 = -t0;
                break;
            }
        }
    }

    SpecialDirection dir;
    dir.coeffs = t0;
    dir.splitting = family.combine(t0);
    dir.lambda = lambda_of(t0);
    dir.skew = -skew_part(dir.splitting.matrix());
    return dir;
}

HighNullityResult high_nullity_pipeline(const SplittingFamily& family, const ShapeOperatorSet& a0,
                                        SpaceFormCurvature c) {
    if (c.spherical()) throw PreconditionViolated("high nullity pipeline needs c <= 0");
    auto found = find_special_nullity_direction(family);
    if (!found) throw NoDirection("no nullity direction with splitting tensor in Skew + span{I}");

    HighNullityResult result;
    result.direction = std::move(*found);
    const double s = c.sqrt_abs();
    result.boundary_case = std::abs(result.direction.lambda + s) <= 1e-12;

    const Matrix& ct0 = result.direction.splitting.matrix();
    auto has_critical_eigenvalue = [s](const Matrix& m) {
        const auto eigs = eigenvalues(m);
        return std::any_of(eigs.begin(), eigs.end(), [s](Complex z) { return std::abs(z - Complex(s, 0.0)) <= 1e-6 * (1.0 + s); });
    };

    int chosen = 0;
    int fallback = 0;
    for (int orientation : {1, -1}) {
        const SplittingTensor candidate(orientation * ct0);
        if (!classify_splitting_spectrum(c, candidate, GeodesicDomain::ray()).consistent) continue;
        if (fallback == 0) fallback = orientation;
        if (!has_critical_eigenvalue(candidate.matrix())) {
            chosen = orientation;
            break;
        }
    }
    if (chosen == 0) chosen = fallback;
    if (chosen == 0) {
        throw InconsistentSpectrum("neither orientation of the special direction extends to a ray");
    }

    result.orientation = chosen;
    const SplittingTensor along(chosen * ct0);
    if (!is_codazzi_compatible(a0, along)) {
        throw PreconditionViolated("shape operators are not Codazzi compatible with the special splitting tensor");
    }
    result.report = decay_report(a0, c, along, GeodesicDomain::ray());
    return result;
}

// ---------------------------------------------------------------------------
// Scalar curvature and minimality

namespace {

void require_tangent_dim(const ShapeOperatorSet& a, int n) {
    if (n < 1) throw std::invalid_argument("dimension n must be positive");
    if (a.dim() > n) {
        throw DimensionMismatch("shape operators of size " + std::to_string(a.dim()) +
                                " exceed the tangent dimension " + std::to_string(n));
    }
}

}  // namespace

double mean_curvature_norm(const ShapeOperatorSet& a, int n) {
    require_tangent_dim(a, n);
    double sum = 0.0;
    for (const auto& op : a) sum += op.trace() * op.trace();
    return std::sqrt(sum) / static_cast<double>(n);
}

double alpha_norm_squared(const ShapeOperatorSet& a) {
    double sum = 0.0;
    for (const auto& op : a) sum += op.squaredNorm();
    return sum;
}

double alpha_norm(const ShapeOperatorSet& a) { return std::sqrt(alpha_norm_squared(a)); }

double alpha_operator_norm(const ShapeOperatorSet& a) {
    if (a.empty() || a.dim() == 0) return 0.0;
    const Eigen::Index q = a.dim();
    Matrix stacked(q * static_cast<Eigen::Index>(a.size()), q);
    for (std::size_t i = 0; i < a.size(); ++i) stacked.middleRows(static_cast<Eigen::Index>(i) * q, q) = a[i];
    Eigen::JacobiSVD<Matrix> svd(stacked);
    return svd.singularValues()(0);
}

double scalar_curvature(const ShapeOperatorSet& a, int n, SpaceFormCurvature c) {
    if (n < 2) throw std::invalid_argument("scalar_curvature: n must be >= 2");
    const double h = mean_curvature_norm(a, n);
    const double nn = static_cast<double>(n);
    return c.value() + nn / (nn - 1.0) * h * h - alpha_norm_squared(a) / (nn * (nn - 1.0));
}

std::string to_string(MinimalityVerdict verdict) {
    return verdict == MinimalityVerdict::Minimal ? "Minimal" : "Inconclusive";
}

MinimalityVerdict minimality_certificate(std::span<const ShapeOperatorSet> samples, int n) {
    if (samples.empty()) return MinimalityVerdict::Inconclusive;
    double h_min = kInfinity;
    double h_max = 0.0;
    double alpha_min = kInfinity;
    std::size_t codim = 0;
    for (const auto& a : samples) {
        const double h = mean_curvature_norm(a, n);
        h_min = std::min(h_min, h);
        h_max = std::max(h_max, h);
        alpha_min = std::min(alpha_min, alpha_operator_norm(a));
        codim = std::max(codim, a.size());
    }
    if (h_max - h_min > 1e-8) {
        throw InconsistentInput("mean curvature length varies between samples (" + std::to_string(h_min) + " .. " +
                                std::to_string(h_max) + ")");
    }
    if (alpha_min >= 1e-6) return MinimalityVerdict::Inconclusive;
    // |tr A| <= q ||A||_2 <= n ||alpha||_op, hence ||H|| <= sqrt(p) ||alpha||_op.
    if (h_max > std::sqrt(static_cast<double>(codim)) * alpha_min + 1e-8) {
        throw InconsistentInput("constant nonzero mean curvature with vanishing second fundamental form");
    }
    return MinimalityVerdict::Minimal;
}

// ---------------------------------------------------------------------------
// Cylinders and integrable conullity

CylinderSplit cylinder_split(std::span<const CylinderSample> samples, int k) {
    if (samples.empty()) throw InconsistentInput("cylinder_split: no samples");
    if (k < 1) throw std::invalid_argument("cylinder_split: k must be >= 1");
    const Eigen::Index m = samples.front().point.size();
    if (m < k) throw DimensionMismatch("cylinder_split: ambient dimension smaller than k");
    for (const auto& s : samples) {
        if (s.point.size() != m || s.nullity_basis.rows() != m || s.nullity_basis.cols() != k) {
            throw DimensionMismatch("cylinder_split: every sample needs an m-vector and an m x k basis");
        }
    }

    CylinderSplit split;
    split.axis = orthonormal_basis(samples.front().nullity_basis);
    if (split.axis.cols() != k) throw InconsistentInput("cylinder_split: first nullity basis is rank deficient");

    for (const auto& s : samples) {
        const double angle = max_principal_angle(split.axis, s.nullity_basis);
        split.max_angle = std::max(split.max_angle, angle);
        if (angle > 1e-8) {
            throw NotConstant("f_* D is not constant: principal angle " + std::to_string(angle) + " rad");
        }
    }

    const Matrix& v = split.axis;
    std::map<int, std::vector<std::size_t>> leaves;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Vector& x = samples[i].point;
        split.fiber_coords.push_back(v.transpose() * x);
        split.base_points.push_back(x - v * split.fiber_coords.back());
        leaves[samples[i].leaf].push_back(i);
    }
    for (const auto& [leaf, members] : leaves) {
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const double d = (split.base_points[members[a]] - split.base_points[members[b]]).norm();
                split.residual = std::max(split.residual, d);
            }
        }
    }
    return split;
}

std::string to_string(ConullityVerdictKind kind) {
    switch (kind) {
        case ConullityVerdictKind::MustBeTotallyGeodesic: return "MustBeTotallyGeodesic";
        case ConullityVerdictKind::MustBeCylinder: return "MustBeCylinder";
        case ConullityVerdictKind::LeafBound: return "LeafBound";
    }
    return "Unknown";
}

IntegrableConullityVerdict integrable_conullity_classify(SpaceFormCurvature c, const SplittingFamily& family) {
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!is_symmetric(family[i].matrix())) {
            throw NotIntegrable("splitting tensor " + std::to_string(i) + " is not self-adjoint");
        }
    }

    IntegrableConullityVerdict verdict;
    if (c.spherical()) {
        verdict.kind = ConullityVerdictKind::MustBeTotallyGeodesic;
        verdict.check_passed = family.q() == 0;
        return verdict;
    }
    if (c.flat()) {
        verdict.kind = ConullityVerdictKind::MustBeCylinder;
        verdict.check_passed = std::all_of(family.basis().begin(), family.basis().end(),
                                           [](const SplittingTensor& t) { return norm_max(t.matrix()) <= kIntervalSlack; });
        return verdict;
    }

    const double s = c.sqrt_abs();
    verdict.kind = ConullityVerdictKind::LeafBound;
    verdict.bound = Interval{-s, s};
    for (const auto& t : family.basis()) {
        if (t.dim() == 0) continue;
        const Matrix sym = 0.5 * (t.matrix() + t.matrix().transpose());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            const double mu = solver.eigenvalues()(i);
            if (!verdict.bound->contains(mu, kIntervalSlack * (1.0 + s))) verdict.offending_eigenvalues.push_back(mu);
        }
    }
    verdict.check_passed = verdict.offending_eigenvalues.empty();
    return verdict;
}

}  // namespace nullity
