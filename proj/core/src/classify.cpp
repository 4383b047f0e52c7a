#include "nullity/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "nullity/jacobi.hpp"

namespace nullity {
namespace {

// Eigenvalues this close to the critical value belong to its generalized
// eigenspace. Looser than kRealEigenTol: a defective eigenvalue splits by
// O(sqrt(eps)) under roundoff.
constexpr double kCriticalClusterTol = 1e-6;

std::string format_value(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

AlphaLimit limit_of(const std::vector<DecayBlock>& blocks) {
    const auto has = [&](Behavior b) {
        return std::any_of(blocks.begin(), blocks.end(), [b](const DecayBlock& blk) { return blk.behavior == b; });
    };
    if (has(Behavior::BlowsUp)) return AlphaLimit::Divergent;
    if (has(Behavior::ParallelConstant)) return AlphaLimit::Nonzero;
    return AlphaLimit::Zero;
}

double image_norm(const ShapeOperatorSet& a, const Matrix& basis) {
    double worst = 0.0;
    for (const auto& op : a) worst = std::max(worst, norm_max(op * basis));
    return worst;
}

void sample_block(DecayBlock& block, const ShapeOperatorSet& a0, const JacobiFlow& flow) {
    for (std::size_t i = 0; i < kDecaySampleTimes.size(); ++i) {
        block.sampled_norms[i] = a0.empty() ? 0.0 : image_norm(flow.shape(a0, kDecaySampleTimes[i]), block.basis);
    }
}

// Block analysis for the forward direction of C0 (for the backward
// direction the caller passes -C0).
std::vector<DecayBlock> analyze_direction(const ShapeOperatorSet& a0, const SpaceFormCurvature& c, const Matrix& c0) {
    const Eigen::Index q = c0.rows();
    const double mu = c.sqrt_abs();  // 0 when c = 0
    const double rate = c.hyperbolic() ? mu : 0.0;
    const auto spectrum = eigenvalues(c0);

    std::vector<Complex> critical_eigs;
    std::vector<Complex> other_eigs;
    for (Complex z : spectrum) {
        (std::abs(z - Complex(mu, 0.0)) <= kCriticalClusterTol * (1.0 + mu) ? critical_eigs : other_eigs).push_back(z);
    }
    const auto m = static_cast<Eigen::Index>(critical_eigs.size());

    const Matrix shifted = c0 - mu * Matrix::Identity(q, q);
    Matrix critical_basis(q, 0);
    Matrix complement_basis = Matrix::Identity(q, q);
    if (m > 0) {
        Matrix power = Matrix::Identity(q, q);
        for (Eigen::Index k = 0; k < m; ++k) power = power * shifted;
        Eigen::JacobiSVD<Matrix> svd(power, Eigen::ComputeFullU | Eigen::ComputeFullV);
        critical_basis = svd.matrixV().rightCols(m);
        complement_basis = svd.matrixU().leftCols(q - m);
    }

    const JacobiFlow flow(c, SplittingTensor(c0));
    std::vector<DecayBlock> blocks;

    if (complement_basis.cols() > 0) {
        DecayBlock blk;
        blk.descriptor = "complement of generalized eigenspace E(" + format_value(mu) + ")";
        blk.basis = complement_basis;
        blk.critical = false;
        blk.eigenvalues = other_eigs;
        blk.behavior = Behavior::DecaysToZero;
        blk.rate = rate;
        sample_block(blk, a0, flow);
        blocks.push_back(std::move(blk));
    }

    if (m > 0) {
        DecayBlock blk;
        blk.descriptor = "generalized eigenspace E(" + format_value(mu) + ")";
        blk.basis = critical_basis;
        blk.critical = true;
        blk.eigenvalues = critical_eigs;

        double a0_scale = 0.0;
        for (const auto& op : a0) a0_scale = std::max(a0_scale, norm_max(op));
        const double zero_tol = 1e-12 * (1.0 + a0_scale);

        if (a0.empty() || image_norm(a0, critical_basis) <= zero_tol) {
            blk.behavior = Behavior::IdenticallyZero;
            blk.rate = 0.0;
        } else if (c.hyperbolic()) {
            blk.behavior = Behavior::BlowsUp;
            blk.rate = mu;
        } else {
            // c = 0: J^-1 = sum_k t^k N^k on the block, N = C0 restricted.
            // Constant iff A0 N^k vanishes on the block for k >= 1.
            bool constant = true;
            Matrix nk = critical_basis;
            for (Eigen::Index k = 1; k < std::max<Eigen::Index>(m, 1) + 1 && constant; ++k) {
                nk = shifted * nk;
                if (image_norm(a0, nk) > zero_tol) constant = false;
            }
            blk.behavior = constant ? Behavior::ParallelConstant : Behavior::BlowsUp;
            blk.rate = 0.0;
        }
        sample_block(blk, a0, flow);
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

}  // namespace

std::string label(Clause clause) {
    switch (clause) {
        case Clause::I: return "(i)";
        case Clause::II: return "(ii)";
        case Clause::II1: return "(ii.1)";
        case Clause::II2: return "(ii.2)";
    }
    return "(?)";
}

std::string to_string(Behavior behavior) {
    switch (behavior) {
        case Behavior::DecaysToZero: return "DecaysToZero";
        case Behavior::ParallelConstant: return "ParallelConstant";
        case Behavior::BlowsUp: return "BlowsUp";
        case Behavior::IdenticallyZero: return "IdenticallyZero";
    }
    return "Unknown";
}

std::string to_string(AlphaLimit limit) {
    switch (limit) {
        case AlphaLimit::Zero: return "Zero";
        case AlphaLimit::Nonzero: return "Nonzero";
        case AlphaLimit::Divergent: return "Divergent";
        case AlphaLimit::Mixed: return "Mixed";
    }
    return "Unknown";
}

SpectrumVerdict classify_splitting_spectrum(SpaceFormCurvature c, const SplittingTensor& c0,
                                            const GeodesicDomain& domain) {
    SpectrumVerdict verdict;
    verdict.spectrum = eigenvalues(c0.matrix());
    const double s = c.sqrt_abs();

    std::optional<Clause> clause;
    if (c.spherical()) {
        if (domain.length() >= std::numbers::pi / s) {
            clause = Clause::I;
            verdict.admissible_interval = Interval::empty();
        }
    } else if (domain.kind() == GeodesicDomain::Kind::Ray) {
        clause = Clause::II;
        verdict.admissible_interval = Interval{-kInfinity, s};
    } else if (domain.kind() == GeodesicDomain::Kind::Line) {
        clause = c.flat() ? Clause::II1 : Clause::II2;
        verdict.admissible_interval = Interval{-s, s};
    }

    if (!clause) return verdict;

    const double slack = kIntervalSlack * (1.0 + s);
    for (Complex z : verdict.spectrum) {
        if (is_real(z) && !verdict.admissible_interval->contains(z.real(), slack)) {
            verdict.offending_eigenvalues.push_back(z);
        }
    }
    if (!verdict.offending_eigenvalues.empty()) {
        verdict.consistent = false;
        verdict.violated_clause = clause;
    }
    return verdict;
}

DecayReport decay_report(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0,
                         const GeodesicDomain& domain) {
    require_same_dim(a0, c0, "decay_report");
    if (domain.kind() == GeodesicDomain::Kind::Segment) {
        throw PreconditionViolated("decay report needs a ray or a line");
    }
    if (c.spherical()) {
        throw PreconditionViolated("decay report is defined for c <= 0");
    }
    const auto verdict = classify_splitting_spectrum(c, c0, domain);
    if (!verdict.consistent) {
        throw InconsistentSpectrum("splitting tensor violates clause " + label(*verdict.violated_clause) +
                                   " on a " + to_string(domain.kind()));
    }

    DecayReport report;
    report.per_block = analyze_direction(a0, c, c0.matrix());
    report.forward_limit = limit_of(report.per_block);
    report.global_alpha_limit = report.forward_limit;
    if (domain.kind() == GeodesicDomain::Kind::Line) {
        report.backward_blocks = analyze_direction(a0, c, -c0.matrix());
        report.backward_limit = limit_of(report.backward_blocks);
        if (*report.backward_limit != report.forward_limit) report.global_alpha_limit = AlphaLimit::Mixed;
    }
    return report;
}

bool sign_balance_check(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0) {
    require_same_dim(a0, c0, "sign_balance_check");
    if (!c.spherical()) throw PreconditionViolated("sign balance check needs c > 0");
    if (!real_eigenvalues(c0.matrix()).empty()) {
        throw PreconditionViolated("splitting tensor has a real eigenvalue");
    }
    if (!is_codazzi_compatible(a0, c0)) {
        throw PreconditionViolated("shape operators are not Codazzi compatible with the splitting tensor");
    }
    return std::all_of(a0.begin(), a0.end(), [](const Matrix& a) {
        const Inertia in = inertia(a);
        return in.positive == in.negative;
    });
}

}  // namespace nullity
