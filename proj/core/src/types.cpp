#include "nullity/types.hpp"

#include <cmath>
#include <string>

#include "nullity/linalg.hpp"

namespace nullity {

SpaceFormCurvature::SpaceFormCurvature(double c) : c_(c), scale_(std::sqrt(std::abs(c))) {
    if (!std::isfinite(c)) {
        throw std::invalid_argument("space form curvature must be finite");
    }
}

NullityProfile NullityProfile::make(int n, int p, int nu) {
    if (n < 1) throw std::invalid_argument("profile: n must be >= 1");
    if (p < 0) throw std::invalid_argument("profile: p must be >= 0");
    if (nu < 0 || nu > n) throw std::invalid_argument("profile: nu must lie in [0, n]");
    return NullityProfile{n, p, nu, n - nu};
}

SplittingTensor::SplittingTensor(Matrix mat) : mat_(std::move(mat)) {
    if (mat_.rows() != mat_.cols()) {
        throw DimensionMismatch("splitting tensor must be square, got " + std::to_string(mat_.rows()) + "x" +
                                std::to_string(mat_.cols()));
    }
}

ShapeOperatorSet::ShapeOperatorSet(std::vector<Matrix> ops) : ops_(std::move(ops)) {
    for (const auto& a : ops_) {
        if (a.rows() != a.cols()) throw DimensionMismatch("shape operator must be square");
        if (a.rows() != ops_.front().rows()) throw DimensionMismatch("shape operators differ in dimension");
    }
}

ShapeOperatorSet ShapeOperatorSet::checked(std::vector<Matrix> ops) {
    ShapeOperatorSet set(std::move(ops));
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (!is_symmetric(set[i])) {
            throw PreconditionViolated("shape operator " + std::to_string(i) + " is not symmetric");
        }
    }
    return set;
}

double ShapeOperatorSet::max_relative_asymmetry() const {
    double worst = 0.0;
    for (const auto& a : ops_) worst = std::max(worst, asymmetry(a) / (1.0 + norm_max(a)));
    return worst;
}

GeodesicDomain GeodesicDomain::segment(double b) {
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw std::invalid_argument("segment length must satisfy 0 < b < infinity");
    }
    return GeodesicDomain(Kind::Segment, b);
}

std::string to_string(GeodesicDomain::Kind kind) {
    switch (kind) {
        case GeodesicDomain::Kind::Segment: return "segment";
        case GeodesicDomain::Kind::Ray: return "ray";
        case GeodesicDomain::Kind::Line: return "line";
    }
    return "unknown";
}

void require_same_dim(const ShapeOperatorSet& a, const SplittingTensor& b, const char* what) {
    if (!a.empty() && a.dim() != b.dim()) {
        throw DimensionMismatch(std::string(what) + ": shape operators are " + std::to_string(a.dim()) +
                                "-dimensional but the splitting tensor is " + std::to_string(b.dim()) +
                                "-dimensional");
    }
}

}  // namespace nullity
