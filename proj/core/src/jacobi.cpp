#include "nullity/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nullity/linalg.hpp"

namespace nullity {
namespace {

// First positive time at which the scalar factor  co(t) - sn(t) * lambda
// vanishes, for a real eigenvalue lambda.
double scalar_singular_time(const SpaceFormCurvature& c, double lambda) {
    const double s = c.sqrt_abs();
    if (c.spherical()) {
        return (std::numbers::pi / 2.0 - std::atan(lambda / s)) / s;
    }
    // Eigenvalues within the interval slack of the threshold are treated as
    // sitting exactly on it: the scalar factor then never vanishes.
    const double threshold = s + kIntervalSlack * (1.0 + s);
    if (lambda <= threshold) return kInfinity;
    if (c.flat()) return 1.0 / lambda;
    return std::atanh(s / lambda) / s;
}

double singular_time(const SpaceFormCurvature& c, const std::vector<double>& real_eigs, double sign) {
    double best = kInfinity;
    for (double lambda : real_eigs) best = std::min(best, scalar_singular_time(c, sign * lambda));
    return best;
}

Matrix right_solve(const Matrix& lhs, const Matrix& j) {
    // lhs * J^-1, via J^T X^T = lhs^T
    return j.transpose().partialPivLu().solve(lhs.transpose()).transpose();
}

Matrix closed_form_jacobi(const SpaceFormCurvature& c, const Matrix& c0, double t) {
    const Matrix id = Matrix::Identity(c0.rows(), c0.rows());
    const double s = c.sqrt_abs();
    if (c.spherical()) return std::cos(s * t) * id - (std::sin(s * t) / s) * c0;
    if (c.flat()) return id - t * c0;
    // cosh(st) I - sinh(st)/s C0, split into growing and decaying exponentials
    // so that the factor (cosh - sinh) on the sqrt(-c) eigenspace keeps full
    // relative accuracy for large t.
    const double grow = 0.5 * std::exp(s * t);
    const double decay = 0.5 * std::exp(-s * t);
    return grow * (id - c0 / s) + decay * (id + c0 / s);
}

// J' = -c sn(t) I - co(t) C0
Matrix closed_form_derivative(const SpaceFormCurvature& c, const Matrix& c0, double t) {
    const Matrix id = Matrix::Identity(c0.rows(), c0.rows());
    const double s = c.sqrt_abs();
    if (c.spherical()) return -s * std::sin(s * t) * id - std::cos(s * t) * c0;
    if (c.flat()) return -c0;
    const double grow = 0.5 * std::exp(s * t);
    const double decay = 0.5 * std::exp(-s * t);
    return grow * (s * id - c0) - decay * (s * id + c0);
}

}  // namespace

JacobiFlow::JacobiFlow(SpaceFormCurvature c, SplittingTensor c0) : c_(c), c0_(std::move(c0)) {
    const auto real_eigs = real_eigenvalues(c0_.matrix());
    forward_limit_ = singular_time(c_, real_eigs, 1.0);
    backward_limit_ = singular_time(c_, real_eigs, -1.0);
}

bool JacobiFlow::invertible_at(double t) const noexcept {
    return t >= 0.0 ? t < forward_limit_ : -t < backward_limit_;
}

void JacobiFlow::require_invertible(double t) const {
    if (!invertible_at(t)) {
        const double limit = t >= 0.0 ? forward_limit_ : -backward_limit_;
        throw SingularJacobi("Jacobi tensor is singular: t = " + std::to_string(t) +
                             " is not inside the invertibility horizon (limit " + std::to_string(limit) + ")");
    }
}

Matrix JacobiFlow::jacobi(double t) const { return closed_form_jacobi(c_, c0_.matrix(), t); }

Matrix JacobiFlow::jacobi_derivative(double t) const { return closed_form_derivative(c_, c0_.matrix(), t); }

SplittingTensor JacobiFlow::splitting(double t) const {
    require_invertible(t);
    if (t == 0.0) return c0_;
    return SplittingTensor(-right_solve(jacobi_derivative(t), jacobi(t)));
}

ShapeOperatorSet JacobiFlow::shape(const ShapeOperatorSet& a0, double t) const {
    require_same_dim(a0, c0_, "shape_operator_at");
    require_invertible(t);
    if (t == 0.0) return a0;
    const Matrix j = jacobi(t);
    const auto lu = j.transpose().partialPivLu();
    std::vector<Matrix> out;
    out.reserve(a0.size());
    for (const auto& a : a0) out.push_back(lu.solve(a.transpose()).transpose());
    return ShapeOperatorSet(std::move(out));
}

JacobiTensor jacobi_tensor(SpaceFormCurvature c, const SplittingTensor& c0, double t) {
    return {closed_form_jacobi(c, c0.matrix(), t), t};
}

Matrix jacobi_derivative(SpaceFormCurvature c, const SplittingTensor& c0, double t) {
    return closed_form_derivative(c, c0.matrix(), t);
}

double max_invertible_time(SpaceFormCurvature c, const SplittingTensor& c0) {
    return singular_time(c, real_eigenvalues(c0.matrix()), 1.0);
}

SplittingTensor splitting_tensor_at(SpaceFormCurvature c, const SplittingTensor& c0, double t) {
    return JacobiFlow(c, c0).splitting(t);
}

ShapeOperatorSet shape_operator_at(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0,
                                   double t) {
    return JacobiFlow(c, c0).shape(a0, t);
}

bool is_codazzi_compatible(const ShapeOperatorSet& a0, const SplittingTensor& c0) {
    require_same_dim(a0, c0, "is_codazzi_compatible");
    const Eigen::Index q = c0.dim();
    for (const auto& a : a0) {
        Matrix product = a;
        for (Eigen::Index k = 0; k < std::max<Eigen::Index>(q, 1); ++k) {
            if (!is_symmetric(product)) return false;
            product = product * c0.matrix();
        }
    }
    return true;
}

EvolutionState evolve(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0, double t) {
    const JacobiFlow flow(c, c0);
    return EvolutionState{t, JacobiTensor{flow.jacobi(t), t}, flow.splitting(t), flow.shape(a0, t)};
}

}  // namespace nullity
