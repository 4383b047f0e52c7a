#include "nullity/flow.hpp"

#include <cmath>
#include <string>

#include "nullity/jacobi.hpp"
#include "nullity/linalg.hpp"

namespace nullity {
namespace {

void validate_grid(std::span<const double> times, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("integrator step must be positive");
    double prev = 0.0;
    for (double t : times) {
        if (!(t >= prev) || !std::isfinite(t)) {
            throw std::invalid_argument("sample times must be finite, nonnegative and nondecreasing");
        }
        prev = t;
    }
}

long substeps(double span, double step) {
    return span <= 0.0 ? 0 : static_cast<long>(std::ceil(span / step - 1e-12));
}

Matrix riccati_rhs(const Matrix& c, double curvature) {
    Matrix out = c * c;
    out.diagonal().array() += curvature;
    return out;
}

}  // namespace

std::vector<SplittingTensor> riccati_trajectory(SpaceFormCurvature c, const SplittingTensor& c0,
                                                std::span<const double> times, double step) {
    validate_grid(times, step);
    const double k = c.value();
    std::vector<SplittingTensor> out;
    out.reserve(times.size());

    Matrix state = c0.matrix();
    double t = 0.0;
    for (double target : times) {
        const long n = substeps(target - t, step);
        const double h = n > 0 ? (target - t) / static_cast<double>(n) : 0.0;
        for (long i = 0; i < n; ++i) {
            const Matrix k1 = riccati_rhs(state, k);
            const Matrix k2 = riccati_rhs(state + 0.5 * h * k1, k);
            const Matrix k3 = riccati_rhs(state + 0.5 * h * k2, k);
            const Matrix k4 = riccati_rhs(state + h * k3, k);
            state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            const double norm = norm_max(state);
            if (!(norm <= kBlowUpGuard)) {
                throw SingularJacobi("Riccati flow blew up near t = " + std::to_string(t + (i + 1) * h));
            }
        }
        t = target;
        out.emplace_back(state);
    }
    return out;
}

SplittingTensor riccati_flow(SpaceFormCurvature c, const SplittingTensor& c0, double t_end, double step) {
    const double times[] = {t_end};
    return riccati_trajectory(c, c0, times, step).front();
}

std::vector<ShapeOperatorSet> shape_ode_trajectory(const ShapeOperatorSet& a0, SpaceFormCurvature c,
                                                   const SplittingTensor& c0, std::span<const double> times,
                                                   double step) {
    validate_grid(times, step);
    require_same_dim(a0, c0, "shape_ode_flow");
    const JacobiFlow flow(c, c0);
    if (!times.empty() && !flow.invertible_at(times.back())) {
        throw SingularJacobi("shape flow requested up to t = " + std::to_string(times.back()) +
                             " but the Jacobi tensor is singular at t = " + std::to_string(flow.forward_limit()));
    }

    std::vector<Matrix> state(a0.begin(), a0.end());
    std::vector<ShapeOperatorSet> out;
    out.reserve(times.size());
    double t = 0.0;
    for (double target : times) {
        const long n = substeps(target - t, step);
        const double h = n > 0 ? (target - t) / static_cast<double>(n) : 0.0;
        for (long i = 0; i < n; ++i) {
            const double t0 = t + static_cast<double>(i) * h;
            const Matrix c_start = flow.splitting(t0).matrix();
            const Matrix c_mid = flow.splitting(t0 + 0.5 * h).matrix();
            const Matrix c_end = flow.splitting(t0 + h).matrix();
            for (auto& a : state) {
                const Matrix k1 = a * c_start;
                const Matrix k2 = (a + 0.5 * h * k1) * c_mid;
                const Matrix k3 = (a + 0.5 * h * k2) * c_mid;
                const Matrix k4 = (a + h * k3) * c_end;
                a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
        }
        t = target;
        out.emplace_back(state);
    }
    return out;
}

ShapeOperatorSet shape_ode_flow(const ShapeOperatorSet& a0, SpaceFormCurvature c, const SplittingTensor& c0,
                                double t_end, double step) {
    const double times[] = {t_end};
    return shape_ode_trajectory(a0, c, c0, times, step).front();
}

}  // namespace nullity
