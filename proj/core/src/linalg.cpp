#include "nullity/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace nullity {

double norm_max(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double asymmetry(const Matrix& m) { return norm_max(m - m.transpose()); }

bool is_symmetric(const Matrix& m, double rel_tol) {
    return m.rows() == m.cols() && asymmetry(m) <= rel_tol * (1.0 + norm_max(m));
}

std::vector<Complex> eigenvalues(const Matrix& m) {
    std::vector<Complex> out;
    if (m.size() == 0) return out;
    Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw Error("eigenvalue iteration did not converge");
    const auto& ev = solver.eigenvalues();
    out.assign(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

bool is_real(Complex lambda, double tol) { return std::abs(lambda.imag()) <= tol * (1.0 + std::abs(lambda)); }

std::vector<double> real_eigenvalues(const Matrix& m) {
    std::vector<double> out;
    for (Complex z : eigenvalues(m)) {
        if (is_real(z)) out.push_back(z.real());
    }
    return out;
}

Inertia inertia(const Matrix& m, double rel_tol) {
    Inertia result;
    if (m.size() == 0) return result;
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
    const Vector& mu = solver.eigenvalues();
    const double cutoff = rel_tol * mu.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        if (std::abs(mu(i)) <= cutoff) {
            ++result.zero;
        } else if (mu(i) > 0.0) {
            ++result.positive;
        } else {
            ++result.negative;
        }
    }
    return result;
}

int numerical_rank(const Matrix& m, double rel_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const Vector& s = svd.singularValues();
    if (s(0) == 0.0) return 0;
    return static_cast<int>((s.array() > rel_tol * s(0)).count());
}

Matrix orthonormal_basis(const Matrix& m, double rel_tol) {
    if (m.size() == 0) return Matrix(m.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const Vector& s = svd.singularValues();
    const Eigen::Index r = s(0) == 0.0 ? 0 : (s.array() > rel_tol * s(0)).count();
    return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& m, double rel_tol) {
    const Eigen::Index cols = m.cols();
    if (m.rows() == 0 || norm_max(m) == 0.0) return Matrix::Identity(cols, cols);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Vector& s = svd.singularValues();
    const Eigen::Index r = (s.array() > rel_tol * s(0)).count();
    return svd.matrixV().rightCols(cols - r);
}

std::vector<double> principal_angle_sines(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("principal angles: ambient dimensions differ");
    const Matrix qa = orthonormal_basis(a);
    const Matrix qb = orthonormal_basis(b);
    if (qa.cols() != qb.cols()) throw DimensionMismatch("principal angles: subspace dimensions differ");
    if (qb.cols() == 0) return {};
    const Matrix residual = qb - qa * (qa.transpose() * qb);
    Eigen::JacobiSVD<Matrix> svd(residual);
    const Vector& s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    for (double& x : out) x = std::min(x, 1.0);
    std::sort(out.begin(), out.end());
    return out;
}

double max_principal_angle(const Matrix& a, const Matrix& b) {
    const auto sines = principal_angle_sines(a, b);
    return sines.empty() ? 0.0 : std::asin(sines.back());
}

Matrix symmetric_traceless_part(const Matrix& m) {
    const Eigen::Index q = m.rows();
    Matrix sym = 0.5 * (m + m.transpose());
    if (q > 0) sym.diagonal().array() -= m.trace() / static_cast<double>(q);
    return sym;
}

Matrix skew_part(const Matrix& m) { return 0.5 * (m - m.transpose()); }

}  // namespace nullity
