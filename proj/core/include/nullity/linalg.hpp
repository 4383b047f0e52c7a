#pragma once

#include <complex>
#include <vector>

#include "nullity/types.hpp"

namespace nullity {

using Complex = std::complex<double>;

/// Entrywise max norm ||M||_inf = max |m_ij|. The default norm of this library.
double norm_max(const Matrix& m);

/// ||M - M^T||_inf
double asymmetry(const Matrix& m);

/// asymmetry(M) <= rel_tol * (1 + ||M||_inf)
bool is_symmetric(const Matrix& m, double rel_tol = kSymmetryTol);

/// Eigenvalues of a general real square matrix (real Schur based), sorted
/// by real part, then imaginary part.
std::vector<Complex> eigenvalues(const Matrix& m);

bool is_real(Complex lambda, double tol = kRealEigenTol);

/// Real parts of the eigenvalues classified as real, ascending.
std::vector<double> real_eigenvalues(const Matrix& m);

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;

    bool operator==(const Inertia&) const = default;
};

/// Sign counts of the eigenvalues of the symmetric part of m. Eigenvalues
/// with |mu| <= rel_tol * max|mu| count as zero.
Inertia inertia(const Matrix& m, double rel_tol = 1e-8);

/// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const Matrix& m, double rel_tol = 1e-8);

/// Orthonormal basis (columns) of the column space of m.
Matrix orthonormal_basis(const Matrix& m, double rel_tol = 1e-10);

/// Orthonormal basis (columns) of ker m; singular values at or below
/// rel_tol * sigma_max count as zero. A zero matrix has the full kernel.
Matrix null_space(const Matrix& m, double rel_tol = 1e-10);

/// Sines of the principal angles between the column spaces of a and b
/// (equal dimension), ascending.
std::vector<double> principal_angle_sines(const Matrix& a, const Matrix& b);

/// Largest principal angle (radians) between the column spaces of a and b.
double max_principal_angle(const Matrix& a, const Matrix& b);

/// Symmetric traceless part (M + M^T)/2 - tr(M)/q I.
Matrix symmetric_traceless_part(const Matrix& m);

/// Skew part (M - M^T)/2.
Matrix skew_part(const Matrix& m);

}  // namespace nullity
