#pragma once

#include <random>

#include "nullity/types.hpp"

namespace nullity::gen {

using Rng = std::mt19937_64;

/// Entries i.i.d. uniform on [-scale, scale].
Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0);
Matrix random_symmetric(Rng& rng, Eigen::Index q, double scale = 1.0);
/// Haar-ish orthogonal matrix from the QR factor of a Gaussian matrix.
Matrix random_orthogonal(Rng& rng, Eigen::Index q);

struct CompatiblePair {
    SplittingTensor c0;
    ShapeOperatorSet a0;
};

/// C0 = S0^-1 S1 with S0, S1 symmetric (S0 well conditioned, eigenvalues of
/// modulus in [0.5, 2]); every A = a S0 + b S1 is compatible with C0.
CompatiblePair random_compatible_pair(Rng& rng, Eigen::Index q, int p);

/// q = 2: C0 = P (a I + b R) P^-1 with R the rotation generator and
/// |b| in [0.5, 1.5], so C0 has no real eigenvalues; A0 = P^-T A' P^-1 with
/// A' symmetric traceless. With traceless = true, a = 0.
CompatiblePair random_rotation_pair(Rng& rng, int p, bool traceless = false);

/// C0 = S + lambda I, S skew with 2x2 rotation blocks in a random orthonormal
/// frame (a trailing 1x1 zero block for odd q), lambda in [-1, 0]. A0 is
/// block diagonal in the same frame, traceless on the rotation blocks.
CompatiblePair random_decaying_pair(Rng& rng, Eigen::Index q, int p);

}  // namespace nullity::gen
