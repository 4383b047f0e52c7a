#include "nullity/generators.hpp"

#include <Eigen/QR>

namespace nullity::gen {
namespace {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double random_sign(Rng& rng) {
    return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
}

Matrix rotation_generator() {
    Matrix r(2, 2);
    r << 0.0, 1.0, -1.0, 0.0;
    return r;
}

Matrix random_traceless_2x2(Rng& rng) {
    const double x = uniform(rng, -1.0, 1.0);
    const double y = uniform(rng, -1.0, 1.0);
    Matrix a(2, 2);
    a << x, y, y, -x;
    return a;
}

}  // namespace

Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = uniform(rng, -scale, scale);
    }
    return m;
}

Matrix random_symmetric(Rng& rng, Eigen::Index q, double scale) {
    const Matrix m = random_matrix(rng, q, q, scale);
    return 0.5 * (m + m.transpose());
}

Matrix random_orthogonal(Rng& rng, Eigen::Index q) {
    std::normal_distribution<double> normal;
    Matrix g(q, q);
    for (Eigen::Index j = 0; j < q; ++j) {
        for (Eigen::Index i = 0; i < q; ++i) g(i, j) = normal(rng);
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q_factor = qr.householderQ() * Matrix::Identity(q, q);
    // Fix column signs so the distribution does not depend on Householder conventions.
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q; ++j) {
        if (r(j, j) < 0.0) q_factor.col(j) *= -1.0;
    }
    return q_factor;
}

CompatiblePair random_compatible_pair(Rng& rng, Eigen::Index q, int p) {
    const Matrix rot = random_orthogonal(rng, q);
    Vector d(q);
    for (Eigen::Index i = 0; i < q; ++i) d(i) = random_sign(rng) * uniform(rng, 0.5, 2.0);
    const Matrix s0 = rot * d.asDiagonal() * rot.transpose();
    const Matrix s1 = random_symmetric(rng, q);

    CompatiblePair out;
    out.c0 = SplittingTensor(s0.partialPivLu().solve(s1));
    std::vector<Matrix> ops;
    for (int i = 0; i < p; ++i) {
        const Matrix a = uniform(rng, -1.0, 1.0) * s0 + uniform(rng, -1.0, 1.0) * s1;
        ops.push_back(0.5 * (a + a.transpose()));
    }
    out.a0 = ShapeOperatorSet(std::move(ops));
    return out;
}

CompatiblePair random_rotation_pair(Rng& rng, int p, bool traceless) {
    Matrix basis = random_matrix(rng, 2, 2);
    basis += 1.5 * Matrix::Identity(2, 2);  // keeps P comfortably invertible
    const Matrix basis_inv = basis.inverse();

    const double a = traceless ? 0.0 : uniform(rng, -1.0, 1.0);
    const double b = random_sign(rng) * uniform(rng, 0.5, 1.5);
    const Matrix core = a * Matrix::Identity(2, 2) + b * rotation_generator();

    CompatiblePair out;
    out.c0 = SplittingTensor(basis * core * basis_inv);
    std::vector<Matrix> ops;
    for (int i = 0; i < p; ++i) {
        const Matrix m = basis_inv.transpose() * random_traceless_2x2(rng) * basis_inv;
        ops.push_back(0.5 * (m + m.transpose()));
    }
    out.a0 = ShapeOperatorSet(std::move(ops));
    return out;
}

CompatiblePair random_decaying_pair(Rng& rng, Eigen::Index q, int p) {
    const Matrix frame = random_orthogonal(rng, q);
    const double lambda = uniform(rng, -1.0, 0.0);

    Matrix skew = Matrix::Zero(q, q);
    std::vector<Matrix> blocks(static_cast<std::size_t>(p), Matrix::Zero(q, q));
    Eigen::Index k = 0;
    for (; k + 1 < q; k += 2) {
        skew.block(k, k, 2, 2) = random_sign(rng) * uniform(rng, 0.5, 1.5) * rotation_generator();
        for (auto& blk : blocks) blk.block(k, k, 2, 2) = random_traceless_2x2(rng);
    }
    if (k < q) {
        for (auto& blk : blocks) blk(k, k) = uniform(rng, -1.0, 1.0);
    }

    CompatiblePair out;
    out.c0 = SplittingTensor(frame * skew * frame.transpose() + lambda * Matrix::Identity(q, q));
    std::vector<Matrix> ops;
    for (const auto& blk : blocks) {
        const Matrix m = frame * blk * frame.transpose();
        ops.push_back(0.5 * (m + m.transpose()));
    }
    out.a0 = ShapeOperatorSet(std::move(ops));
    return out;
}

}  // namespace nullity::gen
