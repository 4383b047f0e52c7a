#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>

#include "nullity/catalog.hpp"
#include "nullity/classify.hpp"
#include "nullity/flow.hpp"
#include "nullity/generators.hpp"
#include "nullity/jacobi.hpp"
#include "nullity/linalg.hpp"
#include "nullity/theorems.hpp"
#include "nullity_cli/runner.hpp"

namespace nullity::cli {
namespace {

using gen::Rng;

struct Tally {
    int cases = 0;
    int failures = 0;
    double worst = 0.0;

    void record(double value, bool ok) {
        ++cases;
        worst = std::max(worst, value);
        if (!ok) ++failures;
    }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

CheckResult finish(const std::string& name, const Tally& t, const std::string& metric) {
    return {name, t.failures == 0 && t.cases > 0,
            std::to_string(t.cases) + " cases, " + std::to_string(t.failures) + " failed, worst " + metric + " " +
                sci(t.worst)};
}

double curvature_for(int i) { return std::array{-1.0, 0.0, 1.0}[static_cast<std::size_t>(i % 3)]; }

std::vector<double> grid_to(double t_end, int points) {
    std::vector<double> out;
    for (int i = 0; i < points; ++i) out.push_back(t_end * i / (points - 1));
    return out;
}

double horizon(const SpaceFormCurvature& c, const SplittingTensor& c0, double cap) {
    return std::min(0.8 * max_invertible_time(c, c0), cap);
}

CheckResult riccati_oracle(Rng& rng, int cases, double step) {
    Tally t;
    for (int i = 0; i < cases; ++i) {
        const SpaceFormCurvature c(curvature_for(i));
        const Eigen::Index q = 1 + i % 5;
        const SplittingTensor c0(gen::random_matrix(rng, q, q));
        const auto times = grid_to(horizon(c, c0, 5.0), 6);
        const auto rk = riccati_trajectory(c, c0, times, step);
        double err = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            err = std::max(err, norm_max(rk[k].matrix() - splitting_tensor_at(c, c0, times[k]).matrix()));
        }
        t.record(err, err <= 1e-6);
    }
    return finish("riccati_oracle", t, "error");
}

CheckResult shape_oracle(Rng& rng, int cases, double step) {
    Tally t;
    for (int i = 0; i < cases; ++i) {
        const SpaceFormCurvature c(curvature_for(i));
        const auto pair = gen::random_compatible_pair(rng, 1 + i % 5, 2);
        const auto times = grid_to(horizon(c, pair.c0, 5.0), 6);
        const auto rk = shape_ode_trajectory(pair.a0, c, pair.c0, times, step);
        double err = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const auto closed = shape_operator_at(pair.a0, c, pair.c0, times[k]);
            for (std::size_t x = 0; x < closed.size(); ++x) err = std::max(err, norm_max(rk[k][x] - closed[x]));
        }
        t.record(err, err <= 1e-6);
    }
    return finish("shape_oracle", t, "error");
}

CheckResult jacobi_residual(Rng& rng, int cases, double) {
    Tally t;
    const double h = 1e-3;
    for (int i = 0; i < cases; ++i) {
        const SpaceFormCurvature c(curvature_for(i));
        const Eigen::Index q = 1 + i % 5;
        const SplittingTensor c0(gen::random_matrix(rng, q, q));
        const double s = std::uniform_real_distribution<double>(0.1, 4.0)(rng);
        auto j = [&](double x) { return jacobi_tensor(c, c0, x).mat; };
        const Matrix jt = j(s);
        const Matrix res = (j(s + h) - 2.0 * jt + j(s - h)) / (h * h) + c.value() * jt;
        const double ratio = norm_max(res) / (1.0 + norm_max(jt));
        t.record(ratio, ratio <= 1e-4);
    }
    return finish("jacobi_residual", t, "relative residual");
}

CheckResult symmetry_propagation(Rng& rng, int cases, double) {
    Tally t;
    for (int i = 0; i < cases; ++i) {
        const SpaceFormCurvature c(curvature_for(i));
        const auto pair = gen::random_compatible_pair(rng, 2 + i % 4, 2);
        double worst = 0.0;
        for (double x : grid_to(horizon(c, pair.c0, 5.0), 11)) {
            for (const auto& a : shape_operator_at(pair.a0, c, pair.c0, x)) {
                worst = std::max(worst, asymmetry(a) / (1.0 + norm_max(a)));
            }
        }
        t.record(worst, worst <= 1e-8);
    }
    return finish("symmetry_propagation", t, "relative asymmetry");
}

CheckResult rank_signature(Rng& rng, int cases, double) {
    Tally t;
    for (int i = 0; i < cases; ++i) {
        const SpaceFormCurvature c(curvature_for(i));
        const auto pair = gen::random_compatible_pair(rng, 2 + i % 4, 1);
        const Matrix& a0 = pair.a0[0];
        const int rank0 = numerical_rank(a0);
        const Inertia in0 = inertia(a0);
        const double b = std::min(max_invertible_time(c, pair.c0), 5.0);
        int mismatches = 0;
        for (int k = 1; k <= 20; ++k) {
            const Matrix a = shape_operator_at(pair.a0, c, pair.c0, 0.9 * b * k / 20.0)[0];
            if (numerical_rank(a) != rank0 || !(inertia(a) == in0)) ++mismatches;
        }
        t.record(mismatches, mismatches == 0);
    }
    return finish("rank_signature", t, "mismatched samples");
}

CheckResult kernel_invariance(Rng& rng, int cases, double) {
    Tally t;
    for (int i = 0; i < cases; ++i) {
        const Eigen::Index q = 3 + i % 3;
        const Matrix basis = gen::random_orthogonal(rng, q);
        Vector d = Vector::Zero(q);
        for (Eigen::Index k = 0; k < q - 1 - i % 2; ++k) d(k) = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
        const Matrix s1 = basis * d.asDiagonal() * basis.transpose();
        const Matrix s0 = gen::random_orthogonal(rng, q) * Vector::Constant(q, 1.5).asDiagonal();
        const Matrix s0sym = 0.5 * (s0 + s0.transpose()) + 2.0 * Matrix::Identity(q, q);
        const SplittingTensor c0(s0sym.partialPivLu().solve(s1));
        const Matrix ker = null_space(s1, 1e-10);
        const double res = ker.cols() == 0 ? 0.0 : norm_max(s1 * c0.matrix() * ker);
        t.record(res, res <= 1e-8 && ker.cols() >= 1);
    }
    return finish("kernel_invariance", t, "residual");
}

CheckResult cocycle(Rng& rng, int cases, double) {
    Tally t;
    for (int i = 0; i < cases; ++i) {
        const SpaceFormCurvature c(curvature_for(i));
        const Eigen::Index q = 1 + i % 5;
        const SplittingTensor c0(gen::random_matrix(rng, q, q));
        const double b = std::min(max_invertible_time(c, c0), 4.0);
        const Matrix direct = splitting_tensor_at(c, c0, 0.7 * b).matrix();
        const Matrix composed = splitting_tensor_at(c, splitting_tensor_at(c, c0, 0.3 * b), 0.4 * b).matrix();
        const double err = norm_max(direct - composed) / (1.0 + norm_max(direct));
        t.record(err, err <= 1e-8);
    }
    return finish("cocycle", t, "relative error");
}

CheckResult verdict_soundness(Rng& rng, int cases, double) {
    Tally t;
    const SpaceFormCurvature c(-1.0);
    for (int i = 0; i < cases; ++i) {
        const Eigen::Index q = 1 + i % 5;
        const SplittingTensor c0(gen::random_matrix(rng, q, q, 1.5));
        const bool consistent = classify_splitting_spectrum(c, c0, GeodesicDomain::ray()).consistent;
        const bool unbounded = std::isinf(max_invertible_time(c, c0));
        t.record(consistent == unbounded ? 0.0 : 1.0, consistent == unbounded);
    }
    return finish("verdict_soundness", t, "disagreement");
}

CheckResult sphere_continuation(Rng& rng, int cases, double) {
    Tally t;
    const SpaceFormCurvature c(1.0);
    for (int i = 0; i < cases; ++i) {
        const auto pair = gen::random_rotation_pair(rng, 1 + i % 2, true);
        const auto at_pi = shape_operator_at(pair.a0, c, pair.c0, std::numbers::pi);
        double err = 0.0;
        for (std::size_t x = 0; x < at_pi.size(); ++x) {
            Eigen::SelfAdjointEigenSolver<Matrix> e0(pair.a0[x], Eigen::EigenvaluesOnly);
            Eigen::SelfAdjointEigenSolver<Matrix> e1(0.5 * (at_pi[x] + at_pi[x].transpose()), Eigen::EigenvaluesOnly);
            // ascending eigenvalues of -A0 are the reversed negated ones
            err = std::max(err, (e1.eigenvalues() + e0.eigenvalues().reverse()).cwiseAbs().maxCoeff());
        }
        const bool balanced = sign_balance_check(pair.a0, c, pair.c0);
        t.record(err, err <= 1e-8 && balanced);
    }
    return finish("sphere_continuation", t, "eigenvalue error");
}

CheckResult hyperbolic_decay(Rng& rng, int cases, double) {
    Tally t;
    const SpaceFormCurvature c(-1.0);
    for (int i = 0; i < cases; ++i) {
        const auto pair = gen::random_decaying_pair(rng, 2 + i % 4, 1 + i % 2);
        double ratio = 0.0;
        const auto a20 = shape_operator_at(pair.a0, c, pair.c0, 20.0);
        for (std::size_t x = 0; x < a20.size(); ++x) {
            ratio = std::max(ratio, a20[x].norm() / std::max(pair.a0[x].norm(), 1e-300));
        }
        t.record(ratio, ratio <= 1e-6);
    }
    const auto blow = shape_operator_at(ShapeOperatorSet({Matrix::Identity(2, 2)}), c,
                                        SplittingTensor(Matrix::Identity(2, 2)), 10.0);
    const bool control = blow[0].norm() >= 1e3;
    t.record(0.0, control);
    return finish("hyperbolic_decay", t, "||A(20)||/||A0||");
}

CheckResult kernel_search(Rng& rng, int cases, double) {
    Tally t;
    for (int i = 0; i < cases; ++i) {
        const Eigen::Index q = 1 + i % 4;
        const int nu0 = static_cast<int>(q * (q + 1) / 2) + i % 3;
        std::vector<SplittingTensor> members;
        for (int k = 0; k < nu0; ++k) members.emplace_back(gen::random_matrix(rng, q, q));
        const SplittingFamily family(members, q);
        const auto dir = find_special_nullity_direction(family);
        if (!dir) {
            t.record(kInfinity, false);
            continue;
        }
        const Matrix rec = family.combine(dir->coeffs).matrix() + dir->skew + dir->lambda * Matrix::Identity(q, q);
        const double err = norm_max(rec);
        t.record(err, err <= 1e-10 && dir->lambda <= 0.0);
    }
    return finish("kernel_search", t, "reconstruction error");
}

CheckResult radon_hurwitz_table(Rng&, int, double) {
    Tally t;
    const int table[] = {1, 2, 1, 4, 1, 2, 1, 8, 1, 2, 1, 4, 1, 2, 1, 9};
    for (int m = 1; m <= 16; ++m) t.record(0.0, radon_hurwitz(m) == table[m - 1]);
    for (int m = 1; m <= 64; ++m) t.record(0.0, radon_hurwitz(16 * m) == radon_hurwitz(m) + 8);
    t.record(0.0, nu_n(2) == 0 && nu_n(9) == 1 && nu_n(17) == 1);
    return finish("radon_hurwitz", t, "-");
}

CheckResult catalog_properties(Rng&, int, double) {
    Tally t;
    const std::vector<catalog::ModelSubmanifold> models = {
        catalog::totally_geodesic(3, 1, 1.0),      catalog::totally_geodesic(2, 2, -1.0),
        catalog::hyperbolic_cylinder(1, 2, 0.5),   catalog::hyperbolic_cylinder(1, 2, 1.0),
        catalog::hyperbolic_cylinder(2, 4, 2.0),   catalog::cartan_veronese_polar(),
        catalog::euclidean_cylinder(2, 1.0),       catalog::euclidean_cylinder(3, -0.5),
    };
    for (const auto& m : models) {
        for (const auto& check : catalog::check_expected_properties(m)) t.record(0.0, check.passed);
    }
    return finish("catalog", t, "-");
}

using CheckFn = std::function<CheckResult(Rng&, int, double)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> table = {
        {"catalog", catalog_properties},
        {"cocycle", cocycle},
        {"hyperbolic_decay", hyperbolic_decay},
        {"jacobi_residual", jacobi_residual},
        {"kernel_invariance", kernel_invariance},
        {"kernel_search", kernel_search},
        {"radon_hurwitz", radon_hurwitz_table},
        {"rank_signature", rank_signature},
        {"riccati_oracle", riccati_oracle},
        {"shape_oracle", shape_oracle},
        {"sphere_continuation", sphere_continuation},
        {"symmetry_propagation", symmetry_propagation},
        {"verdict_soundness", verdict_soundness},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

std::vector<CheckResult> run_checks(const std::vector<std::string>& names, int cases, std::uint64_t seed,
                                    double step) {
    std::vector<std::string> expanded;
    for (const auto& n : names) {
        if (n == "all") {
            expanded.insert(expanded.end(), known_checks().begin(), known_checks().end());
        } else {
            expanded.push_back(n);
        }
    }
    std::sort(expanded.begin(), expanded.end());
    expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());

    std::vector<CheckResult> out;
    for (const auto& name : expanded) {
        const auto& table = registry();
        const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == name; });
        if (it == table.end()) {
            out.push_back({name, false, "unknown check"});
            continue;
        }
        // Each check gets its own stream, so results do not depend on which
        // other checks run alongside it.
        Rng rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(it - table.begin() + 1));
        try {
            out.push_back(it->second(rng, cases, step));
        } catch (const std::exception& e) {
            out.push_back({name, false, std::string("error: ") + e.what()});
        }
    }
    return out;
}

std::string report(std::vector<CheckResult> results) {
    std::stable_sort(results.begin(), results.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    const auto passed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
    std::string out = std::to_string(results.size()) + " checks, " + std::to_string(passed) + " passed, " +
                      std::to_string(results.size() - static_cast<std::size_t>(passed)) + " failed\n";
    for (const auto& r : results) {
        out += (r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
    }
    return out;
}

}  // namespace nullity::cli
