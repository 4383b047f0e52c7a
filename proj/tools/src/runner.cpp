#include "nullity_cli/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "nullity/catalog.hpp"
#include "nullity/classify.hpp"
#include "nullity/jacobi.hpp"
#include "nullity/linalg.hpp"
#include "nullity/theorems.hpp"

namespace nullity::cli {
namespace {

namespace fs = std::filesystem;

std::string real_text(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
    return buf;
}

std::string complex_text(Complex z) {
    if (z.imag() == 0.0) return real_text(z.real());
    return real_text(z.real()) + (z.imag() < 0 ? " - " : " + ") + real_text(std::abs(z.imag())) + "i";
}

std::string list_text(const std::vector<Complex>& zs) {
    std::string out = "[";
    for (std::size_t i = 0; i < zs.size(); ++i) out += (i ? ", " : "") + complex_text(zs[i]);
    return out + "]";
}

Json complex_json(const std::vector<Complex>& zs) {
    Json out = Json::array();
    for (const auto& z : zs) out.push_back(Json{{"re", real_to_json(z.real())}, {"im", real_to_json(z.imag())}});
    return out;
}

Json reals_json(const std::vector<double>& xs) {
    Json out = Json::array();
    for (double x : xs) out.push_back(real_to_json(x));
    return out;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed for " + path.string());
}

Vector symmetric_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// ---------------------------------------------------------------------------
// evolve

std::string trajectory_csv(const Scenario& s, double step) {
    const SpaceFormCurvature c(*s.c);
    const SplittingTensor c0(*s.c0);
    const ShapeOperatorSet a0(s.a0);
    const JacobiFlow flow(c, c0);
    const auto times = s.grid->times();
    const auto rk_c = riccati_trajectory(c, c0, times, step);
    std::vector<ShapeOperatorSet> rk_a;
    if (!a0.empty()) rk_a = shape_ode_trajectory(a0, c, c0, times, step);

    const Eigen::Index q = c0.dim();
    std::string out = "t,det_J,norm_C";
    for (std::size_t i = 0; i < a0.size(); ++i) out += ",norm_A" + std::to_string(i);
    for (std::size_t i = 0; i < a0.size(); ++i) {
        for (Eigen::Index j = 0; j < q; ++j) out += ",eig_A" + std::to_string(i) + "_" + std::to_string(j);
    }
    out += ",oracle_err_C";
    if (!a0.empty()) out += ",oracle_err_A";
    out += "\n";

    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const Matrix j = flow.jacobi(t);
        const SplittingTensor ct = flow.splitting(t);
        const double det = q == 0 ? 1.0 : j.determinant();
        std::string row = real_text(t) + "," + real_text(det) + "," + real_text(ct.matrix().norm());
        ShapeOperatorSet at;
        if (!a0.empty()) at = flow.shape(a0, t);
        for (const auto& a : at) row += "," + real_text(a.norm());
        for (const auto& a : at) {
            const Vector ev = symmetric_eigenvalues(a);
            for (Eigen::Index e = 0; e < ev.size(); ++e) row += "," + real_text(ev(e));
        }
        row += "," + real_text(norm_max(ct.matrix() - rk_c[k].matrix()));
        if (!a0.empty()) {
            double err = 0.0;
            for (std::size_t x = 0; x < at.size(); ++x) err = std::max(err, norm_max(at[x] - rk_a[k][x]));
            row += "," + real_text(err);
        }
        out += row + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// classify

Json verdict_json(const SpectrumVerdict& v) {
    Json out;
    out["consistent"] = v.consistent;
    out["violated_clause"] = v.violated_clause ? Json(label(*v.violated_clause)) : Json(nullptr);
    out["offending_eigenvalues"] = complex_json(v.offending_eigenvalues);
    if (v.admissible_interval) {
        out["admissible_interval"] = Json::array({real_to_json(v.admissible_interval->lo),
                                                  real_to_json(v.admissible_interval->hi)});
    } else {
        out["admissible_interval"] = nullptr;
    }
    out["spectrum"] = complex_json(v.spectrum);
    return out;
}

Json blocks_json(const std::vector<DecayBlock>& blocks) {
    Json out = Json::array();
    for (const auto& b : blocks) {
        Json j;
        j["descriptor"] = b.descriptor;
        j["critical"] = b.critical;
        j["dimension"] = b.basis.cols();
        j["eigenvalues"] = complex_json(b.eigenvalues);
        j["behavior"] = to_string(b.behavior);
        j["rate"] = real_to_json(b.rate);
        j["sampled_norms"] = reals_json({b.sampled_norms.begin(), b.sampled_norms.end()});
        out.push_back(std::move(j));
    }
    return out;
}

Json decay_json(const DecayReport& r) {
    Json out;
    out["per_block"] = blocks_json(r.per_block);
    out["forward_limit"] = to_string(r.forward_limit);
    if (r.backward_limit) {
        out["backward_blocks"] = blocks_json(r.backward_blocks);
        out["backward_limit"] = to_string(*r.backward_limit);
    }
    out["global_alpha_limit"] = to_string(r.global_alpha_limit);
    return out;
}

void append_blocks_text(std::string& out, const std::vector<DecayBlock>& blocks, const char* direction) {
    for (const auto& b : blocks) {
        out += std::string("block ") + direction + " " + b.descriptor + ": dim " + std::to_string(b.basis.cols()) +
               ", " + to_string(b.behavior) + ", rate " + real_text(b.rate) + ", eigenvalues " +
               list_text(b.eigenvalues) + "\n";
    }
}

std::string verdict_text(const Scenario& s, const SpectrumVerdict& v, const std::optional<DecayReport>& r) {
    std::string out = "scenario: " + s.name + "\n";
    out += "c: " + real_text(*s.c) + "\n";
    out += "domain: " + to_string(s.domain->kind);
    if (s.domain->kind == GeodesicDomain::Kind::Segment) out += " " + real_text(s.domain->b);
    out += "\n";
    out += "verdict: " + (v.consistent ? std::string("consistent") : "violates " + label(*v.violated_clause)) + "\n";
    if (v.admissible_interval) {
        out += "admissible_interval: [" + real_text(v.admissible_interval->lo) + ", " +
               real_text(v.admissible_interval->hi) + "]\n";
    } else {
        out += "admissible_interval: none\n";
    }
    out += "spectrum: " + list_text(v.spectrum) + "\n";
    out += "offending_eigenvalues: " + list_text(v.offending_eigenvalues) + "\n";
    if (r) {
        append_blocks_text(out, r->per_block, "forward");
        out += "forward_limit: " + to_string(r->forward_limit) + "\n";
        if (r->backward_limit) {
            append_blocks_text(out, r->backward_blocks, "backward");
            out += "backward_limit: " + to_string(*r->backward_limit) + "\n";
        }
        out += "global_alpha_limit: " + to_string(r->global_alpha_limit) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// search

Json search_json(const Scenario& s) {
    const SplittingFamily family(std::vector<SplittingTensor>(s.family.begin(), s.family.end()),
                                 s.family.front().rows());
    Json out;
    out["scenario"] = s.name;
    out["nu0"] = family.size();
    out["q"] = family.q();
    out["high_nullity_applicable"] =
        high_nullity_applicable(static_cast<int>(family.size()), static_cast<int>(family.q()));
    const auto dir = find_special_nullity_direction(family);
    if (!dir) {
        out["result"] = "absent";
        return out;
    }
    out["result"] = "found";
    out["coeffs"] = reals_json({dir->coeffs.begin(), dir->coeffs.end()});
    out["lambda"] = real_to_json(dir->lambda);
    out["skew"] = matrix_to_json(dir->skew);
    out["splitting"] = matrix_to_json(dir->splitting.matrix());
    if (s.c && !s.a0.empty() && *s.c <= 0.0) {
        const auto res = high_nullity_pipeline(family, ShapeOperatorSet(s.a0), SpaceFormCurvature(*s.c));
        Json p;
        p["orientation"] = res.orientation;
        p["boundary_case"] = res.boundary_case;
        p["report"] = decay_json(res.report);
        out["pipeline"] = std::move(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// catalog

catalog::ModelSubmanifold build_model(const ModelSpec& m) {
    if (m.name == "totally_geodesic") return catalog::totally_geodesic(m.n, m.p, m.c);
    if (m.name == "hyperbolic_cylinder") return catalog::hyperbolic_cylinder(m.k, m.n, m.rho);
    if (m.name == "cartan_veronese_polar") return catalog::cartan_veronese_polar();
    if (m.name == "euclidean_cylinder") return catalog::euclidean_cylinder(m.n, m.kappa);
    throw ParseError("unknown model " + m.name);
}

Json model_json(const catalog::ModelSubmanifold& m, bool& all_passed) {
    Json out;
    out["name"] = m.name;
    out["profile"] = Json{{"n", m.profile.n}, {"p", m.profile.p}, {"nu", m.profile.nu}, {"q", m.profile.q}};
    out["c"] = real_to_json(m.c.value());
    Json shape = Json::array();
    for (const auto& a : m.shape) shape.push_back(matrix_to_json(a));
    out["shape"] = std::move(shape);
    out["principal_curvatures"] = reals_json(m.principal_curvatures());
    out["conullity_frame"] = matrix_to_json(m.conullity_frame);
    Json family = Json::array();
    for (const auto& ct : m.splitting_family.basis()) family.push_back(matrix_to_json(ct.matrix()));
    out["splitting_family"] = std::move(family);
    out["splitting_provenance"] = m.splitting_provenance;

    Json props = Json::array();
    for (const auto& p : m.expected_properties) {
        props.push_back(Json{{"tag", p.tag}, {"statement", p.statement}, {"expected", reals_json(p.expected)}});
    }
    out["expected_properties"] = std::move(props);

    all_passed = true;
    Json checks = Json::array();
    for (const auto& c : catalog::check_expected_properties(m)) {
        all_passed = all_passed && c.passed;
        checks.push_back(Json{{"tag", c.tag}, {"passed", c.passed}, {"value", real_to_json(c.value)}, {"detail", c.detail}});
    }
    out["checks"] = std::move(checks);
    return out;
}

fs::path output_path(const RunOptions& o, const Scenario& s, const char* suffix) {
    return o.out_dir / (s.name + suffix);
}

}  // namespace

RunOutcome run_scenario(const Scenario& s, const RunOptions& options) {
    fs::create_directories(options.out_dir);
    RunOutcome outcome;
    auto emit = [&](const char* suffix, const std::string& text) {
        const fs::path path = output_path(options, s, suffix);
        write_file(path, text);
        outcome.files.push_back(path);
    };

    switch (s.mode) {
        case Mode::Evolve: {
            emit(".trajectory.csv", trajectory_csv(s, options.step));
            outcome.message = s.name + ": " + std::to_string(s.grid->samples) + " rows";
            break;
        }
        case Mode::Classify: {
            const SpaceFormCurvature c(*s.c);
            const SplittingTensor c0(*s.c0);
            const GeodesicDomain domain = s.domain->domain();
            const auto verdict = classify_splitting_spectrum(c, c0, domain);
            std::optional<DecayReport> decay;
            if (verdict.consistent && !s.a0.empty() && c.value() <= 0.0 &&
                domain.kind() != GeodesicDomain::Kind::Segment) {
                decay = decay_report(ShapeOperatorSet(s.a0), c, c0, domain);
            }
            Json doc;
            doc["scenario"] = s.name;
            doc["verdict"] = verdict_json(verdict);
            if (decay) doc["decay_report"] = decay_json(*decay);
            emit(".verdict.txt", verdict_text(s, verdict, decay));
            emit(".verdict.json", doc.dump(2) + "\n");
            outcome.message = s.name + ": " +
                              (verdict.consistent ? std::string("consistent") : "violates " + label(*verdict.violated_clause));
            break;
        }
        case Mode::Search: {
            const Json doc = search_json(s);
            emit(".direction.json", doc.dump(2) + "\n");
            outcome.message = s.name + ": " + doc["result"].get<std::string>();
            break;
        }
        case Mode::Catalog: {
            bool passed = true;
            const Json doc = model_json(build_model(*s.model), passed);
            emit(".model.json", doc.dump(2) + "\n");
            outcome.exit_code = passed ? exit_code::kOk : exit_code::kChecksFailed;
            outcome.message = s.name + ": " + s.model->name + (passed ? "" : " (property check failed)");
            break;
        }
        case Mode::Check: {
            const auto results = run_checks(s.checks, s.cases, options.seed.value_or(s.seed), options.step);
            const std::string text = report(results);
            emit(".check.txt", text);
            const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
            outcome.exit_code = ok ? exit_code::kOk : exit_code::kChecksFailed;
            outcome.message = s.name + ": " + text.substr(0, text.find('\n'));
            break;
        }
    }
    return outcome;
}

int exit_code_for_current_exception(std::string& message) {
    try {
        throw;
    } catch (const ParseError& e) {
        message = e.what();
        return exit_code::kParse;
    } catch (const nlohmann::json::exception& e) {
        message = e.what();
        return exit_code::kParse;
    } catch (const std::invalid_argument& e) {
        message = e.what();
        return exit_code::kParse;
    } catch (const DimensionMismatch& e) {
        message = e.what();
        return exit_code::kDimension;
    } catch (const SingularJacobi& e) {
        message = e.what();
        return exit_code::kSingular;
    } catch (const std::exception& e) {
        message = e.what();
        return exit_code::kLibrary;
    }
}

namespace {

RunOutcome run_one(const fs::path& file, std::optional<Mode> required, const RunOptions& options, bool skip_other) {
    RunOutcome outcome;
    try {
        const Scenario s = load_scenario(file);
        if (required && s.mode != *required) {
            if (skip_other) return outcome;
            throw ParseError(file.string() + " is a " + to_string(s.mode) + " scenario, expected " +
                             to_string(*required));
        }
        outcome = run_scenario(s, options);
    } catch (...) {
        std::string what;
        outcome.exit_code = exit_code_for_current_exception(what);
        outcome.message = file.filename().string() + ": " + what;
    }
    return outcome;
}

}  // namespace

RunOutcome run_path(const fs::path& path, std::optional<Mode> required, const RunOptions& options) {
    if (!fs::is_directory(path)) return run_one(path, required, options, false);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    RunOutcome batch;
    for (const auto& f : files) {
        RunOutcome one = run_one(f, required, options, true);
        if (batch.exit_code == exit_code::kOk) batch.exit_code = one.exit_code;
        batch.files.insert(batch.files.end(), one.files.begin(), one.files.end());
        if (!one.message.empty()) batch.message += (batch.message.empty() ? "" : "\n") + one.message;
    }
    return batch;
}

}  // namespace nullity::cli
