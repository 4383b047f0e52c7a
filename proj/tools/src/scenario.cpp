#include "nullity_cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nullity/jacobi.hpp"
#include "nullity/linalg.hpp"

namespace nullity::cli {
namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

double read_real(const Json& v, const std::string& field) {
    if (!v.is_number()) fail(field + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(field + ": must be finite");
    return x;
}

int read_int(const Json& v, const std::string& field) {
    if (!v.is_number_integer()) fail(field + ": expected an integer");
    return v.get<int>();
}

Matrix read_matrix(const Json& v, const std::string& field) {
    if (!v.is_array()) fail(field + ": expected an array of rows");
    const auto rows = static_cast<Eigen::Index>(v.size());
    if (rows == 0) return Matrix(0, 0);
    if (!v[0].is_array()) fail(field + ": rows must be arrays");
    const auto cols = static_cast<Eigen::Index>(v[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = v[static_cast<std::size_t>(i)];
        if (!row.is_array()) fail(field + ": rows must be arrays");
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw DimensionMismatch(field + ": ragged rows");
        }
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = read_real(row[static_cast<std::size_t>(j)], field);
        }
    }
    return m;
}

std::vector<Matrix> read_matrix_list(const Json& v, const std::string& field) {
    if (!v.is_array()) fail(field + ": expected a list of matrices");
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_matrix(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

const Json& require(const Json& doc, const char* key, Mode mode) {
    if (!doc.contains(key)) fail(std::string("missing field '") + key + "' for mode " + to_string(mode));
    return doc.at(key);
}

void require_square(const Matrix& m, const std::string& field) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch(field + " must be square, got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
    }
}

void validate_shapes(const std::vector<Matrix>& a0, Eigen::Index q) {
    for (std::size_t i = 0; i < a0.size(); ++i) {
        const std::string field = "A0[" + std::to_string(i) + "]";
        require_square(a0[i], field);
        if (a0[i].rows() != q) {
            throw DimensionMismatch(field + " is " + std::to_string(a0[i].rows()) + "x" + std::to_string(a0[i].rows()) +
                                    " but C0 is " + std::to_string(q) + "x" + std::to_string(q));
        }
        if (!is_symmetric(a0[i])) fail(field + " is not symmetric");
    }
}

DomainSpec read_domain(const Json& v) {
    if (!v.is_object() || !v.contains("kind")) fail("domain: expected {\"kind\": ...}");
    const std::string kind = v.at("kind").get<std::string>();
    DomainSpec d;
    if (kind == "segment") {
        d.kind = GeodesicDomain::Kind::Segment;
        if (!v.contains("b")) fail("domain: segment needs 'b'");
        d.b = read_real(v.at("b"), "domain.b");
        if (!(d.b > 0.0)) fail("domain.b must be positive");
    } else if (kind == "ray") {
        d.kind = GeodesicDomain::Kind::Ray;
    } else if (kind == "line") {
        d.kind = GeodesicDomain::Kind::Line;
    } else {
        fail("domain.kind must be segment, ray or line");
    }
    return d;
}

TimeGrid read_grid(const Json& v) {
    if (!v.is_object()) fail("t_grid: expected an object");
    TimeGrid g;
    g.t_end = read_real(require(v, "t_end", Mode::Evolve), "t_grid.t_end");
    g.samples = v.contains("samples") ? read_int(v.at("samples"), "t_grid.samples") : 11;
    if (!(g.t_end >= 0.0)) fail("t_grid.t_end must be >= 0");
    if (g.samples < 2 || g.samples > 100000) fail("t_grid.samples must lie in [2, 100000]");
    return g;
}

ModelSpec read_model(const Json& v) {
    if (!v.is_object() || !v.contains("name")) fail("model: expected {\"name\": ...}");
    ModelSpec m;
    m.name = v.at("name").get<std::string>();
    auto opt_int = [&](const char* key, int& out) {
        if (v.contains(key)) out = read_int(v.at(key), std::string("model.") + key);
    };
    auto opt_real = [&](const char* key, double& out) {
        if (v.contains(key)) out = read_real(v.at(key), std::string("model.") + key);
    };
    opt_int("n", m.n);
    opt_int("p", m.p);
    opt_int("k", m.k);
    opt_real("c", m.c);
    opt_real("rho", m.rho);
    opt_real("kappa", m.kappa);
    if (m.name != "totally_geodesic" && m.name != "hyperbolic_cylinder" && m.name != "cartan_veronese_polar" &&
        m.name != "euclidean_cylinder") {
        fail("model.name '" + m.name + "' is not in the catalog");
    }
    return m;
}

}  // namespace

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Evolve: return "evolve";
        case Mode::Classify: return "classify";
        case Mode::Search: return "search";
        case Mode::Catalog: return "catalog";
        case Mode::Check: return "check";
    }
    return "unknown";
}

std::optional<Mode> parse_mode(const std::string& text) {
    for (Mode m : {Mode::Evolve, Mode::Classify, Mode::Search, Mode::Catalog, Mode::Check}) {
        if (to_string(m) == text) return m;
    }
    return std::nullopt;
}

GeodesicDomain DomainSpec::domain() const {
    switch (kind) {
        case GeodesicDomain::Kind::Segment: return GeodesicDomain::segment(b);
        case GeodesicDomain::Kind::Ray: return GeodesicDomain::ray();
        case GeodesicDomain::Kind::Line: return GeodesicDomain::line();
    }
    return GeodesicDomain::ray();
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) out.push_back(t_end * i / (samples - 1));
    out.back() = t_end;
    return out;
}

Scenario parse_scenario(const Json& doc, std::string name) {
    if (!doc.is_object()) fail("scenario must be a JSON object");
    Scenario s;
    s.name = std::move(name);

    try {
        const auto mode = parse_mode(doc.contains("mode") ? doc.at("mode").get<std::string>() : "");
        if (!mode) fail("field 'mode' must be one of evolve, classify, search, catalog, check");
        s.mode = *mode;
        if (doc.contains("seed")) {
            if (!doc.at("seed").is_number_unsigned()) fail("seed must be a nonnegative integer");
            s.seed = doc.at("seed").get<std::uint64_t>();
        }

        if (doc.contains("c")) s.c = read_real(doc.at("c"), "c");
        if (doc.contains("C0")) s.c0 = read_matrix(doc.at("C0"), "C0");
        if (doc.contains("A0")) s.a0 = read_matrix_list(doc.at("A0"), "A0");
        if (doc.contains("domain")) s.domain = read_domain(doc.at("domain"));
        if (doc.contains("t_grid")) s.grid = read_grid(doc.at("t_grid"));
        if (doc.contains("family")) s.family = read_matrix_list(doc.at("family"), "family");
        if (doc.contains("model")) s.model = read_model(doc.at("model"));
        if (doc.contains("checks")) {
            const Json& v = doc.at("checks");
            if (!v.is_array()) fail("checks: expected a list of names");
            for (const auto& item : v) s.checks.push_back(item.get<std::string>());
        }
        if (doc.contains("cases")) {
            s.cases = read_int(doc.at("cases"), "cases");
            if (s.cases < 1 || s.cases > 100000) fail("cases must lie in [1, 100000]");
        }
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("malformed field: ") + e.what());
    }

    switch (s.mode) {
        case Mode::Evolve: {
            require(doc, "c", s.mode);
            require(doc, "C0", s.mode);
            require(doc, "t_grid", s.mode);
            require_square(*s.c0, "C0");
            validate_shapes(s.a0, s.c0->rows());
            const double b = max_invertible_time(SpaceFormCurvature(*s.c), SplittingTensor(*s.c0));
            if (!(s.grid->t_end < b)) {
                throw SingularJacobi("t_grid.t_end = " + std::to_string(s.grid->t_end) +
                                     " is not below the invertibility horizon " + std::to_string(b));
            }
            break;
        }
        case Mode::Classify:
            require(doc, "c", s.mode);
            require(doc, "C0", s.mode);
            require(doc, "domain", s.mode);
            require_square(*s.c0, "C0");
            validate_shapes(s.a0, s.c0->rows());
            break;
        case Mode::Search: {
            require(doc, "family", s.mode);
            if (s.family.empty()) fail("family must not be empty");
            const Eigen::Index q = s.family.front().rows();
            for (std::size_t i = 0; i < s.family.size(); ++i) {
                require_square(s.family[i], "family[" + std::to_string(i) + "]");
                if (s.family[i].rows() != q) throw DimensionMismatch("family members differ in size");
            }
            if (!s.a0.empty() && !s.c) fail("search with A0 needs c");
            validate_shapes(s.a0, q);
            break;
        }
        case Mode::Catalog:
            require(doc, "model", s.mode);
            break;
        case Mode::Check:
            break;
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return parse_scenario(doc, path.stem().string());
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(real_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json real_to_json(double x) {
    if (std::isfinite(x)) return x + 0.0;  // drops the sign of -0
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

Json to_json(const Scenario& s) {
    Json doc;
    doc["mode"] = to_string(s.mode);
    doc["seed"] = s.seed;
    if (s.c) doc["c"] = *s.c;
    if (s.c0) doc["C0"] = matrix_to_json(*s.c0);
    if (!s.a0.empty()) {
        Json list = Json::array();
        for (const auto& a : s.a0) list.push_back(matrix_to_json(a));
        doc["A0"] = std::move(list);
    }
    if (s.domain) {
        Json d;
        d["kind"] = to_string(s.domain->kind);
        if (s.domain->kind == GeodesicDomain::Kind::Segment) d["b"] = s.domain->b;
        doc["domain"] = std::move(d);
    }
    if (s.grid) doc["t_grid"] = Json{{"t_end", s.grid->t_end}, {"samples", s.grid->samples}};
    if (!s.family.empty()) {
        Json list = Json::array();
        for (const auto& m : s.family) list.push_back(matrix_to_json(m));
        doc["family"] = std::move(list);
    }
    if (s.model) {
        Json m;
        m["name"] = s.model->name;
        if (s.model->n) m["n"] = s.model->n;
        if (s.model->p) m["p"] = s.model->p;
        if (s.model->k) m["k"] = s.model->k;
        if (s.model->c != 0.0) m["c"] = s.model->c;
        if (s.model->rho != 0.0) m["rho"] = s.model->rho;
        if (s.model->kappa != 0.0) m["kappa"] = s.model->kappa;
        doc["model"] = std::move(m);
    }
    if (s.mode == Mode::Check) {
        doc["checks"] = s.checks;
        doc["cases"] = s.cases;
    }
    return doc;
}

std::string canonical_text(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

}  // namespace nullity::cli
