#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "nullity/types.hpp"

namespace nullity::cli {

using Json = nlohmann::ordered_json;

enum class Mode { Evolve, Classify, Search, Catalog, Check };

std::string to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& text);

/// Malformed or incomplete scenario document.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DomainSpec {
    GeodesicDomain::Kind kind = GeodesicDomain::Kind::Ray;
    double b = 0.0;  ///< segment length, unused otherwise

    GeodesicDomain domain() const;
};

struct TimeGrid {
    double t_end = 0.0;
    int samples = 2;  ///< points including t = 0 and t_end

    std::vector<double> times() const;
};

struct ModelSpec {
    std::string name;
    int n = 0;
    int p = 0;
    int k = 0;
    double c = 0.0;
    double rho = 0.0;
    double kappa = 0.0;
};

/// One scenario document. Which fields are required depends on the mode;
/// parse_scenario enforces that.
struct Scenario {
    std::string name;
    Mode mode = Mode::Evolve;
    std::uint64_t seed = 0;

    std::optional<double> c;
    std::optional<Matrix> c0;
    std::vector<Matrix> a0;
    std::optional<DomainSpec> domain;
    std::optional<TimeGrid> grid;
    std::vector<Matrix> family;
    std::optional<ModelSpec> model;
    std::vector<std::string> checks;
    int cases = 20;
};

/// Validates field presence, shapes and values. Throws ParseError for
/// malformed input, DimensionMismatch for inconsistent matrix sizes, and
/// SingularJacobi when an evolve grid reaches the invertibility horizon.
Scenario parse_scenario(const Json& doc, std::string name);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical document: fixed key order, only the fields that are set.
Json to_json(const Scenario& scenario);
std::string canonical_text(const Scenario& scenario);

Json matrix_to_json(const Matrix& m);
/// Finite reals as numbers, infinities as "inf" / "-inf".
Json real_to_json(double x);

}  // namespace nullity::cli
