#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nullity/flow.hpp"
#include "nullity_cli/scenario.hpp"

namespace nullity::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kChecksFailed = 1;
inline constexpr int kParse = 2;
inline constexpr int kDimension = 3;
inline constexpr int kSingular = 4;
inline constexpr int kLibrary = 5;
}  // namespace exit_code

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Deterministic summary: results sorted by name, one line each, preceded
/// by "<n> checks, <k> passed, <f> failed".
std::string report(std::vector<CheckResult> results);

/// Names accepted in a check scenario's "checks" list ("all" expands to
/// every one of them).
const std::vector<std::string>& known_checks();

/// Runs the named invariant checks with `cases` random cases each, seeded
/// from `seed`. Unknown names produce a failing result.
std::vector<CheckResult> run_checks(const std::vector<std::string>& names, int cases, std::uint64_t seed,
                                    double step);

struct RunOptions {
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;  ///< overrides the scenario seed
    double step = kDefaultOracleStep;
};

struct RunOutcome {
    int exit_code = exit_code::kOk;
    std::vector<std::filesystem::path> files;
    std::string message;  ///< one line for the terminal
};

/// Executes one parsed scenario and writes its outputs under out_dir.
RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options);

/// Loads and runs a scenario file, or every *.json file of a directory in
/// name order. With `required` set, files of another mode are a parse error
/// (single file) or skipped (directory). The batch exit code is the first
/// nonzero one.
RunOutcome run_path(const std::filesystem::path& path, std::optional<Mode> required, const RunOptions& options);

/// Maps the exception currently being handled to an exit code.
int exit_code_for_current_exception(std::string& message);

}  // namespace nullity::cli
