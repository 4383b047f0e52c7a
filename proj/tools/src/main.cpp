#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "nullity_cli/runner.hpp"
#include "nullity_cli/scenario.hpp"

namespace {

struct Flags {
    std::string scenario;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    double step = nullity::kDefaultOracleStep;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--scenario", f.scenario, "Scenario file, or a directory of *.json scenarios")->required();
    cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", f.seed, "Override the scenario seed");
    cmd->add_option("--step", f.step, "Oracle integrator step")->capture_default_str()->check(CLI::PositiveNumber);
}

int run(const Flags& f, std::optional<nullity::cli::Mode> mode) {
    nullity::cli::RunOptions options;
    options.out_dir = f.out;
    options.seed = f.seed;
    options.step = f.step;
    const auto outcome = nullity::cli::run_path(f.scenario, mode, options);
    if (!outcome.message.empty()) {
        (outcome.exit_code == 0 ? std::cout : std::cerr) << outcome.message << "\n";
    }
    return outcome.exit_code;
}

int format(const Flags& f) {
    try {
        std::cout << nullity::cli::canonical_text(nullity::cli::load_scenario(f.scenario));
        return 0;
    } catch (...) {
        std::string what;
        const int code = nullity::cli::exit_code_for_current_exception(what);
        std::cerr << what << "\n";
        return code;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using nullity::cli::Mode;
    CLI::App app{"Evolve, classify and check relative-nullity data of submanifolds in space forms"};
    app.require_subcommand(1);

    Flags flags;
    const std::pair<const char*, std::optional<Mode>> commands[] = {
        {"evolve", Mode::Evolve},       {"classify", Mode::Classify}, {"search", Mode::Search},
        {"catalog", Mode::Catalog},     {"check", Mode::Check},       {"run", std::nullopt},
    };
    std::optional<Mode> selected;
    for (const auto& [name, mode] : commands) {
        auto* cmd = app.add_subcommand(name, mode ? "Run " + std::string(name) + " scenarios"
                                                  : std::string("Run scenarios of any mode"));
        add_flags(cmd, flags);
        cmd->callback([&selected, m = mode] { selected = m; });
    }
    auto* fmt = app.add_subcommand("format", "Print a scenario in canonical form");
    fmt->add_option("--scenario", flags.scenario, "Scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nullity::cli::exit_code::kParse;
    }
    if (fmt->parsed()) return format(flags);
    return run(flags, selected);
}
