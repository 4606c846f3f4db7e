#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wcop/commands.hpp"

namespace {

enum ExitCode { ok = 0, config_error = 1, domain_error = 2, precondition_failure = 3, tolerance_failure = 4 };

int fail(int code, const std::string& kind, const std::string& message) {
    std::cerr << "wcop: " << kind << ": " << message << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted composition operators on the Bloch and Dirichlet spaces: experiments and reports"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid_levels;
    bool json_stdout = false;
    app.add_option("--config", config_path, "experiment config (JSON); built-in defaults when omitted");
    app.add_option("--out", out_dir, "output directory (overrides output_dir)");
    app.add_option("--seed", seed, "random seed (overrides seed)");
    app.add_option("--grid-levels", grid_levels, "radial levels of the sampling grid")->check(CLI::PositiveNumber);
    app.add_flag("--json", json_stdout, "print the report to stdout");

    const std::pair<const char*, const char*> commands[] = {
        {"classify", "classify the automorphism phi"},
        {"predict", "predict the spectrum of uC_phi"},
        {"estimate-radius", "grid estimates of ||u_(n)||^(1/n) against the predicted radius"},
        {"check-bounded", "boundedness verdict with witness suprema"},
        {"check-invertible", "invertibility test and inverse operator"},
        {"root-cloud", "root-set point cloud for periodic elliptic phi"},
        {"truncate-eigs", "eigenvalues of Taylor truncations (exploratory)"},
        {"probe-conjecture", "resolvent norms of truncations inside the hyperbolic annulus (exploratory)"},
        {"verify", "run the reproduction suite; exit 4 if a check fails"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        wcop::ExperimentConfig config = config_path.empty() ? wcop::ExperimentConfig{} : wcop::load_config(config_path);
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (seed) config.seed = *seed;
        if (grid_levels) config.grid.radial_levels = *grid_levels;

        const auto output = wcop::run_command(command, config);
        wcop::write_outputs(output, config.output_dir);
        if (json_stdout) std::cout << output.report_json;
        if (!output.checks_passed) return fail(tolerance_failure, "tolerance failure", "see " + config.output_dir + "/report.json");
        return ok;
    } catch (const wcop::ConfigError& e) {
        return fail(config_error, "config error", e.what());
    } catch (const wcop::DomainError& e) {
        return fail(domain_error, "domain error", e.what());
    } catch (const wcop::PreconditionError& e) {
        return fail(precondition_failure, "precondition failure", e.what());
    } catch (const wcop::NumericalError& e) {
        return fail(domain_error, "numerical error", e.what());
    }
}
