// thermoflux — command-line front end for sweeps, figure data and checks

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thermoflux/sweep.hpp"

namespace cli = thermoflux::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Heat transport through a dissipative oscillator"};
    app.require_subcommand(1);

    int workers = 1;
    std::optional<double> tolerance;
    app.add_option("--workers", workers, "Concurrent sweep points")->check(CLI::PositiveNumber);
    app.add_option("--tolerance", tolerance, "Relative steady-state residual tolerance")
        ->check(CLI::PositiveNumber);

    std::string config_path;
    std::optional<std::string> run_out;
    auto* run = app.add_subcommand("run", "Run a sweep from a config or metadata file");
    run->add_option("config", config_path, "Config JSON or metadata sidecar")->required();
    run->add_option("--out", run_out, "Output directory (file names kept from the config)");

    std::string figure;
    std::optional<std::string> fig_out;
    auto* reproduce = app.add_subcommand("reproduce", "Write the data behind a figure");
    reproduce->add_option("figure", figure, "fig2, fig3, fig4 or fig5")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
    reproduce->add_option("--out", fig_out, "Output directory (default THERMOFLUX_OUT or .)");

    auto* check = app.add_subcommand("check", "Run the built-in invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kConfigError;
    }

    cli::RunOptions options;
    options.workers = workers;
    options.tolerance = tolerance;

    if (*run) {
        if (run_out) options.out_dir = *run_out;
        return cli::run_scenario_file(config_path, options, std::cerr);
    }
    if (*reproduce) {
        if (fig_out) options.out_dir = *fig_out;
        return cli::reproduce_figure(*cli::parse_figure(figure), options, std::cerr);
    }
    if (*check) {
        bool ok = true;
        for (const auto& outcome : cli::run_builtin_checks()) {
            std::cout << (outcome.passed ? "PASS " : "FAIL ") << outcome.name << " (" << outcome.detail << ")\n";
            ok = ok && outcome.passed;
        }
        return ok ? cli::kOk : cli::kCrossCheckFailure;
    }
    return cli::kConfigError;
}
