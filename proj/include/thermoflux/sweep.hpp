// sweep.hpp — Temperature sweeps, CSV/JSON output and figure presets

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "thermoflux/config.hpp"

namespace thermoflux::cli {

inline constexpr std::string_view kCodeVersion = "0.1.0";
inline constexpr std::string_view kCsvSchema = "# thermoflux sweep csv v1";

enum class Pipeline { Linear, TwoPhoton, Asymmetric, Full, TlsReduction };

std::string_view to_string(Pipeline pipeline) noexcept;
Pipeline classify(const RunConfig& config) noexcept;

struct SweepRow {
    double T_varied{0.0};
    double J_forward{0.0};
    double J_reverse{0.0};
    double R{0.0};
    bool no_transport{false};
    double mean_n{0.0};
    double residual{0.0}; // max relative residual ||L rho||/||L||_F of both solves
    double balance{0.0};  // max |J_L + J_R| of both solves
    std::optional<double> analytic_J;
    std::optional<double> analytic_R;
};

struct SweepResult {
    Pipeline pipeline{Pipeline::Full};
    Sector sector{Sector::Full};
    std::vector<SweepRow> rows;
    std::vector<std::string> warnings;
    std::optional<int> recommended_dim;
};

SweepResult run_sweep(const RunConfig& config, int workers = 1);

void write_csv(std::ostream& out, const SweepResult& result);
nlohmann::json metadata(const RunConfig& config, const SweepResult& result, double wall_seconds);

struct RunOptions {
    int workers{1};
    std::optional<double> tolerance;
    std::optional<std::filesystem::path> out_dir;
};

// Exit codes of run_scenario.
enum ExitCode : int { kOk = 0, kConfigError = 1, kSolverFailure = 2, kCrossCheckFailure = 3 };

// Runs the sweep and writes CSV plus metadata only when every point succeeds.
int run_scenario(RunConfig config, const RunOptions& options, std::ostream& log);
int run_scenario_file(const std::filesystem::path& path, const RunOptions& options, std::ostream& log);

enum class FigureId { Fig2, Fig3, Fig4, Fig5 };

std::optional<FigureId> parse_figure(std::string_view text) noexcept;

// Parameter sets and default grids of the reproduced figures.
std::vector<RunConfig> figure_runs(FigureId figure, const std::filesystem::path& out_dir);

int reproduce_figure(FigureId figure, const RunOptions& options, std::ostream& log);

struct CheckOutcome {
    std::string name;
    bool passed{false};
    std::string detail;
};

// Invariant suite on small built-in fixtures.
std::vector<CheckOutcome> run_builtin_checks();

} // namespace thermoflux::cli
