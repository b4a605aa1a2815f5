// figures.cpp — Parameter presets behind the reproduced transport figures

#include <cstdlib>
#include <ostream>

#include "thermoflux/sweep.hpp"

namespace thermoflux::cli {

namespace {

constexpr int kGridPoints = 64;

RunConfig preset(int dim, BathSpec left, BathSpec right, double fixed_T, double T_min, double T_max,
                 const std::string& stem)
{
    RunConfig run;
    run.sweep.mode = SweepMode::FixLeftVaryRight;
    run.sweep.fixed_T = fixed_T;
    run.sweep.T_values = temperature_grid(T_min, T_max, kGridPoints, true);
    run.sweep.config.omega = 1.0;
    run.sweep.config.dim = dim;
    left.temperature = fixed_T;
    right.temperature = fixed_T;
    run.sweep.config.left = left;
    run.sweep.config.right = right;
    run.csv_path = stem + ".csv";
    run.meta_path = stem + ".meta.json";
    return run;
}

} // namespace

std::optional<FigureId> parse_figure(std::string_view text) noexcept
{
    if (text == "fig2") return FigureId::Fig2;
    if (text == "fig3") return FigureId::Fig3;
    if (text == "fig4") return FigureId::Fig4;
    if (text == "fig5") return FigureId::Fig5;
    return std::nullopt;
}

std::vector<RunConfig> figure_runs(FigureId figure, const std::filesystem::path& out_dir)
{
    std::vector<RunConfig> runs;
    switch (figure) {
    case FigureId::Fig2:
        // Pure two-photon coupling, T_L = 2 fixed.
        for (const char* g : {"0.001", "0.01"}) {
            runs.push_back(preset(60, {1.0, 0.0, 0.1}, {1.0, 0.0, std::atof(g)}, 2.0, 0.1, 3.0,
                                  std::string("fig2_GammaR_") + g));
        }
        break;
    case FigureId::Fig3:
        // Two-photon coupling on the left only, T_L = 0.25 fixed.
        runs.push_back(preset(50, {1.0, 0.2, 0.02}, {1.0, 0.2, 0.0}, 0.25, 0.25, 4.0, "fig3"));
        break;
    case FigureId::Fig4:
        for (const char* g : {"0.001", "0.1"}) {
            runs.push_back(preset(50, {1.0, 0.5, std::atof(g)}, {1.0, 0.5, 0.0}, 2.0, 0.1, 4.0,
                                  std::string("fig4_GammaL_") + g));
        }
        break;
    case FigureId::Fig5:
        for (const char* g : {"0.001", "0.01"}) {
            runs.push_back(preset(50, {1.0, 0.2, 0.1}, {1.0, 0.2, std::atof(g)}, 2.0, 0.1, 4.0,
                                  std::string("fig5_GammaR_") + g));
        }
        break;
    }
    for (RunConfig& run : runs) {
        run.csv_path = (out_dir / run.csv_path).string();
        run.meta_path = (out_dir / run.meta_path).string();
    }
    return runs;
}

int reproduce_figure(FigureId figure, const RunOptions& options, std::ostream& log)
{
    std::filesystem::path dir = ".";
    if (options.out_dir) {
        dir = *options.out_dir;
    } else if (const char* env = std::getenv("THERMOFLUX_OUT"); env && *env) {
        dir = env;
    }
    RunOptions inner = options;
    inner.out_dir = dir;
    for (const RunConfig& run : figure_runs(figure, dir)) {
        const int code = run_scenario(run, inner, log);
        if (code != kOk) return code;
    }
    return kOk;
}

} // namespace thermoflux::cli
