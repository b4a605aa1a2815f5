// sweep.cpp — Temperature sweeps over forward/reverse operating points

#include "thermoflux/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "thermoflux/analytic.hpp"
#include "thermoflux/lindblad.hpp"
#include "thermoflux/transport.hpp"

namespace thermoflux::cli {

using nlohmann::json;

std::string_view to_string(Pipeline pipeline) noexcept
{
    switch (pipeline) {
    case Pipeline::Linear: return "linear";
    case Pipeline::TwoPhoton: return "two_photon";
    case Pipeline::Asymmetric: return "asymmetric";
    case Pipeline::Full: return "full";
    case Pipeline::TlsReduction: return "tls_reduction";
    }
    return "full";
}

Pipeline classify(const RunConfig& config) noexcept
{
    if (config.tls) return Pipeline::TlsReduction;
    const ModelConfig& c = config.sweep.config;
    const bool two_left = c.left.Gamma_two > 0.0;
    const bool two_right = c.right.Gamma_two > 0.0;
    if (!two_left && !two_right) return Pipeline::Linear;
    if (c.left.gamma == 0.0 && c.right.gamma == 0.0) return Pipeline::TwoPhoton;
    if (two_left != two_right) return Pipeline::Asymmetric;
    return Pipeline::Full;
}

namespace {

struct PointSolution {
    double J_right{0.0};
    double mean_n{0.0};
    double rel_residual{0.0};
    double balance{0.0};
    double noise{0.0};
};

// Both the generator and the model used for the current evaluation.
struct PointModel {
    ModelConfig config;
    std::optional<tls::EngineeredConfig> engineered;
};

PointModel point_model(const RunConfig& run, const ModelConfig& config)
{
    PointModel model{config, std::nullopt};
    if (run.tls) {
        tls::TlsHoParams left = run.tls->left;
        tls::TlsHoParams right = run.tls->right;
        left.T = config.left.temperature;
        right.T = config.right.temperature;
        model.engineered = tls::two_bath_effective_config(left, right, config.space(), run.tls->filter);
        model.config = model.engineered->config;
    }
    return model;
}

PointSolution solve_point(const RunConfig& run, const PointModel& model, Sector sector)
{
    SteadyOptions steady_options;
    steady_options.residual_tolerance = run.tolerance;

    std::optional<SteadyStateResult> steady;
    double scale = 0.0;
    {
        const Superoperator generator = model.engineered
                                            ? tls::engineered_liouvillian(*model.engineered, true)
                                            : liouvillian(model.config);
        scale = generator.matrix().norm();
        steady = solve_steady(generator, sector, steady_options);
    }
    const TransportResult t = transport(steady->rho, model.config);
    if (!t.balanced()) {
        throw CrossCheckFailed("energy balance violated: |J_L + J_R| = " + std::to_string(t.balance_residual));
    }
    return {t.J_right, t.moments.mean_n, scale > 0.0 ? steady->residual / scale : steady->residual,
            t.balance_residual, t.roundoff_floor()};
}

std::optional<double> analytic_current(Pipeline pipeline, const ModelConfig& c)
{
    try {
        switch (pipeline) {
        case Pipeline::Linear: return analytic::linear_current(c);
        case Pipeline::TwoPhoton: return analytic::two_photon_current(c);
        case Pipeline::Asymmetric:
            if (c.right.Gamma_two == 0.0 && c.left.Gamma_two > 0.0) return analytic::semiclassical_current(c);
            return std::nullopt;
        default: return std::nullopt;
        }
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

Sector point_sector(const RunConfig& run, const ModelConfig& model)
{
    return run.sweep.sector_policy ? *run.sweep.sector_policy : default_sector(model);
}

SweepRow compute_row(const RunConfig& run, Pipeline pipeline, double T)
{
    const PointModel forward = point_model(run, run.sweep.forward_config(T));
    const PointModel reverse = point_model(run, run.sweep.reverse_config(T));
    const PointSolution f = solve_point(run, forward, point_sector(run, forward.config));
    const PointSolution r = solve_point(run, reverse, point_sector(run, reverse.config));

    SweepRow row;
    row.T_varied = T;
    row.J_forward = f.J_right;
    row.J_reverse = r.J_right;
    // Equal temperatures leave only roundoff; report that as no transport.
    const bool silent = std::abs(f.J_right) <= f.noise && std::abs(r.J_right) <= r.noise;
    const Rectification rect = silent ? rectification(0.0, 0.0) : rectification(f.J_right, r.J_right);
    row.R = rect.value;
    row.no_transport = rect.no_transport;
    row.mean_n = f.mean_n;
    row.residual = std::max(f.rel_residual, r.rel_residual);
    row.balance = std::max(f.balance, r.balance);
    if (!(row.residual <= run.tolerance)) {
        throw NonConvergent("residual " + std::to_string(row.residual) + " above tolerance at T = "
                            + std::to_string(T));
    }

    row.analytic_J = analytic_current(pipeline, forward.config);
    const auto reverse_J = analytic_current(pipeline, reverse.config);
    if (row.analytic_J && reverse_J) row.analytic_R = rectification(*row.analytic_J, *reverse_J).value;
    return row;
}

// Recommended cutoff at the hottest corners of the sweep; advisory only.
void convergence_advice(const RunConfig& run, SweepResult& result)
{
    const SweepSpec& s = run.sweep;
    const double T_hot = std::max(s.fixed_T, s.T_values.back());
    std::vector<ModelConfig> probes = {s.forward_config(T_hot), s.reverse_config(T_hot)};
    if (s.fixed_T > s.T_values.back()) {
        probes = {s.forward_config(s.T_values.back()), s.reverse_config(s.T_values.back())};
    }
    int recommended = FockSpace::kMinDim;
    try {
        for (const ModelConfig& probe : probes) {
            const ModelConfig model = point_model(run, probe).config;
            recommended = std::max(recommended, convergence_check(model, 1e-8));
        }
    } catch (const CutoffExceeded& e) {
        result.warnings.push_back(std::string("convergence check failed: ") + e.what());
        return;
    } catch (const Error& e) {
        result.warnings.push_back(std::string("convergence check skipped: ") + e.what());
        return;
    }
    result.recommended_dim = recommended;
    if (s.config.dim < recommended) {
        result.warnings.push_back("dim = " + std::to_string(s.config.dim)
                                  + " is below the recommended cutoff " + std::to_string(recommended)
                                  + " for this temperature range");
    }
}

std::string format_double(double x)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

} // namespace

SweepResult run_sweep(const RunConfig& config, int workers)
{
    config.sweep.validate();
    SweepResult result;
    result.pipeline = classify(config);
    result.sector = point_sector(config, point_model(config, config.sweep.forward_config(config.sweep.T_values.front())).config);
    if (config.tls) {
        for (const auto* p : {&config.tls->left, &config.tls->right}) {
            if (p->alpha_warning()) {
                result.warnings.push_back("|alpha| = " + format_double(std::abs(p->alpha()))
                                          + " exceeds 0.3; the O(alpha^3) expansion may be inaccurate");
            }
        }
    }

    const std::size_t n = config.sweep.T_values.size();
    result.rows.resize(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                result.rows[i] = compute_row(config, result.pipeline, config.sweep.T_values[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int count = std::clamp(workers, 1, static_cast<int>(n));
    if (count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < count; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    // Report the lowest-temperature failure regardless of completion order.
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    convergence_advice(config, result);
    return result;
}

void write_csv(std::ostream& out, const SweepResult& result)
{
    out << kCsvSchema << '\n';
    out << "T_varied,J_forward,J_reverse,R,mean_n,residual,analytic_J,analytic_R\n";
    for (const SweepRow& row : result.rows) {
        out << format_double(row.T_varied) << ',' << format_double(row.J_forward) << ','
            << format_double(row.J_reverse) << ',' << format_double(row.R) << ','
            << format_double(row.mean_n) << ',' << format_double(row.residual) << ','
            << (row.analytic_J ? format_double(*row.analytic_J) : "") << ','
            << (row.analytic_R ? format_double(*row.analytic_R) : "") << '\n';
    }
}

json metadata(const RunConfig& config, const SweepResult& result, double wall_seconds)
{
    double max_residual = 0.0, max_balance = 0.0;
    int no_transport = 0;
    for (const SweepRow& row : result.rows) {
        max_residual = std::max(max_residual, row.residual);
        max_balance = std::max(max_balance, row.balance);
        no_transport += row.no_transport ? 1 : 0;
    }
    json diagnostics = {{"pipeline", std::string(to_string(result.pipeline))},
                        {"sector", std::string(to_string(result.sector))},
                        {"points", result.rows.size()},
                        {"max_relative_residual", max_residual},
                        {"max_balance_residual", max_balance},
                        {"no_transport_points", no_transport},
                        {"warnings", result.warnings}};
    diagnostics["recommended_dim"] = result.recommended_dim ? json(*result.recommended_dim) : json(nullptr);
    return {{"schema", "thermoflux.meta/1"},
            {"code_version", std::string(kCodeVersion)},
            {"config", to_json(config)},
            {"diagnostics", diagnostics},
            {"wall_time_seconds", wall_seconds}};
}

namespace {

std::filesystem::path output_path(const std::string& configured, const RunOptions& options)
{
    const std::filesystem::path p(configured);
    if (options.out_dir) return *options.out_dir / p.filename();
    if (p.is_relative()) {
        if (const char* env = std::getenv("THERMOFLUX_OUT"); env && *env) return std::filesystem::path(env) / p;
    }
    return p;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace

int run_scenario(RunConfig config, const RunOptions& options, std::ostream& log)
{
    try {
        if (options.tolerance) {
            if (!(*options.tolerance > 0.0)) throw ConfigError("--tolerance", "must be positive");
            config.tolerance = *options.tolerance;
        }
        config.sweep.validate();
        const auto start = std::chrono::steady_clock::now();
        const SweepResult result = run_sweep(config, options.workers);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        for (const auto& w : result.warnings) log << "warning: " << w << '\n';

        std::ostringstream csv;
        write_csv(csv, result);
        json meta = metadata(config, result, wall);
        const auto csv_path = output_path(config.csv_path, options);
        const auto meta_path = output_path(config.meta_path, options);
        meta["outputs"] = {{"csv", csv_path.string()}, {"meta", meta_path.string()}};
        write_file(csv_path, csv.str());
        write_file(meta_path, meta.dump(2) + "\n");
        log << "wrote " << csv_path.string() << " (" << result.rows.size() << " rows, "
            << to_string(result.pipeline) << ")\n";
        return kOk;
    } catch (const InvalidArgument& e) {
        log << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        log << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const CrossCheckFailed& e) {
        log << "cross-check failure: " << e.what() << '\n';
        return kCrossCheckFailure;
    } catch (const SolverError& e) {
        log << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const std::exception& e) {
        log << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    }
}

int run_scenario_file(const std::filesystem::path& path, const RunOptions& options, std::ostream& log)
{
    RunConfig config;
    try {
        config = load_run_config(path);
    } catch (const InvalidArgument& e) {
        log << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    return run_scenario(std::move(config), options, log);
}

} // namespace thermoflux::cli
