// config.cpp — JSON run configuration: parsing, validation and canonical echo

#include "thermoflux/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace thermoflux::cli {

using nlohmann::json;

std::string_view to_string(SweepMode mode) noexcept
{
    return mode == SweepMode::FixLeftVaryRight ? "fix_left_vary_right" : "fix_right_vary_left";
}

void SweepSpec::validate() const
{
    if (!(fixed_T > 0.0) || !std::isfinite(fixed_T))
        throw ConfigError("sweep.fixed_T", "must be a positive finite temperature");
    if (T_values.empty()) throw ConfigError("sweep.values", "at least one temperature is required");
    for (std::size_t i = 0; i < T_values.size(); ++i) {
        if (!(T_values[i] > 0.0) || !std::isfinite(T_values[i]))
            throw ConfigError("sweep.values", "temperatures must be positive and finite");
        if (i > 0 && !(T_values[i] > T_values[i - 1]))
            throw ConfigError("sweep.values", "temperatures must be strictly increasing");
    }
}

ModelConfig SweepSpec::forward_config(double T) const
{
    return mode == SweepMode::FixLeftVaryRight ? config.with_temperatures(fixed_T, T)
                                               : config.with_temperatures(T, fixed_T);
}

ModelConfig SweepSpec::reverse_config(double T) const
{
    return forward_config(T).with_swapped_temperatures();
}

std::vector<double> temperature_grid(double start, double stop, int points, bool geometric)
{
    if (points < 1) throw ConfigError("sweep.range.points", "must be at least 1");
    if (!(start > 0.0) || !std::isfinite(start))
        throw ConfigError("sweep.range.start", "must be a positive finite temperature");
    if (!(stop > 0.0) || !std::isfinite(stop))
        throw ConfigError("sweep.range.stop", "must be a positive finite temperature");
    if (points == 1) return {start};
    if (!(stop > start)) throw ConfigError("sweep.range.stop", "must exceed sweep.range.start");

    std::vector<double> grid(static_cast<std::size_t>(points));
    const double n = points - 1;
    for (int i = 0; i < points; ++i) {
        const double t = i / n;
        grid[static_cast<std::size_t>(i)] =
            geometric ? start * std::pow(stop / start, t) : start + (stop - start) * t;
    }
    grid.front() = start;
    grid.back() = stop;
    return grid;
}

namespace {

void reject_unknown(const json& object, const std::string& prefix, std::initializer_list<const char*> allowed)
{
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : object.items()) {
        if (!keys.count(key)) throw ConfigError(prefix + key, "unknown key");
    }
}

const json& require_object(const json& parent, const std::string& key, const std::string& path)
{
    if (!parent.contains(key)) throw ConfigError(path, "missing section");
    const json& value = parent.at(key);
    if (!value.is_object()) throw ConfigError(path, "must be an object");
    return value;
}

double number_at(const json& parent, const std::string& key, const std::string& path)
{
    if (!parent.contains(key)) throw ConfigError(path, "missing value");
    const json& value = parent.at(key);
    if (!value.is_number()) throw ConfigError(path, "must be a number");
    const double x = value.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
    return x;
}

double number_or(const json& parent, const std::string& key, const std::string& path, double fallback)
{
    return parent.contains(key) ? number_at(parent, key, path) : fallback;
}

std::string string_at(const json& parent, const std::string& key, const std::string& path)
{
    const json& value = parent.at(key);
    if (!value.is_string()) throw ConfigError(path, "must be a string");
    return value.get<std::string>();
}

BathSpec parse_bath(const json& bath, const std::string& path, double default_T)
{
    reject_unknown(bath, path + ".", {"T", "gamma", "Gamma2"});
    BathSpec spec;
    spec.temperature = number_or(bath, "T", path + ".T", default_T);
    spec.gamma = number_or(bath, "gamma", path + ".gamma", 0.0);
    spec.Gamma_two = number_or(bath, "Gamma2", path + ".Gamma2", 0.0);
    if (!(spec.temperature > 0.0)) throw ConfigError(path + ".T", "must be positive");
    if (spec.gamma < 0.0) throw ConfigError(path + ".gamma", "must be non-negative");
    if (spec.Gamma_two < 0.0) throw ConfigError(path + ".Gamma2", "must be non-negative");
    return spec;
}

tls::TlsHoParams parse_tls_side(const json& side, const std::string& path, double omega_a)
{
    reject_unknown(side, path + ".", {"omega_o", "g", "kappa"});
    tls::TlsHoParams p;
    p.omega_a = omega_a;
    p.omega_o = number_or(side, "omega_o", path + ".omega_o", p.omega_o);
    p.g = number_or(side, "g", path + ".g", p.g);
    p.kappa = number_or(side, "kappa", path + ".kappa", p.kappa);
    if (!(p.omega_o > 0.0)) throw ConfigError(path + ".omega_o", "must be positive");
    if (!(p.kappa > 0.0)) throw ConfigError(path + ".kappa", "must be positive");
    return p;
}

std::vector<double> parse_values(const json& sweep)
{
    const bool has_values = sweep.contains("values");
    const bool has_range = sweep.contains("range");
    if (has_values == has_range)
        throw ConfigError("sweep.values", "exactly one of sweep.values or sweep.range is required");
    if (has_values) {
        const json& values = sweep.at("values");
        if (!values.is_array()) throw ConfigError("sweep.values", "must be an array of numbers");
        std::vector<double> out;
        for (const auto& v : values) {
            if (!v.is_number()) throw ConfigError("sweep.values", "must be an array of numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }
    const json& range = require_object(sweep, "range", "sweep.range");
    reject_unknown(range, "sweep.range.", {"start", "stop", "points", "spacing"});
    const double start = number_at(range, "start", "sweep.range.start");
    const double stop = number_at(range, "stop", "sweep.range.stop");
    const double points = number_at(range, "points", "sweep.range.points");
    if (points != std::floor(points) || points < 1 || points > 100000)
        throw ConfigError("sweep.range.points", "must be a positive integer");
    bool geometric = true;
    if (range.contains("spacing")) {
        const std::string spacing = string_at(range, "spacing", "sweep.range.spacing");
        if (spacing == "linear") geometric = false;
        else if (spacing != "geometric")
            throw ConfigError("sweep.range.spacing", "must be 'geometric' or 'linear'");
    }
    return temperature_grid(start, stop, static_cast<int>(points), geometric);
}

} // namespace

RunConfig parse_run_config(const json& document)
{
    if (!document.is_object()) throw ConfigError("<root>", "configuration must be a JSON object");

    // A metadata sidecar carries the run configuration under "config".
    if (document.contains("schema") && document.contains("config")) return parse_run_config(document.at("config"));

    reject_unknown(document, "", {"model", "bath", "sweep", "solver", "output", "tls"});
    RunConfig run;

    const json& model = require_object(document, "model", "model");
    reject_unknown(model, "model.", {"omega", "dim"});
    const double omega = number_at(model, "omega", "model.omega");
    if (!(omega > 0.0)) throw ConfigError("model.omega", "must be positive");
    const double dim = number_at(model, "dim", "model.dim");
    if (dim != std::floor(dim) || dim < FockSpace::kMinDim || dim > 200)
        throw ConfigError("model.dim", "must be an integer in [3, 200]");
    run.sweep.config.omega = omega;
    run.sweep.config.dim = static_cast<int>(dim);

    const json& sweep = require_object(document, "sweep", "sweep");
    reject_unknown(sweep, "sweep.", {"mode", "fixed_T", "values", "range"});
    if (!sweep.contains("mode")) throw ConfigError("sweep.mode", "missing value");
    const std::string mode = string_at(sweep, "mode", "sweep.mode");
    if (mode == "fix_left_vary_right") run.sweep.mode = SweepMode::FixLeftVaryRight;
    else if (mode == "fix_right_vary_left") run.sweep.mode = SweepMode::FixRightVaryLeft;
    else throw ConfigError("sweep.mode", "must be 'fix_left_vary_right' or 'fix_right_vary_left'");
    run.sweep.fixed_T = number_at(sweep, "fixed_T", "sweep.fixed_T");
    run.sweep.T_values = parse_values(sweep);
    run.sweep.validate();

    if (document.contains("tls")) {
        const json& t = require_object(document, "tls", "tls");
        reject_unknown(t, "tls.", {"filter", "left", "right"});
        TlsSetup setup;
        setup.left = parse_tls_side(require_object(t, "left", "tls.left"), "tls.left", omega);
        setup.right = parse_tls_side(require_object(t, "right", "tls.right"), "tls.right", omega);
        if (t.contains("filter")) {
            const auto filter = tls::parse_filter(string_at(t, "filter", "tls.filter"));
            if (!filter) throw ConfigError("tls.filter", "must be 'none', 'two_photon_only' or 'one_photon_only'");
            setup.filter = *filter;
        }
        if (document.contains("bath")) throw ConfigError("bath", "not allowed together with tls");
        run.tls = setup;
    } else {
        const json& bath = require_object(document, "bath", "bath");
        reject_unknown(bath, "bath.", {"left", "right"});
        run.sweep.config.left = parse_bath(require_object(bath, "left", "bath.left"), "bath.left", run.sweep.fixed_T);
        run.sweep.config.right =
            parse_bath(require_object(bath, "right", "bath.right"), "bath.right", run.sweep.fixed_T);
        if (!run.sweep.config.left.coupled() && !run.sweep.config.right.coupled())
            throw ConfigError("bath", "at least one bath must be coupled");
    }

    if (document.contains("solver")) {
        const json& solver = require_object(document, "solver", "solver");
        reject_unknown(solver, "solver.", {"sector", "tolerance"});
        if (solver.contains("sector")) {
            const std::string s = string_at(solver, "sector", "solver.sector");
            if (s != "auto") {
                const auto sector = parse_sector(s);
                if (!sector) throw ConfigError("solver.sector", "must be 'auto', 'full', 'even' or 'odd'");
                run.sweep.sector_policy = *sector;
            }
        }
        if (solver.contains("tolerance")) {
            run.tolerance = number_at(solver, "tolerance", "solver.tolerance");
            if (!(run.tolerance > 0.0)) throw ConfigError("solver.tolerance", "must be positive");
        }
    }

    if (document.contains("output")) {
        const json& output = require_object(document, "output", "output");
        reject_unknown(output, "output.", {"csv_path", "meta_path"});
        if (output.contains("csv_path")) run.csv_path = string_at(output, "csv_path", "output.csv_path");
        if (output.contains("meta_path")) run.meta_path = string_at(output, "meta_path", "output.meta_path");
        if (run.csv_path.empty()) throw ConfigError("output.csv_path", "must not be empty");
        if (run.meta_path.empty()) throw ConfigError("output.meta_path", "must not be empty");
    }
    return run;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open " + path.string());
    json document;
    try {
        document = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
    }
    return parse_run_config(document);
}

json to_json(const RunConfig& run)
{
    const ModelConfig& c = run.sweep.config;
    json out;
    out["model"] = {{"omega", c.omega}, {"dim", c.dim}};
    if (run.tls) {
        auto side = [](const tls::TlsHoParams& p) {
            return json{{"omega_o", p.omega_o}, {"g", p.g}, {"kappa", p.kappa}};
        };
        out["tls"] = {{"filter", std::string(tls::to_string(run.tls->filter))},
                      {"left", side(run.tls->left)},
                      {"right", side(run.tls->right)}};
    } else {
        auto bath = [](const BathSpec& b) {
            return json{{"T", b.temperature}, {"gamma", b.gamma}, {"Gamma2", b.Gamma_two}};
        };
        out["bath"] = {{"left", bath(c.left)}, {"right", bath(c.right)}};
    }
    out["sweep"] = {{"mode", std::string(to_string(run.sweep.mode))},
                    {"fixed_T", run.sweep.fixed_T},
                    {"values", run.sweep.T_values}};
    out["solver"] = {{"sector", run.sweep.sector_policy ? std::string(to_string(*run.sweep.sector_policy))
                                                        : std::string("auto")},
                     {"tolerance", run.tolerance}};
    out["output"] = {{"csv_path", run.csv_path}, {"meta_path", run.meta_path}};
    return out;
}

} // namespace thermoflux::cli
