// config.hpp — Run configuration files for the sweep CLI

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "thermoflux/errors.hpp"
#include "thermoflux/fock.hpp"
#include "thermoflux/steady.hpp"
#include "thermoflux/tls_reduction.hpp"

namespace thermoflux::cli {

class ConfigError : public InvalidArgument {
public:
    ConfigError(std::string key, const std::string& message)
        : InvalidArgument(key + ": " + message), key_(std::move(key))
    {
    }

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

enum class SweepMode { FixLeftVaryRight, FixRightVaryLeft };

std::string_view to_string(SweepMode mode) noexcept;

struct SweepSpec {
    SweepMode mode{SweepMode::FixLeftVaryRight};
    double fixed_T{1.0};
    std::vector<double> T_values;
    ModelConfig config;
    std::optional<Sector> sector_policy; // empty = auto

    void validate() const;
    // Forward point: the fixed bath at fixed_T, the other at T.
    ModelConfig forward_config(double T) const;
    ModelConfig reverse_config(double T) const;
};

struct TlsSetup {
    tls::TlsHoParams left;  // T is set per sweep point
    tls::TlsHoParams right;
    tls::ChannelFilter filter{tls::ChannelFilter::None};
};

struct RunConfig {
    SweepSpec sweep;
    double tolerance{1e-10}; // relative steady-state residual
    std::optional<TlsSetup> tls;
    std::string csv_path{"sweep.csv"};
    std::string meta_path{"sweep.meta.json"};
};

// Geometric (or linear) grid including both end points.
std::vector<double> temperature_grid(double start, double stop, int points, bool geometric = true);

// Accepts a config file or a metadata sidecar (its echoed "config" object).
RunConfig parse_run_config(const nlohmann::json& document);
RunConfig load_run_config(const std::filesystem::path& path);

// Canonical echo: parse_run_config(to_json(c)) reproduces c exactly.
nlohmann::json to_json(const RunConfig& config);

} // namespace thermoflux::cli
