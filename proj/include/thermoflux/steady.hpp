// steady.hpp — Null-space steady states and the population rate-equation oracle

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "thermoflux/fock.hpp"
#include "thermoflux/lindblad.hpp"

namespace thermoflux {

// Fock-parity sectors. Parity refers to the basis index of the operator
// space the superoperator acts on.
enum class Sector { Full, EvenParity, OddParity };

std::string_view to_string(Sector sector) noexcept;
std::optional<Sector> parse_sector(std::string_view text) noexcept;

// EvenParity iff both single-photon rates are exactly zero.
Sector default_sector(const ModelConfig& config) noexcept;

struct SteadyOptions {
    // Singular values below threshold * sigma_max count toward the nullity.
    double nullity_threshold{1e-10};
    // Accept if ||L vec(rho)||_2 <= residual_tolerance * ||L||_F.
    double residual_tolerance{1e-10};
};

struct SteadyStateResult {
    DensityMatrix rho;
    double residual{0.0};
    int nullity{0};
    Sector sector{Sector::Full};
};

// Numerical nullity of L restricted to the chosen sector.
int nullity(const Superoperator& generator, Sector sector = Sector::Full,
            double threshold = SteadyOptions{}.nullity_threshold);

std::vector<double> singular_values(const Superoperator& generator, Sector sector = Sector::Full);

// Solves L vec(rho) = 0 with Tr rho = 1 by replacing the last population row
// with the trace functional. Throws DegenerateSteadyState, NonConvergent.
SteadyStateResult solve_steady(const Superoperator& generator, Sector sector,
                               const SteadyOptions& options = {});

class PopulationVector {
public:
    static constexpr double kSumTol = 1e-12;
    static constexpr double kNegativeTol = 1e-14;

    explicit PopulationVector(Eigen::VectorXd p);

    int dim() const noexcept { return static_cast<int>(p_.size()); }
    const Eigen::VectorXd& values() const noexcept { return p_; }
    double operator[](Eigen::Index n) const { return p_(n); }

private:
    Eigen::VectorXd p_;
};

// Classical master-equation generator W on Fock populations, dp/dt = W p,
// assembled directly from the one- and two-photon rates.
Eigen::MatrixXd rate_generator(const ModelConfig& config);

PopulationVector solve_rate_equation(const ModelConfig& config, Sector sector,
                                     const SteadyOptions& options = {});

struct ConvergenceOptions {
    int max_dim{400};
    int probe_step{10};
};

// Smallest D such that <n> and both heat currents move by less than
// `tolerance` when D -> D + probe_step. Uses the rate-equation solver.
int convergence_check(const ModelConfig& config, double tolerance,
                      const ConvergenceOptions& options = {});

} // namespace thermoflux
