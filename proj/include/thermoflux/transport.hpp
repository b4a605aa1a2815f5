// transport.hpp — Heat currents, energy balance and the rectification coefficient

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "thermoflux/fock.hpp"
#include "thermoflux/lindblad.hpp"
#include "thermoflux/steady.hpp"

namespace thermoflux {

// Polynomial population moments sum_n p_n f(n).
struct Moments {
    double mean_n{0.0};
    double n_n_minus_1{0.0}; // <n(n-1)>
    double n1_n2{0.0};       // <(n+1)(n+2)>
};

Moments population_moments(const Eigen::VectorXd& p);

struct CurrentTerms {
    double current{0.0};
    double gross{0.0}; // sum of |up| and |down| energy flows, sets the roundoff scale
};

// Moment route: omega gamma [n <a a^dag> - (n+1) <a^dag a>]
//             + 2 omega Gamma [m <a^2 a^dag^2> - (m+1) <a^dag^2 a^2>],
// with the truncated-space factors (the raising terms vanish at the top levels).
CurrentTerms population_heat_current(const Eigen::VectorXd& p, const ModelConfig& config,
                                     Side side);

// Tr[H_S L_side rho], positive into the oscillator. Evaluated through the
// bath superoperator and cross-checked against the moment route.
// Throws CrossCheckFailed.
double heat_current(const DensityMatrix& rho, const ModelConfig& config, Side side);

struct TransportResult {
    double J_left{0.0};
    double J_right{0.0};
    double J_net{0.0}; // = J_right
    double balance_residual{0.0};
    double gross_flow{0.0};
    Moments moments{};

    static constexpr double kBalanceRelTol = 1e-9;
    // |J_L + J_R| <= 1e-9 max(|J_L|, |J_R|), or below the roundoff floor.
    bool balanced() const noexcept;
    // Currents below this are indistinguishable from zero.
    double roundoff_floor() const noexcept;
};

TransportResult transport(const DensityMatrix& rho, const ModelConfig& config);

struct Rectification {
    double value{0.0};
    bool no_transport{false}; // both currents zero, value defined as 0
};

// |J_f + J_r| / max(|J_f|, |J_r|)
Rectification rectification(double J_forward, double J_reverse) noexcept;

struct SolveOptions {
    std::optional<Sector> sector; // default_sector(config) when empty
    SteadyOptions steady{};
};

struct OperatingPoint {
    SteadyStateResult steady;
    TransportResult transport;
};

OperatingPoint solve_operating_point(const ModelConfig& config, const SolveOptions& options = {});

struct RectificationResult {
    double J_forward{0.0}; // J_R with T_R > T_L
    double J_reverse{0.0}; // J_R with the temperatures exchanged
    double R{0.0};
    bool no_transport{false};
    OperatingPoint forward;
    OperatingPoint reverse;
};

// Solves as given and with T_L <-> T_R (couplings stay on their side).
// Requires T_L != T_R.
RectificationResult forward_reverse(const ModelConfig& config, const SolveOptions& options = {});

} // namespace thermoflux
