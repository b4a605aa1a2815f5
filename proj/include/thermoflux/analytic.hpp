// analytic.hpp — Closed-form heat currents and occupations used as oracles

#pragma once

#include "thermoflux/fock.hpp"

namespace thermoflux::analytic {

// Steady <n> without two-photon channels: (gL nL + gR nR)/(gL + gR).
double bare_occupation(const ModelConfig& config);

// omega gL gR/(gL + gR) (nR - nL). Throws NonLinearConfig if any Gamma != 0.
double linear_current(const ModelConfig& config);
double linear_occupation(const ModelConfig& config);

// Population ratio q_{k+1}/q_k of the even sector in the pure two-photon case.
double two_photon_ratio(const ModelConfig& config);

struct TwoPhotonMoments {
    double r{0.0};
    double mean_n{0.0};
    double n2{0.0};
    double n_n_minus_1{0.0};
    double n1_n2{0.0};
};

TwoPhotonMoments two_photon_moments(double r);

// 4 omega GL GR/(GL+GR)^2 [GL(4mL+1) + GR(4mR+1)] (mR - mL)
double two_photon_current(const ModelConfig& config);

struct SemiClassicalCoefficients {
    double A{0.0};
    double B{0.0};
    double C{0.0};
    double root{0.0};
};

// Factorised moment closure for Gamma_R = 0: A n^2 + B n + C = 0 with
// A = -2 GL, B = gL + gR + 8 GL mL, C = -(gL nL + gR nR + 4 GL mL).
SemiClassicalCoefficients semiclassical_occupation(const ModelConfig& config);
double semiclassical_current(const ModelConfig& config);

// First order in Gamma_L of semiclassical_current.
double weak_coupling_current(const ModelConfig& config);

} // namespace thermoflux::analytic
