// tls_reduction.hpp — Effective one- and two-photon dissipation generated by an
// auxiliary two-level system (TLS) coupled to the oscillator through
// g sigma_z (a + a^dag) and to a flat-spectrum thermal bath.

#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "thermoflux/fock.hpp"
#include "thermoflux/lindblad.hpp"
#include "thermoflux/transport.hpp"

namespace thermoflux::tls {

struct TlsHoParams {
    double omega_o{5.0}; // TLS splitting
    double omega_a{1.0}; // oscillator frequency
    double g{0.1};       // energy-field coupling
    double kappa{0.05};  // TLS-bath coupling
    double T{1.0};       // TLS bath temperature

    static constexpr double kAlphaWarn = 0.3;

    double alpha() const noexcept { return g / omega_a; }
    // The operator expansion drops O(alpha^3) corrections.
    bool alpha_warning() const noexcept;
    void validate() const;
};

// G(w) = kappa (n(w) + 1) for w > 0, G(-w) = kappa n(w). Throws ZeroFrequency.
double bath_response(double omega_arg, double kappa, double temperature);

// Thermal <sigma_z> of the bare TLS: -1/(2 n(omega_o) + 1).
double tls_polarization(const TlsHoParams& params);

struct TlsPopulations {
    double excited{0.0};
    double ground{1.0};
};

TlsPopulations tls_populations(const TlsHoParams& params);

struct EffectiveRates {
    double gamma_minus{0.0}; // D[a]
    double gamma_plus{0.0};  // D[a^dag]
    double Gamma_minus{0.0}; // D[a^2]
    double Gamma_plus{0.0};  // D[a^dag^2]
    double gamma_d{0.0};     // D[a^dag a]
};

// Throws ResonantFrequencies, NegativeRate.
EffectiveRates effective_rates(const TlsHoParams& params);

enum class ChannelFilter { None, KeepTwoPhotonOnly, KeepOnePhotonOnly };

std::string_view to_string(ChannelFilter filter) noexcept;
std::optional<ChannelFilter> parse_filter(std::string_view text) noexcept;

EffectiveRates apply_filter(EffectiveRates rates, ChannelFilter filter) noexcept;
EffectiveRates filtered_rates(const TlsHoParams& params, ChannelFilter filter);

struct ReducedOptions {
    bool include_dephasing{true};
    // Adds -i[omega_a a^dag a, .]; zero skips the Hamiltonian part.
    double omega_a{0.0};
};

// gamma_- D[a] + gamma_+ D[a^dag] + Gamma_- D[a^2] + Gamma_+ D[a^dag^2] + gamma_d D[a^dag a]
Superoperator reduced_ho_liouvillian(const EffectiveRates& rates, const FockSpace& space,
                                     const ReducedOptions& options = {});
Superoperator reduced_ho_liouvillian(const TlsHoParams& params, const FockSpace& space,
                                     bool include_dephasing = true);

struct CompositeOptions {
    // Literal alpha^2 weight on the sideband bracket G(w_{+q}) for q = 2.
    bool strict_sideband_weights{false};
    int max_ho_dim{30};
    bool include_hamiltonian{true};
};

// Joint TLS (x) HO generator; basis index = s * D + n with s = 0 ground, 1 excited.
// Throws DimensionTooLarge when the oscillator cutoff exceeds the cap.
Superoperator composite_liouvillian(const TlsHoParams& params, const FockSpace& space,
                                    const CompositeOptions& options = {});

// Reduced oscillator state Tr_TLS rho for the ordering above.
Eigen::MatrixXcd trace_out_tls(const Eigen::MatrixXcd& joint, int ho_dim);

struct EngineeredSide {
    EffectiveRates rates;
    std::optional<double> n_eff; // gamma_+/(gamma_- - gamma_+)
    std::optional<double> m_eff; // Gamma_+/(Gamma_- - Gamma_+)
    BathSpec bath;               // gamma = gamma_- - gamma_+, Gamma = Gamma_- - Gamma_+
};

struct EngineeredConfig {
    EngineeredSide left;
    EngineeredSide right;
    ModelConfig config;
};

// Each TLS side becomes one bath of the transport model. Both sides must
// share omega_a. Throws InvertedRates when an emission rate does not exceed
// the matching absorption rate.
EngineeredConfig two_bath_effective_config(const TlsHoParams& left, const TlsHoParams& right,
                                           const FockSpace& space,
                                           ChannelFilter filter = ChannelFilter::None);

// Generator assembled from the raw effective rates (no thermal re-parametrisation).
Superoperator engineered_liouvillian(const EngineeredConfig& engineered, bool include_dephasing);

// Forward/reverse transport with the TLS temperatures exchanged; rates are
// recomputed for each temperature assignment.
RectificationResult engineered_forward_reverse(const TlsHoParams& left, const TlsHoParams& right,
                                               const FockSpace& space,
                                               ChannelFilter filter = ChannelFilter::None,
                                               const SolveOptions& options = {});

} // namespace thermoflux::tls
