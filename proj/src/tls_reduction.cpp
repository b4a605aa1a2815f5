// tls_reduction.cpp — Polaron-frame TLS-HO generators and the effective
// oscillator rates obtained by tracing out the TLS

#include "thermoflux/tls_reduction.hpp"

#include <cmath>
#include <string>

#include "thermoflux/errors.hpp"

namespace thermoflux::tls {

bool TlsHoParams::alpha_warning() const noexcept
{
    return std::abs(alpha()) > kAlphaWarn;
}

void TlsHoParams::validate() const
{
    if (!(omega_o > 0.0)) throw InvalidArgument("tls.omega_o must be positive");
    if (!(omega_a > 0.0)) throw InvalidArgument("tls.omega_a must be positive");
    if (!(kappa > 0.0)) throw InvalidArgument("tls.kappa must be positive");
    if (!(T > 0.0)) throw InvalidArgument("tls.T must be positive");
    if (!std::isfinite(g)) throw InvalidArgument("tls.g must be finite");
}

double bath_response(double omega_arg, double kappa, double temperature)
{
    if (omega_arg == 0.0) throw ZeroFrequency("bath response evaluated at zero frequency");
    const double n = thermal_occupation(std::abs(omega_arg), temperature);
    return omega_arg > 0.0 ? kappa * (n + 1.0) : kappa * n;
}

double tls_polarization(const TlsHoParams& params)
{
    params.validate();
    return -1.0 / (2.0 * thermal_occupation(params.omega_o, params.T) + 1.0);
}

TlsPopulations tls_populations(const TlsHoParams& params)
{
    params.validate();
    // Same as (1 -/+ <sz>)/2, but without cancellation when p_e is tiny.
    const double n = thermal_occupation(params.omega_o, params.T);
    return {n / (2.0 * n + 1.0), (n + 1.0) / (2.0 * n + 1.0)};
}

namespace {

void check_resonances(const TlsHoParams& p)
{
    if (p.omega_o - p.omega_a == 0.0 || p.omega_o - 2.0 * p.omega_a == 0.0) {
        throw ResonantFrequencies("omega_o must differ from omega_a and 2 omega_a");
    }
}

double checked_rate(double value, const char* name)
{
    if (value < -1e-12) {
        throw NegativeRate(std::string("effective rate ") + name + " = " + std::to_string(value)
                           + " is negative");
    }
    return std::max(value, 0.0);
}

} // namespace

EffectiveRates effective_rates(const TlsHoParams& params)
{
    params.validate();
    check_resonances(params);
    const double a = params.alpha();
    const double a2 = a * a;
    const double a3 = a2 * a;
    const double wo = params.omega_o, wa = params.omega_a;
    const auto G = [&](double w) { return bath_response(w, params.kappa, params.T); };
    // Tracing D[sigma_- X] leaves the excited population, D[sigma_+ X] the ground one.
    const TlsPopulations pop = tls_populations(params);
    const double pe = pop.excited, pg = pop.ground;

    EffectiveRates r;
    r.gamma_minus = checked_rate(a2 * (G(wo + wa) * pe + G(-(wo - wa)) * pg), "gamma_-");
    r.gamma_plus = checked_rate(a2 * (G(wo - wa) * pe + G(-(wo + wa)) * pg), "gamma_+");
    r.Gamma_minus = checked_rate(a3 * (G(wo + 2.0 * wa) * pe + G(-(wo - 2.0 * wa)) * pg), "Gamma_-");
    r.Gamma_plus = checked_rate(a3 * (G(wo - 2.0 * wa) * pe + G(-(wo + 2.0 * wa)) * pg), "Gamma_+");
    r.gamma_d = checked_rate(2.0 * a3 * (G(wo) * pe + G(-wo) * pg), "gamma_d");
    return r;
}

std::string_view to_string(ChannelFilter filter) noexcept
{
    switch (filter) {
    case ChannelFilter::None: return "none";
    case ChannelFilter::KeepTwoPhotonOnly: return "two_photon_only";
    case ChannelFilter::KeepOnePhotonOnly: return "one_photon_only";
    }
    return "none";
}

std::optional<ChannelFilter> parse_filter(std::string_view text) noexcept
{
    if (text == "none") return ChannelFilter::None;
    if (text == "two_photon_only") return ChannelFilter::KeepTwoPhotonOnly;
    if (text == "one_photon_only") return ChannelFilter::KeepOnePhotonOnly;
    return std::nullopt;
}

EffectiveRates apply_filter(EffectiveRates rates, ChannelFilter filter) noexcept
{
    switch (filter) {
    case ChannelFilter::None: break;
    case ChannelFilter::KeepTwoPhotonOnly:
        rates.gamma_minus = rates.gamma_plus = rates.gamma_d = 0.0;
        break;
    case ChannelFilter::KeepOnePhotonOnly:
        rates.Gamma_minus = rates.Gamma_plus = 0.0;
        break;
    }
    return rates;
}

EffectiveRates filtered_rates(const TlsHoParams& params, ChannelFilter filter)
{
    return apply_filter(effective_rates(params), filter);
}

namespace {

void add_reduced_terms(Superoperator& target, const EffectiveRates& r, const FockSpace& space, bool dephasing)
{
    const OperatorMatrix a = annihilation(space);
    const OperatorMatrix ad = a.adjoint();
    add_dissipator(target, a, r.gamma_minus);
    add_dissipator(target, ad, r.gamma_plus);
    add_dissipator(target, a * a, r.Gamma_minus);
    add_dissipator(target, ad * ad, r.Gamma_plus);
    if (dephasing) add_dissipator(target, number_operator(space), r.gamma_d);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& tls_op, const Eigen::MatrixXcd& ho_op)
{
    const Eigen::Index d = ho_op.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    for (Eigen::Index s = 0; s < 2; ++s) {
        for (Eigen::Index t = 0; t < 2; ++t) {
            if (tls_op(s, t) != 0.0) out.block(s * d, t * d, d, d) = tls_op(s, t) * ho_op;
        }
    }
    return out;
}

} // namespace

Superoperator reduced_ho_liouvillian(const EffectiveRates& rates, const FockSpace& space,
                                     const ReducedOptions& options)
{
    Superoperator out(space.dim());
    if (options.omega_a != 0.0) add_commutator(out, options.omega_a * number_operator(space));
    add_reduced_terms(out, rates, space, options.include_dephasing);
    return out;
}

Superoperator reduced_ho_liouvillian(const TlsHoParams& params, const FockSpace& space, bool include_dephasing)
{
    return reduced_ho_liouvillian(effective_rates(params), space,
                                  ReducedOptions{include_dephasing, params.omega_a});
}

Superoperator composite_liouvillian(const TlsHoParams& params, const FockSpace& space,
                                    const CompositeOptions& options)
{
    params.validate();
    check_resonances(params);
    const int d = space.dim();
    if (d > options.max_ho_dim) {
        throw DimensionTooLarge("composite TLS-HO space needs dim <= " + std::to_string(options.max_ho_dim)
                                + ", got " + std::to_string(d));
    }

    const double alpha = params.alpha();
    const double wo = params.omega_o, wa = params.omega_a;
    const auto G = [&](double w) { return bath_response(w, params.kappa, params.T); };

    Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(2, 2); // |g><e|
    lower(0, 1) = 1.0;
    const Eigen::MatrixXcd raise = lower.adjoint();
    Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(2, 2);
    sz(0, 0) = -1.0;
    sz(1, 1) = 1.0;

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const OperatorMatrix a = annihilation(space);
    const OperatorMatrix ad = a.adjoint();
    const OperatorMatrix n = number_operator(space);

    Superoperator out(2 * d);
    if (options.include_hamiltonian) {
        add_commutator(out, kron(0.5 * wo * sz, id) + kron(Eigen::MatrixXcd::Identity(2, 2), wa * n));
    }

    const double a3 = alpha * alpha * alpha;
    add_dissipator(out, kron(lower, id), G(wo));
    add_dissipator(out, kron(lower, n), a3 * G(wo));
    add_dissipator(out, kron(raise, id), G(-wo));
    add_dissipator(out, kron(raise, n), a3 * G(-wo));

    OperatorMatrix aq = id, adq = id;
    for (int q = 1; q <= 2; ++q) {
        aq = aq * a;
        adq = adq * ad;
        const double weight = std::pow(alpha, q + 1);
        const double sideband_weight = options.strict_sideband_weights ? alpha * alpha : weight;
        const double w_minus = wo - q * wa;
        const double w_plus = wo + q * wa;
        add_dissipator(out, kron(lower, adq), weight * G(w_minus));
        add_dissipator(out, kron(raise, aq), weight * G(-w_minus));
        add_dissipator(out, kron(lower, aq), sideband_weight * G(w_plus));
        add_dissipator(out, kron(raise, adq), sideband_weight * G(-w_plus));
    }
    return out;
}

Eigen::MatrixXcd trace_out_tls(const Eigen::MatrixXcd& joint, int ho_dim)
{
    if (joint.rows() != 2 * ho_dim || joint.cols() != 2 * ho_dim) {
        throw InvalidArgument("joint operator must be 2D x 2D");
    }
    return joint.topLeftCorner(ho_dim, ho_dim) + joint.bottomRightCorner(ho_dim, ho_dim);
}

namespace {

EngineeredSide engineer_side(const TlsHoParams& params, ChannelFilter filter, const char* name)
{
    EngineeredSide side;
    side.rates = filtered_rates(params, filter);
    const EffectiveRates& r = side.rates;

    const auto net = [&](double down, double up, const char* what) {
        if (down == 0.0 && up == 0.0) return 0.0;
        if (!(down > up)) {
            throw InvertedRates(std::string(name) + " side: " + what
                                + " absorption rate is not below the emission rate");
        }
        return down - up;
    };
    const double gamma = net(r.gamma_minus, r.gamma_plus, "single-photon");
    const double Gamma = net(r.Gamma_minus, r.Gamma_plus, "two-photon");
    if (gamma > 0.0) side.n_eff = r.gamma_plus / gamma;
    if (Gamma > 0.0) side.m_eff = r.Gamma_plus / Gamma;
    side.bath = BathSpec{params.T, gamma, Gamma};
    return side;
}

} // namespace

EngineeredConfig two_bath_effective_config(const TlsHoParams& left, const TlsHoParams& right,
                                           const FockSpace& space, ChannelFilter filter)
{
    if (left.omega_a != right.omega_a) {
        throw InvalidArgument("both TLS sides must drive the same oscillator frequency omega_a");
    }
    EngineeredConfig out;
    out.left = engineer_side(left, filter, "left");
    out.right = engineer_side(right, filter, "right");
    out.config = ModelConfig{left.omega_a, space.dim(), out.left.bath, out.right.bath};
    return out;
}

Superoperator engineered_liouvillian(const EngineeredConfig& engineered, bool include_dephasing)
{
    const FockSpace space = engineered.config.space();
    Superoperator out(space.dim());
    add_commutator(out, engineered.config.omega * number_operator(space));
    add_reduced_terms(out, engineered.left.rates, space, include_dephasing);
    add_reduced_terms(out, engineered.right.rates, space, include_dephasing);
    return out;
}

namespace {

OperatingPoint engineered_point(const TlsHoParams& left, const TlsHoParams& right, const FockSpace& space,
                                ChannelFilter filter, const SolveOptions& options)
{
    const EngineeredConfig eng = two_bath_effective_config(left, right, space, filter);
    const Sector sector = options.sector.value_or(default_sector(eng.config));
    SteadyStateResult steady = [&] {
        const Superoperator L = engineered_liouvillian(eng, true);
        return solve_steady(L, sector, options.steady);
    }();
    TransportResult tr = transport(steady.rho, eng.config);
    return OperatingPoint{std::move(steady), tr};
}

} // namespace

RectificationResult engineered_forward_reverse(const TlsHoParams& left, const TlsHoParams& right,
                                               const FockSpace& space, ChannelFilter filter,
                                               const SolveOptions& options)
{
    if (left.T == right.T) throw InvalidArgument("forward/reverse transport needs T_L != T_R");
    TlsHoParams fl = left, fr = right;
    if (fr.T < fl.T) std::swap(fl.T, fr.T);
    TlsHoParams rl = fl, rr = fr;
    std::swap(rl.T, rr.T);

    OperatingPoint f = engineered_point(fl, fr, space, filter, options);
    OperatingPoint r = engineered_point(rl, rr, space, filter, options);
    const Rectification rect = rectification(f.transport.J_right, r.transport.J_right);
    return RectificationResult{f.transport.J_right, r.transport.J_right, rect.value, rect.no_transport,
                               std::move(f), std::move(r)};
}

} // namespace thermoflux::tls
