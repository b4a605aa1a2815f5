// analytic.cpp — Closed forms for the linear, pure two-photon and
// asymmetric (Gamma_R = 0) configurations

#include "thermoflux/analytic.hpp"

#include <cmath>
#include <string>

#include "thermoflux/errors.hpp"

namespace thermoflux::analytic {

namespace {

struct Occupations {
    double nL, nR, mL, mR;
};

Occupations occupations(const ModelConfig& c)
{
    c.validate();
    return {thermal_occupation(c.omega, c.left.temperature), thermal_occupation(c.omega, c.right.temperature),
            thermal_occupation(2.0 * c.omega, c.left.temperature),
            thermal_occupation(2.0 * c.omega, c.right.temperature)};
}

void require_single_photon(const ModelConfig& c)
{
    if (!(c.left.gamma + c.right.gamma > 0.0)) {
        throw NoCoupling("single-photon closed forms need gamma_L + gamma_R > 0");
    }
}

void require_gamma_right_zero(const ModelConfig& c)
{
    if (c.right.Gamma_two != 0.0) {
        throw DomainError("semiclassical closure assumes Gamma_R = 0");
    }
}

} // namespace

double bare_occupation(const ModelConfig& config)
{
    const Occupations o = occupations(config);
    require_single_photon(config);
    const double gL = config.left.gamma, gR = config.right.gamma;
    return (gL * o.nL + gR * o.nR) / (gL + gR);
}

double linear_occupation(const ModelConfig& config)
{
    if (config.left.Gamma_two != 0.0 || config.right.Gamma_two != 0.0) {
        throw NonLinearConfig("linear closed form requires Gamma_L = Gamma_R = 0");
    }
    return bare_occupation(config);
}

double linear_current(const ModelConfig& config)
{
    if (config.left.Gamma_two != 0.0 || config.right.Gamma_two != 0.0) {
        throw NonLinearConfig("linear closed form requires Gamma_L = Gamma_R = 0");
    }
    const Occupations o = occupations(config);
    require_single_photon(config);
    const double gL = config.left.gamma, gR = config.right.gamma;
    return config.omega * gL * gR / (gL + gR) * (o.nR - o.nL);
}

double two_photon_ratio(const ModelConfig& config)
{
    if (config.left.gamma != 0.0 || config.right.gamma != 0.0) {
        throw DomainError("two-photon ratio requires gamma_L = gamma_R = 0");
    }
    const Occupations o = occupations(config);
    const double GL = config.left.Gamma_two, GR = config.right.Gamma_two;
    if (!(GL + GR > 0.0)) throw NoCoupling("two-photon ratio needs Gamma_L + Gamma_R > 0");
    return (GL * o.mL + GR * o.mR) / (GL * (o.mL + 1.0) + GR * (o.mR + 1.0));
}

TwoPhotonMoments two_photon_moments(double r)
{
    if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument("ratio r must lie in [0, 1)");
    const double u = 1.0 - r;
    TwoPhotonMoments m;
    m.r = r;
    m.mean_n = 2.0 * r / u;
    m.n2 = 4.0 * r * (1.0 + r) / (u * u);
    m.n_n_minus_1 = m.n2 - m.mean_n;
    m.n1_n2 = 2.0 * (1.0 + 3.0 * r) / (u * u);
    return m;
}

double two_photon_current(const ModelConfig& config)
{
    if (config.left.gamma != 0.0 || config.right.gamma != 0.0) {
        throw DomainError("two-photon current requires gamma_L = gamma_R = 0");
    }
    const Occupations o = occupations(config);
    const double GL = config.left.Gamma_two, GR = config.right.Gamma_two;
    if (!(GL + GR > 0.0)) throw NoCoupling("two-photon current needs Gamma_L + Gamma_R > 0");
    const double s = GL + GR;
    return 4.0 * config.omega * GL * GR / (s * s) * (GL * (4.0 * o.mL + 1.0) + GR * (4.0 * o.mR + 1.0))
           * (o.mR - o.mL);
}

SemiClassicalCoefficients semiclassical_occupation(const ModelConfig& config)
{
    require_gamma_right_zero(config);
    const Occupations o = occupations(config);
    require_single_photon(config);
    const double GL = config.left.Gamma_two;
    if (!(GL > 0.0)) throw DomainError("semiclassical closure needs Gamma_L > 0");
    const double gL = config.left.gamma, gR = config.right.gamma;

    SemiClassicalCoefficients k;
    k.A = -2.0 * GL;
    k.B = gL + gR + 8.0 * GL * o.mL;
    k.C = -(gL * o.nL + gR * o.nR + 4.0 * GL * o.mL);
    const double disc = k.B * k.B - 4.0 * k.A * k.C;
    if (!(disc >= 0.0)) throw NoPositiveRoot("semiclassical quadratic has no real root");
    // (-B + sqrt(disc)) / (2A) rewritten without cancellation.
    k.root = 2.0 * k.C / (-k.B - std::sqrt(disc));
    if (!(k.root >= 0.0) || !std::isfinite(k.root)) {
        throw NoPositiveRoot("semiclassical root " + std::to_string(k.root) + " is not positive");
    }
    return k;
}

double semiclassical_current(const ModelConfig& config)
{
    const SemiClassicalCoefficients k = semiclassical_occupation(config);
    return config.omega * config.right.gamma * (thermal_occupation(config.omega, config.right.temperature) - k.root);
}

double weak_coupling_current(const ModelConfig& config)
{
    require_gamma_right_zero(config);
    const Occupations o = occupations(config);
    require_single_photon(config);
    const double gL = config.left.gamma, gR = config.right.gamma, GL = config.left.Gamma_two;
    const double n0 = bare_occupation(config);
    const double w = config.omega;
    return w * gL * gR / (gL + gR) * (o.nR - o.nL)
           - w * GL * gR / (gL + gR) * (2.0 * n0 * n0 - 4.0 * o.mL * (2.0 * n0 - 1.0));
}

} // namespace thermoflux::analytic
