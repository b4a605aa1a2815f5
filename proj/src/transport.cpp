// transport.cpp — Bath-resolved heat currents and rectification

#include "thermoflux/transport.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "thermoflux/errors.hpp"

namespace thermoflux {

namespace {

constexpr double kCrossCheckRelTol = 1e-9;
constexpr double kRoundoffFloor = 1e3 * std::numeric_limits<double>::epsilon();

} // namespace

Moments population_moments(const Eigen::VectorXd& p)
{
    Moments m;
    for (Eigen::Index n = 0; n < p.size(); ++n) {
        const double x = static_cast<double>(n);
        m.mean_n += p(n) * x;
        m.n_n_minus_1 += p(n) * x * (x - 1.0);
        m.n1_n2 += p(n) * (x + 1.0) * (x + 2.0);
    }
    return m;
}

CurrentTerms population_heat_current(const Eigen::VectorXd& p, const ModelConfig& config, Side side)
{
    const BathSpec& bath = config.bath(side);
    CurrentTerms out;
    if (!bath.coupled()) return out;

    const Eigen::Index d = p.size();
    double raise1 = 0.0, lower1 = 0.0, raise2 = 0.0, lower2 = 0.0;
    for (Eigen::Index n = 0; n < d; ++n) {
        const double x = static_cast<double>(n);
        lower1 += p(n) * x;
        lower2 += p(n) * x * (x - 1.0);
        if (n + 1 < d) raise1 += p(n) * (x + 1.0);
        if (n + 2 < d) raise2 += p(n) * (x + 1.0) * (x + 2.0);
    }

    const double w = config.omega;
    if (bath.gamma > 0.0) {
        const double nb = thermal_occupation(w, bath.temperature);
        const double up = w * bath.gamma * nb * raise1;
        const double down = w * bath.gamma * (nb + 1.0) * lower1;
        out.current += up - down;
        out.gross += up + down;
    }
    if (bath.Gamma_two > 0.0) {
        const double mb = thermal_occupation(2.0 * w, bath.temperature);
        const double up = 2.0 * w * bath.Gamma_two * mb * raise2;
        const double down = 2.0 * w * bath.Gamma_two * (mb + 1.0) * lower2;
        out.current += up - down;
        out.gross += up + down;
    }
    return out;
}

namespace {

double superoperator_current(const DensityMatrix& rho, const ModelConfig& config, Side side)
{
    const FockSpace space(rho.dim());
    const BathSpec& bath = config.bath(side);
    if (!bath.coupled()) return 0.0;
    const Superoperator part = bath_dissipator(space, config.omega, bath);
    const Eigen::MatrixXcd drho = part.apply(rho.matrix());
    const Eigen::MatrixXcd H = config.omega * number_operator(space);
    return (H * drho).trace().real();
}

double checked_current(const DensityMatrix& rho, const ModelConfig& config, Side side, double& gross)
{
    if (rho.dim() != config.dim) {
        throw InvalidArgument("density matrix dimension does not match model.dim");
    }
    const double a = superoperator_current(rho, config, side);
    const CurrentTerms b = population_heat_current(rho.populations(), config, side);
    gross = b.gross;
    const double allowed = std::max(kCrossCheckRelTol * std::abs(a), kRoundoffFloor * b.gross);
    if (!(std::abs(a - b.current) <= allowed)) {
        throw CrossCheckFailed(std::string("heat current (") + std::string(to_string(side))
                               + ") superoperator route " + std::to_string(a)
                               + " disagrees with moment route " + std::to_string(b.current));
    }
    return a;
}

} // namespace

double heat_current(const DensityMatrix& rho, const ModelConfig& config, Side side)
{
    double gross = 0.0;
    return checked_current(rho, config, side, gross);
}

bool TransportResult::balanced() const noexcept
{
    const double scale = std::max(std::abs(J_left), std::abs(J_right));
    return balance_residual <= kBalanceRelTol * scale || balance_residual <= kRoundoffFloor * gross_flow;
}

double TransportResult::roundoff_floor() const noexcept
{
    return kRoundoffFloor * gross_flow;
}

TransportResult transport(const DensityMatrix& rho, const ModelConfig& config)
{
    TransportResult out;
    double gross_left = 0.0, gross_right = 0.0;
    out.J_left = checked_current(rho, config, Side::Left, gross_left);
    out.J_right = checked_current(rho, config, Side::Right, gross_right);
    out.J_net = out.J_right;
    out.balance_residual = std::abs(out.J_left + out.J_right);
    out.gross_flow = gross_left + gross_right;
    out.moments = population_moments(rho.populations());
    return out;
}

Rectification rectification(double J_forward, double J_reverse) noexcept
{
    const double denom = std::max(std::abs(J_forward), std::abs(J_reverse));
    if (denom == 0.0) return {0.0, true};
    return {std::abs(J_forward + J_reverse) / denom, false};
}

OperatingPoint solve_operating_point(const ModelConfig& config, const SolveOptions& options)
{
    const Sector sector = options.sector.value_or(default_sector(config));
    SteadyStateResult steady = [&] {
        const Superoperator L = liouvillian(config);
        return solve_steady(L, sector, options.steady);
    }();
    TransportResult tr = transport(steady.rho, config);
    return OperatingPoint{std::move(steady), tr};
}

RectificationResult forward_reverse(const ModelConfig& config, const SolveOptions& options)
{
    config.validate();
    if (config.left.temperature == config.right.temperature) {
        throw InvalidArgument("forward/reverse transport needs T_L != T_R");
    }
    const bool given_is_forward = config.right.temperature > config.left.temperature;
    const ModelConfig forward = given_is_forward ? config : config.with_swapped_temperatures();
    const ModelConfig reverse = given_is_forward ? config.with_swapped_temperatures() : config;

    OperatingPoint f = solve_operating_point(forward, options);
    OperatingPoint r = solve_operating_point(reverse, options);
    const Rectification rect = rectification(f.transport.J_right, r.transport.J_right);
    return RectificationResult{f.transport.J_right, r.transport.J_right, rect.value, rect.no_transport,
                               std::move(f), std::move(r)};
}

} // namespace thermoflux
