// fock.cpp — Ladder operators, Bose factors and model validation

#include "thermoflux/fock.hpp"

#include <cmath>
#include <string>

#include "thermoflux/errors.hpp"

namespace thermoflux {

FockSpace::FockSpace(int dim) : dim_(dim)
{
    if (dim < kMinDim) {
        throw InvalidArgument("Fock dimension must be >= " + std::to_string(kMinDim) + ", got "
                              + std::to_string(dim));
    }
}

OperatorMatrix annihilation(const FockSpace& space)
{
    const int d = space.dim();
    OperatorMatrix a = OperatorMatrix::Zero(d, d);
    for (int n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

OperatorMatrix creation(const FockSpace& space)
{
    return annihilation(space).adjoint();
}

OperatorMatrix number_operator(const FockSpace& space)
{
    const int d = space.dim();
    OperatorMatrix n = OperatorMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        n(k, k) = static_cast<double>(k);
    }
    return n;
}

double thermal_occupation(double omega_eff, double temperature)
{
    if (!(omega_eff > 0.0) || !(temperature > 0.0)) {
        throw InvalidArgument("thermal_occupation requires omega_eff > 0 and T > 0");
    }
    const double x = omega_eff / temperature;
    // expm1 overflows to +inf for x > ~709; 1/inf is the clamp to zero.
    return 1.0 / std::expm1(x);
}

void BathSpec::validate(std::string_view name) const
{
    const std::string prefix = name.empty() ? std::string("bath.") : "bath." + std::string(name) + ".";
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw InvalidArgument(prefix + "T must be a positive finite temperature");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw InvalidArgument(prefix + "gamma must be non-negative");
    }
    if (!(Gamma_two >= 0.0) || !std::isfinite(Gamma_two)) {
        throw InvalidArgument(prefix + "Gamma2 must be non-negative");
    }
}

std::string_view to_string(Side side) noexcept
{
    return side == Side::Left ? "left" : "right";
}

void ModelConfig::validate() const
{
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw InvalidArgument("model.omega must be positive");
    }
    if (dim < FockSpace::kMinDim) {
        throw InvalidArgument("model.dim must be >= 3");
    }
    left.validate("left");
    right.validate("right");
}

ModelConfig ModelConfig::with_swapped_temperatures() const
{
    return with_temperatures(right.temperature, left.temperature);
}

ModelConfig ModelConfig::with_temperatures(double T_left, double T_right) const
{
    ModelConfig out = *this;
    out.left.temperature = T_left;
    out.right.temperature = T_right;
    return out;
}

ModelConfig ModelConfig::with_dim(int new_dim) const
{
    ModelConfig out = *this;
    out.dim = new_dim;
    return out;
}

} // namespace thermoflux
