// fock.hpp — Truncated Fock-space operators, Bose factors and the model description

#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace thermoflux {

using OperatorMatrix = Eigen::MatrixXcd;

// Truncated oscillator space spanned by |0>, ..., |dim-1>.
class FockSpace {
public:
    // Below three levels a^2 and a^dag^2 vanish identically.
    static constexpr int kMinDim = 3;

    explicit FockSpace(int dim);

    int dim() const noexcept { return dim_; }

private:
    int dim_;
};

// a with a[n-1, n] = sqrt(n).
OperatorMatrix annihilation(const FockSpace& space);
OperatorMatrix creation(const FockSpace& space);
OperatorMatrix number_operator(const FockSpace& space);

// Bose-Einstein factor 1/(exp(omega_eff/T) - 1). Returns exactly 0 once the
// exponential overflows, so frozen baths never produce NaN.
double thermal_occupation(double omega_eff, double temperature);

struct BathSpec {
    double temperature{1.0};
    double gamma{0.0};     // single-photon rate
    double Gamma_two{0.0}; // two-photon rate

    bool coupled() const noexcept { return gamma > 0.0 || Gamma_two > 0.0; }
    void validate(std::string_view name) const;
};

enum class Side { Left, Right };

std::string_view to_string(Side side) noexcept;

struct ModelConfig {
    double omega{1.0};
    int dim{50};
    BathSpec left{};
    BathSpec right{};

    void validate() const;
    FockSpace space() const { return FockSpace(dim); }

    const BathSpec& bath(Side side) const noexcept { return side == Side::Left ? left : right; }
    BathSpec& bath(Side side) noexcept { return side == Side::Left ? left : right; }

    // Same couplings, bath temperatures exchanged.
    ModelConfig with_swapped_temperatures() const;
    ModelConfig with_temperatures(double T_left, double T_right) const;
    ModelConfig with_dim(int new_dim) const;
};

} // namespace thermoflux
