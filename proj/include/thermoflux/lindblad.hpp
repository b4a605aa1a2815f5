// lindblad.hpp — GKSL generators in column-stacked superoperator form
//
// Vectorization convention (used everywhere in thermoflux):
//     vec(rho)[i + j * dim] = rho(i, j)
// which is Eigen's native column-major storage, so
//     vec(A rho B) = (B^T kron A) vec(rho).

#pragma once

#include <Eigen/Dense>

#include "thermoflux/fock.hpp"

namespace thermoflux {

inline Eigen::Index vec_index(Eigen::Index row, Eigen::Index col, Eigen::Index dim) noexcept
{
    return row + col * dim;
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& op);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int dim);

class Superoperator {
public:
    Superoperator() = default;
    // Zero map on dim x dim operators.
    explicit Superoperator(int dim);
    Superoperator(int dim, Eigen::MatrixXcd matrix);

    int dim() const noexcept { return dim_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
    Eigen::MatrixXcd& matrix() noexcept { return matrix_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& op) const;

    Superoperator& operator+=(const Superoperator& other);

    // max_k |sum_n L[(n,n), k]|: zero for a trace-preserving map.
    double trace_defect() const;

private:
    int dim_{0};
    Eigen::MatrixXcd matrix_;
};

// Hermitian, unit-trace, numerically positive semidefinite operator.
class DensityMatrix {
public:
    static constexpr double kHermiticityTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kMinEigenvalue = -1e-8;

    // Throws InvalidArgument if any invariant fails.
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    static DensityMatrix from_populations(const Eigen::VectorXd& p);

    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }
    Eigen::VectorXd populations() const;

private:
    Eigen::MatrixXcd entries_;
};

// In-place accumulation; avoids materialising a D^2 x D^2 temporary per term.
void add_dissipator(Superoperator& target, const OperatorMatrix& jump, double rate);
void add_commutator(Superoperator& target, const OperatorMatrix& hamiltonian);

// rate * D[O], D[O]rho = O rho O^dag - {O^dag O, rho}/2.
Superoperator dissipator(const OperatorMatrix& jump, double rate);

// -i[H, .]
Superoperator hamiltonian_generator(const OperatorMatrix& hamiltonian);

// gamma(n+1) D[a] + gamma n D[a^dag] + Gamma(m+1) D[a^2] + Gamma m D[a^dag^2]
// with n at omega and m at 2 omega.
Superoperator bath_dissipator(const FockSpace& space, double omega, const BathSpec& bath);

// -i[omega a^dag a, .] + bath_dissipator(left) + bath_dissipator(right)
Superoperator liouvillian(const ModelConfig& config);

} // namespace thermoflux
