// lindblad.cpp — Column-stacked assembly of commutator and dissipator terms

#include "thermoflux/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "thermoflux/errors.hpp"

namespace thermoflux {

using cd = std::complex<double>;

namespace {

struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    cd value;
};

std::vector<Entry> nonzeros(const Eigen::MatrixXcd& m)
{
    std::vector<Entry> out;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (m(r, c) != cd(0.0, 0.0)) out.push_back({r, c, m(r, c)});
        }
    }
    return out;
}

void require_square(const Eigen::MatrixXcd& op, int dim, const char* what)
{
    if (op.rows() != op.cols()) {
        throw InvalidArgument(std::string(what) + " must be square");
    }
    if (op.rows() != dim) {
        throw InvalidArgument(std::string(what) + " dimension " + std::to_string(op.rows())
                              + " does not match superoperator dimension " + std::to_string(dim));
    }
}

} // namespace

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& op)
{
    return Eigen::Map<const Eigen::VectorXcd>(op.data(), op.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int dim)
{
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw InvalidArgument("vector length does not match dim^2");
    }
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

Superoperator::Superoperator(int dim) : dim_(dim)
{
    if (dim <= 0) throw InvalidArgument("superoperator dimension must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(dim) * dim;
    matrix_ = Eigen::MatrixXcd::Zero(n, n);
}

Superoperator::Superoperator(int dim, Eigen::MatrixXcd matrix) : dim_(dim), matrix_(std::move(matrix))
{
    const Eigen::Index n = static_cast<Eigen::Index>(dim) * dim;
    if (dim <= 0 || matrix_.rows() != n || matrix_.cols() != n) {
        throw InvalidArgument("superoperator matrix must be dim^2 x dim^2");
    }
}

Eigen::VectorXcd Superoperator::apply(const Eigen::VectorXcd& v) const
{
    if (v.size() != matrix_.cols()) throw InvalidArgument("vector length mismatch");
    return matrix_ * v;
}

Eigen::MatrixXcd Superoperator::apply(const Eigen::MatrixXcd& op) const
{
    require_square(op, dim_, "operator");
    return unvectorize(apply(vectorize(op)), dim_);
}

Superoperator& Superoperator::operator+=(const Superoperator& other)
{
    if (other.dim_ != dim_) throw InvalidArgument("superoperator dimension mismatch");
    matrix_ += other.matrix_;
    return *this;
}

double Superoperator::trace_defect() const
{
    Eigen::RowVectorXcd column_traces = Eigen::RowVectorXcd::Zero(matrix_.cols());
    for (int n = 0; n < dim_; ++n) {
        column_traces += matrix_.row(vec_index(n, n, dim_));
    }
    return column_traces.size() == 0 ? 0.0 : column_traces.cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries))
{
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw InvalidArgument("density matrix must be square and non-empty");
    }
    const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermiticityTol) {
        throw InvalidArgument("density matrix is not Hermitian (defect " + std::to_string(herm) + ")");
    }
    const cd tr = entries_.trace();
    if (std::abs(tr - cd(1.0, 0.0)) > kTraceTol) {
        throw InvalidArgument("density matrix trace " + std::to_string(tr.real()) + " != 1");
    }
    const Eigen::MatrixXcd h = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    if (lambda_min < kMinEigenvalue) {
        throw InvalidArgument("density matrix has eigenvalue " + std::to_string(lambda_min));
    }
}

DensityMatrix DensityMatrix::from_populations(const Eigen::VectorXd& p)
{
    return DensityMatrix(p.cast<cd>().asDiagonal());
}

Eigen::VectorXd DensityMatrix::populations() const
{
    return entries_.diagonal().real();
}

void add_dissipator(Superoperator& target, const OperatorMatrix& jump, double rate)
{
    const int d = target.dim();
    require_square(jump, d, "jump operator");
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw InvalidArgument("dissipator rate must be non-negative, got " + std::to_string(rate));
    }
    if (rate == 0.0) return;

    const auto jump_nz = nonzeros(jump);
    const auto number_nz = nonzeros(jump.adjoint() * jump);
    auto& m = target.matrix();

    // O rho O^dag -> conj(O) kron O
    for (const auto& a : jump_nz) {
        for (const auto& b : jump_nz) {
            m(vec_index(a.row, b.row, d), vec_index(a.col, b.col, d)) += rate * a.value * std::conj(b.value);
        }
    }
    // -(O^dag O) rho / 2 -> I kron (O^dag O)
    // -rho (O^dag O) / 2 -> (O^dag O)^T kron I
    for (const auto& a : number_nz) {
        for (Eigen::Index k = 0; k < d; ++k) {
            m(vec_index(a.row, k, d), vec_index(a.col, k, d)) -= 0.5 * rate * a.value;
            m(vec_index(k, a.col, d), vec_index(k, a.row, d)) -= 0.5 * rate * a.value;
        }
    }
}

void add_commutator(Superoperator& target, const OperatorMatrix& hamiltonian)
{
    const int d = target.dim();
    require_square(hamiltonian, d, "Hamiltonian");
    const cd minus_i(0.0, -1.0);
    auto& m = target.matrix();
    for (const auto& h : nonzeros(hamiltonian)) {
        for (Eigen::Index k = 0; k < d; ++k) {
            // H rho
            m(vec_index(h.row, k, d), vec_index(h.col, k, d)) += minus_i * h.value;
            // -rho H
            m(vec_index(k, h.col, d), vec_index(k, h.row, d)) -= minus_i * h.value;
        }
    }
}

Superoperator dissipator(const OperatorMatrix& jump, double rate)
{
    if (jump.rows() != jump.cols()) throw InvalidArgument("jump operator must be square");
    Superoperator out(static_cast<int>(jump.rows()));
    add_dissipator(out, jump, rate);
    return out;
}

Superoperator hamiltonian_generator(const OperatorMatrix& hamiltonian)
{
    if (hamiltonian.rows() != hamiltonian.cols()) throw InvalidArgument("Hamiltonian must be square");
    Superoperator out(static_cast<int>(hamiltonian.rows()));
    add_commutator(out, hamiltonian);
    return out;
}

namespace {

void accumulate_bath(Superoperator& target, const FockSpace& space, double omega, const BathSpec& bath)
{
    if (!bath.coupled()) return;
    const double n_bar = thermal_occupation(omega, bath.temperature);
    const double m_bar = thermal_occupation(2.0 * omega, bath.temperature);
    const OperatorMatrix a = annihilation(space);
    const OperatorMatrix ad = a.adjoint();
    if (bath.gamma > 0.0) {
        add_dissipator(target, a, bath.gamma * (n_bar + 1.0));
        add_dissipator(target, ad, bath.gamma * n_bar);
    }
    if (bath.Gamma_two > 0.0) {
        add_dissipator(target, a * a, bath.Gamma_two * (m_bar + 1.0));
        add_dissipator(target, ad * ad, bath.Gamma_two * m_bar);
    }
}

} // namespace

Superoperator bath_dissipator(const FockSpace& space, double omega, const BathSpec& bath)
{
    if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
    bath.validate("");
    Superoperator out(space.dim());
    accumulate_bath(out, space, omega, bath);
    return out;
}

Superoperator liouvillian(const ModelConfig& config)
{
    config.validate();
    const FockSpace space = config.space();
    Superoperator out = hamiltonian_generator(config.omega * number_operator(space));
    // Summed as whole matrices so the result equals commutator + sum of baths bit for bit.
    for (const Side side : {Side::Left, Side::Right}) {
        if (config.bath(side).coupled()) out += bath_dissipator(space, config.omega, config.bath(side));
    }
    return out;
}

} // namespace thermoflux
