#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "thermoflux/errors.hpp"
#include "thermoflux/lindblad.hpp"
#include "thermoflux/steady.hpp"

using namespace thermoflux;

namespace {

ModelConfig make(double gL, double GL, double gR, double GR, double TL, double TR, int dim)
{
    ModelConfig c;
    c.dim = dim;
    c.left = {TL, gL, GL};
    c.right = {TR, gR, GR};
    return c;
}

double off_diagonal_norm(const Eigen::MatrixXcd& m)
{
    Eigen::MatrixXcd x = m;
    x.diagonal().setZero();
    return x.norm();
}

} // namespace

TEST_CASE("vectorization is column stacking")
{
    Eigen::MatrixXcd rho(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rho(i, j) = {double(i), double(10 * j)};
    const Eigen::VectorXcd v = vectorize(rho);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(v(vec_index(i, j, 3)) == rho(i, j));
    CHECK((unvectorize(v, 3) - rho).norm() == 0.0);
}

TEST_CASE("dissipator examples")
{
    SUBCASE("zero rate is the zero map")
    {
        CHECK(dissipator(annihilation(FockSpace(4)), 0.0).matrix().norm() == 0.0);
    }
    SUBCASE("single-excitation decay on two levels")
    {
        const double g = 0.7;
        const Superoperator L = dissipator(oracle::ladder(2), g);
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
        rho(1, 1) = 1.0;
        const Eigen::MatrixXcd out = L.apply(rho);
        CHECK(std::abs(out(0, 0) - g) < 1e-15);
        CHECK(std::abs(out(1, 1) + g) < 1e-15);
        CHECK(off_diagonal_norm(out) == 0.0);
    }
    SUBCASE("two-photon decay from |2>")
    {
        const double G = 0.3;
        const OperatorMatrix a = annihilation(FockSpace(3));
        const Superoperator L = dissipator(a * a, G);
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(3, 3);
        rho(2, 2) = 1.0;
        const Eigen::MatrixXcd out = L.apply(rho);
        CHECK(std::abs(out(0, 0) - 2 * G) < 1e-15);
        CHECK(std::abs(out(1, 1)) < 1e-15);
        CHECK(std::abs(out(2, 2) + 2 * G) < 1e-15);
    }
    SUBCASE("negative rate is rejected")
    {
        CHECK_THROWS_AS(dissipator(annihilation(FockSpace(3)), -1.0), InvalidArgument);
    }
}

TEST_CASE("dissipator equals the Kronecker-product oracle")
{
    oracle::Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const int d = rng.integer(3, 7);
        Eigen::MatrixXcd O(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) O(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double rate = rng.uniform(0.1, 2.0);
        CHECK((dissipator(O, rate).matrix() - oracle::dissipator(O, rate)).norm() < 1e-12);
        // and against direct application
        const Eigen::MatrixXcd rho = rng.density(d);
        CHECK((dissipator(O, rate).apply(rho) - rate * oracle::apply_dissipator(O, rho)).norm() < 1e-12);
    }
}

TEST_CASE("commutator generator")
{
    oracle::Rng rng(5);
    const Eigen::MatrixXcd H = rng.hermitian(4);
    const Eigen::MatrixXcd rho = rng.density(4);
    const Eigen::MatrixXcd expected = std::complex<double>(0, -1) * (H * rho - rho * H);
    CHECK((hamiltonian_generator(H).apply(rho) - expected).norm() < 1e-13);
}

TEST_CASE("bath dissipator decomposition")
{
    const FockSpace space(6);
    CHECK(bath_dissipator(space, 1.0, {1.0, 0.0, 0.0}).matrix().norm() == 0.0);

    const double n = thermal_occupation(1.0, 2.0);
    const double m = thermal_occupation(2.0, 2.0);
    const OperatorMatrix a = annihilation(space);
    const OperatorMatrix ad = creation(space);

    const Eigen::MatrixXcd linear = oracle::dissipator(a, 0.2 * (n + 1)) + oracle::dissipator(ad, 0.2 * n);
    CHECK((bath_dissipator(space, 1.0, {2.0, 0.2, 0.0}).matrix() - linear).norm() < 1e-13);

    const Eigen::MatrixXcd full = linear + oracle::dissipator(a * a, 0.1 * (m + 1))
                                  + oracle::dissipator(ad * ad, 0.1 * m);
    CHECK((bath_dissipator(space, 1.0, {2.0, 0.2, 0.1}).matrix() - full).norm() < 1e-13);
}

TEST_CASE("liouvillian is commutator plus both baths exactly")
{
    const ModelConfig c = make(0.2, 0.1, 0.3, 0.01, 2.0, 0.5, 8);
    Superoperator sum = hamiltonian_generator(c.omega * number_operator(c.space()));
    sum += bath_dissipator(c.space(), c.omega, c.left);
    sum += bath_dissipator(c.space(), c.omega, c.right);
    CHECK((liouvillian(c).matrix() - sum.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("uncoupled model is a pure commutator with stationary diagonal states")
{
    ModelConfig c = make(0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 5);
    const Superoperator L = liouvillian(c);
    Eigen::VectorXd p(5);
    p << 0.4, 0.3, 0.1, 0.15, 0.05;
    CHECK(L.apply(Eigen::MatrixXcd(p.asDiagonal())).norm() < 1e-15);
}

TEST_CASE("nullity of the reference couplings")
{
    CHECK(nullity(liouvillian(make(0.0, 0.1, 0.0, 0.001, 2.0, 0.5, 20))) >= 2);
    CHECK(nullity(liouvillian(make(0.2, 0.1, 0.2, 0.01, 2.0, 0.5, 20))) == 1);
}

TEST_CASE("property: trace, Hermiticity and diagonal closure on random configs")
{
    oracle::Rng rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        const int d = rng.integer(3, 9);
        const bool linear_on = rng.uniform(0, 1) < 0.7;
        const ModelConfig c =
            make(linear_on ? rng.uniform(0, 1) : 0.0, rng.uniform(0, 0.5), linear_on ? rng.uniform(0, 1) : 0.0,
                 rng.uniform(0, 0.5), rng.log_uniform(0.1, 5), rng.log_uniform(0.1, 5), d);
        const Superoperator L = liouvillian(c);
        CHECK(L.trace_defect() < 1e-12 * std::max(1.0, L.matrix().norm()));

        for (int k = 0; k < 100 / 12 + 1; ++k) {
            const Eigen::MatrixXcd H = rng.hermitian(d);
            const Eigen::MatrixXcd out = L.apply(H);
            CHECK(std::abs(out.trace()) < 1e-10);
            CHECK((out - out.adjoint()).norm() < 1e-12 * std::max(1.0, out.norm()));
        }
        Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
        for (int n = 0; n < d; ++n) p(n) = rng.uniform(0, 1);
        CHECK(off_diagonal_norm(L.apply(Eigen::MatrixXcd(p.asDiagonal()))) <= 1e-12);
    }
}

TEST_CASE("density matrix invariants")
{
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(3, 3);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    CHECK_NOTHROW(DensityMatrix{rho});

    Eigen::MatrixXcd bad_trace = rho;
    bad_trace(2, 2) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{bad_trace}, InvalidArgument);

    Eigen::MatrixXcd non_hermitian = rho;
    non_hermitian(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{non_hermitian}, InvalidArgument);

    Eigen::MatrixXcd negative = rho;
    negative(0, 0) = 1.1;
    negative(1, 1) = -0.1;
    CHECK_THROWS_AS(DensityMatrix{negative}, InvalidArgument);

    Eigen::VectorXd p(3);
    p << 0.2, 0.3, 0.5;
    CHECK((DensityMatrix::from_populations(p).populations() - p).norm() == 0.0);
}
