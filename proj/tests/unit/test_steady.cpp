#include <doctest.h>

#include <cmath>
#include <limits>

#include "../support/oracles.hpp"
#include "thermoflux/errors.hpp"
#include "thermoflux/lindblad.hpp"
#include "thermoflux/steady.hpp"
#include "thermoflux/transport.hpp"

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

double ratio_oracle(const ModelConfig& c)
{
    const double mL = oracle::bose(2 * c.omega, c.left.temperature);
    const double mR = oracle::bose(2 * c.omega, c.right.temperature);
    const double GL = c.left.Gamma_two, GR = c.right.Gamma_two;
    return (GL * mL + GR * mR) / (GL * (mL + 1) + GR * (mR + 1));
}

} // namespace

TEST_CASE("sector names and defaults")
{
    CHECK(parse_sector("full") == Sector::Full);
    CHECK(parse_sector("even") == Sector::EvenParity);
    CHECK(parse_sector("odd") == Sector::OddParity);
    CHECK_FALSE(parse_sector("auto").has_value());
    CHECK(default_sector(make(0.0, 0.1, 0.0, 0.01, 1, 1, 5)) == Sector::EvenParity);
    CHECK(default_sector(make(0.1, 0.1, 0.0, 0.01, 1, 1, 5)) == Sector::Full);
}

TEST_CASE("single linear bath relaxes to the Gibbs state")
{
    const double T = 0.8;
    const ModelConfig c = make(0.3, 0.0, 0.0, 0.0, T, 1.0, 30);
    const auto ss = solve_steady(liouvillian(c), Sector::Full);
    CHECK(ss.nullity == 1);
    const Eigen::VectorXd p = ss.rho.populations();
    double Z = 0.0;
    for (int n = 0; n < 30; ++n) Z += std::exp(-n / T);
    for (int n = 0; n < 30; ++n) CHECK(std::abs(p(n) - std::exp(-n / T) / Z) < 1e-12);
    // coherences vanish
    Eigen::MatrixXcd off = ss.rho.matrix();
    off.diagonal().setZero();
    CHECK(off.norm() < 1e-12);

    const auto q = solve_rate_equation(c, Sector::Full);
    for (int n = 0; n < 30; ++n) CHECK(std::abs(q[n] - std::exp(-n / T) / Z) < 1e-12);
}

TEST_CASE("pure two-photon coupling: degeneracy and the geometric law")
{
    const ModelConfig c = make(0.0, 0.1, 0.0, 0.001, 2.0, 0.5, 40);
    const Superoperator L = liouvillian(c);
    CHECK_THROWS_AS(solve_steady(L, Sector::Full), DegenerateSteadyState);
    CHECK(nullity(L, Sector::Full) == 2);

    const auto ss = solve_steady(L, Sector::EvenParity);
    CHECK(ss.nullity == 1);
    const double r = ratio_oracle(c);
    const Eigen::VectorXd p = ss.rho.populations();
    // The truncated chain keeps detailed balance, so its law is the geometric
    // one renormalized over the 20 even levels.
    const double Z = (1 - std::pow(r, 20)) / (1 - r);
    for (int k = 0; 2 * k < 40; ++k) {
        CHECK(std::abs(p(2 * k) - std::pow(r, k) / Z) < 1e-13);
        if (2 * k + 1 < 40) CHECK(p(2 * k + 1) == 0.0);
    }

    const auto q = solve_rate_equation(c, Sector::EvenParity);
    for (int k = 0; k + 1 < 15; ++k) CHECK(q[2 * k + 2] / q[2 * k] == doctest::Approx(r).epsilon(1e-10));
}

TEST_CASE("odd sector has the same ratio")
{
    const ModelConfig c = make(0.0, 0.1, 0.0, 0.01, 1.5, 0.6, 40);
    const auto odd = solve_rate_equation(c, Sector::OddParity);
    const double r = ratio_oracle(c);
    CHECK(odd[0] == 0.0);
    for (int k = 0; k < 8; ++k) CHECK(odd[2 * k + 3] / odd[2 * k + 1] == doctest::Approx(r).epsilon(1e-9));

    const auto ss_odd = solve_steady(liouvillian(c), Sector::OddParity);
    CHECK((ss_odd.rho.populations() - odd.values()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("equal temperatures give the thermal state despite the closure")
{
    const ModelConfig c = make(0.2, 0.02, 0.2, 0.0, 0.25, 0.25, 50);
    const auto op = solve_operating_point(c);
    const Eigen::VectorXd p = op.steady.rho.populations();
    double Z = 0.0;
    for (int n = 0; n < 50; ++n) Z += std::exp(-n / 0.25);
    for (int n = 0; n < 50; ++n) CHECK(std::abs(p(n) - std::exp(-n / 0.25) / Z) < 1e-8);
    CHECK(std::abs(op.transport.J_right) < 1e-10);
    CHECK(std::abs(op.transport.J_left) < 1e-10);
}

TEST_CASE("parity is conserved without single-photon channels")
{
    const ModelConfig c = make(0.0, 0.3, 0.0, 0.1, 1.0, 2.0, 12);
    const Superoperator L = liouvillian(c);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(12);
    for (int k = 0; k < 6; ++k) p(2 * k) = 1.0 / 6;
    const Eigen::MatrixXcd out = L.apply(Eigen::MatrixXcd(p.asDiagonal()));
    double leak = 0.0;
    for (int k = 0; k < 6; ++k) leak = std::max(leak, std::abs(out(2 * k + 1, 2 * k + 1)));
    CHECK(leak <= 1e-12);
}

TEST_CASE("property: null-space solver matches the rate-equation oracle")
{
    oracle::Rng rng(77);
    for (int trial = 0; trial < 15; ++trial) {
        const int d = rng.integer(4, 24);
        const bool two_photon_only = trial % 4 == 0;
        const ModelConfig c = make(two_photon_only ? 0.0 : rng.uniform(0.01, 1), rng.uniform(0, 0.3),
                                   two_photon_only ? 0.0 : rng.uniform(0.01, 1), rng.uniform(0.001, 0.3),
                                   rng.log_uniform(0.2, 3), rng.log_uniform(0.2, 3), d);
        const Sector s = default_sector(c);
        const Superoperator L = liouvillian(c);
        const auto ss = solve_steady(L, s);
        const auto q = solve_rate_equation(c, s);
        CHECK((ss.rho.populations() - q.values()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(ss.residual <= 1e-10 * L.matrix().norm());
        CHECK(ss.rho.populations().minCoeff() >= 0.0);
    }
}

TEST_CASE("linear-only chain matches the detailed-balance product formula")
{
    const ModelConfig c = make(0.4, 0.0, 0.1, 0.0, 1.7, 0.3, 25);
    std::vector<double> up, down;
    const double nL = oracle::bose(1, 1.7), nR = oracle::bose(1, 0.3);
    for (int n = 0; n + 1 < 25; ++n) {
        up.push_back((0.4 * nL + 0.1 * nR) * (n + 1));
        down.push_back((0.4 * (nL + 1) + 0.1 * (nR + 1)) * (n + 1));
    }
    const auto expected = oracle::one_step_stationary(up, down);
    const auto q = solve_rate_equation(c, Sector::Full);
    for (int n = 0; n < 25; ++n) CHECK(std::abs(q[n] - expected[static_cast<std::size_t>(n)]) < 1e-13);
}

TEST_CASE("rate generator preserves probability")
{
    const Eigen::MatrixXd W = rate_generator(make(0.2, 0.1, 0.3, 0.05, 1.0, 2.0, 15));
    CHECK(W.colwise().sum().cwiseAbs().maxCoeff() < 1e-13);
    for (int i = 0; i < 15; ++i)
        for (int j = 0; j < 15; ++j)
            if (i != j) CHECK(W(i, j) >= 0.0);
}

TEST_CASE("residual tolerance is enforced")
{
    const ModelConfig c = make(0.2, 0.1, 0.3, 0.05, 1.0, 2.0, 10);
    SteadyOptions strict;
    strict.residual_tolerance = 1e-40;
    CHECK_THROWS_AS(solve_steady(liouvillian(c), Sector::Full, strict), NonConvergent);
}

TEST_CASE("population vector invariants")
{
    Eigen::VectorXd p(3);
    p << 0.5, 0.5, 0.0;
    CHECK_NOTHROW(PopulationVector{p});
    p << 0.5, 0.5 + 1e-14, -1e-15;
    CHECK_NOTHROW(PopulationVector{p});
    p << 0.5, 0.5 + 1e-10, -1e-10;
    CHECK_THROWS_AS(PopulationVector{p}, InvalidArgument);
    p << 0.5, 0.4, 0.0;
    CHECK_THROWS_AS(PopulationVector{p}, InvalidArgument);
}

TEST_CASE("convergence check")
{
    SUBCASE("cold bath needs few levels")
    {
        CHECK(convergence_check(make(0.3, 0.05, 0.3, 0.0, 0.1, 0.1, 5), 1e-10) <= 10);
    }
    SUBCASE("fig3 parameters at T_R = 4 fit into 50 levels")
    {
        CHECK(convergence_check(make(0.2, 0.02, 0.2, 0.0, 0.25, 4.0, 50), 1e-8) <= 50);
    }
    SUBCASE("infinite tolerance returns the minimum cutoff")
    {
        CHECK(convergence_check(make(0.3, 0.0, 0.3, 0.0, 1.0, 1.0, 5), std::numeric_limits<double>::infinity())
              == FockSpace::kMinDim);
    }
    SUBCASE("hard cap")
    {
        ConvergenceOptions opts;
        opts.max_dim = 20;
        CHECK_THROWS_AS(convergence_check(make(0.3, 0.0, 0.3, 0.0, 30.0, 30.0, 5), 1e-12, opts), CutoffExceeded);
    }
}
