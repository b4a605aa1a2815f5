// checks.cpp — Built-in invariant suite for the `check` subcommand

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "thermoflux/analytic.hpp"
#include "thermoflux/lindblad.hpp"
#include "thermoflux/steady.hpp"
#include "thermoflux/sweep.hpp"
#include "thermoflux/tls_reduction.hpp"
#include "thermoflux/transport.hpp"

namespace thermoflux::cli {

namespace {

ModelConfig fixture(double gL, double GL, double gR, double GR, double TL, double TR, int dim = 16)
{
    ModelConfig c;
    c.omega = 1.0;
    c.dim = dim;
    c.left = {TL, gL, GL};
    c.right = {TR, gR, GR};
    return c;
}

std::string sci(double x)
{
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << x;
    return s.str();
}

CheckOutcome bound(std::string name, double value, double limit)
{
    return {std::move(name), value <= limit, sci(value) + " <= " + sci(limit)};
}

} // namespace

std::vector<CheckOutcome> run_builtin_checks()
{
    std::vector<std::pair<std::string, std::function<CheckOutcome()>>> cases;

    cases.emplace_back("trace preservation", [] {
        const Superoperator L = liouvillian(fixture(0.3, 0.05, 0.1, 0.02, 1.5, 0.7));
        return bound("trace preservation", L.trace_defect(), 1e-12 * L.matrix().norm());
    });
    cases.emplace_back("unique steady state", [] {
        const Superoperator L = liouvillian(fixture(0.3, 0.05, 0.1, 0.02, 1.5, 0.7));
        const int k = nullity(L, Sector::Full);
        return CheckOutcome{"unique steady state", k == 1, "nullity " + std::to_string(k)};
    });
    cases.emplace_back("parity degeneracy", [] {
        const Superoperator L = liouvillian(fixture(0.0, 0.1, 0.0, 0.01, 2.0, 0.5));
        const int full = nullity(L, Sector::Full);
        const int even = nullity(L, Sector::EvenParity);
        return CheckOutcome{"parity degeneracy", full == 2 && even == 1,
                            "full " + std::to_string(full) + ", even " + std::to_string(even)};
    });
    cases.emplace_back("energy balance", [] {
        const auto op = solve_operating_point(fixture(0.3, 0.05, 0.1, 0.02, 1.5, 0.7));
        const double scale = std::max(std::abs(op.transport.J_left), std::abs(op.transport.J_right));
        return bound("energy balance", op.transport.balance_residual, 1e-9 * scale);
    });
    cases.emplace_back("rate equation agreement", [] {
        const ModelConfig c = fixture(0.3, 0.05, 0.1, 0.02, 1.5, 0.7);
        const auto op = solve_operating_point(c);
        const auto q = solve_rate_equation(c, Sector::Full);
        const double diff = (op.steady.rho.populations() - q.values()).cwiseAbs().maxCoeff();
        return bound("rate equation agreement", diff, 1e-9);
    });
    cases.emplace_back("linear current closed form", [] {
        const ModelConfig c = fixture(0.3, 0.0, 0.1, 0.0, 1.5, 0.7, 40);
        const double J = solve_operating_point(c).transport.J_right;
        const double J0 = analytic::linear_current(c);
        return bound("linear current closed form", std::abs(J - J0) / std::abs(J0), 1e-8);
    });
    cases.emplace_back("linear null rectification", [] {
        const auto rr = forward_reverse(fixture(0.3, 0.0, 0.1, 0.0, 1.5, 0.7, 50));
        return bound("linear null rectification", rr.R, 1e-10);
    });
    cases.emplace_back("symmetric two-photon antisymmetry", [] {
        const auto rr = forward_reverse(fixture(0.0, 0.05, 0.0, 0.05, 1.2, 0.4, 30));
        return bound("symmetric two-photon antisymmetry", rr.R, 1e-10);
    });
    cases.emplace_back("two-photon closed form", [] {
        const ModelConfig c = fixture(0.0, 0.1, 0.0, 0.01, 1.0, 0.5, 40);
        const double J = solve_operating_point(c).transport.J_right;
        const double J0 = analytic::two_photon_current(c);
        return bound("two-photon closed form", std::abs(J - J0) / std::abs(J0), 1e-6);
    });
    cases.emplace_back("rectification range", [] {
        const auto rr = forward_reverse(fixture(0.2, 0.1, 0.2, 0.0, 2.0, 0.3, 30));
        return CheckOutcome{"rectification range", rr.R >= 0.0 && rr.R <= 1.0, "R = " + sci(rr.R)};
    });
    cases.emplace_back("effective rate scaling", [] {
        tls::TlsHoParams p;
        tls::TlsHoParams q = p;
        q.g = 2.0 * p.g;
        const auto a = tls::effective_rates(p);
        const auto b = tls::effective_rates(q);
        const double e1 = std::abs(b.gamma_minus / a.gamma_minus - 4.0);
        const double e2 = std::abs(b.Gamma_minus / a.Gamma_minus - 8.0);
        return bound("effective rate scaling", std::max(e1, e2), 1e-10);
    });
    cases.emplace_back("sweep determinism", [] {
        RunConfig run;
        run.sweep.config = fixture(0.2, 0.05, 0.2, 0.0, 1.0, 1.0, 12);
        run.sweep.fixed_T = 1.0;
        run.sweep.T_values = {0.5, 0.8, 1.5};
        std::ostringstream a, b;
        write_csv(a, run_sweep(run, 1));
        write_csv(b, run_sweep(run, 2));
        return CheckOutcome{"sweep determinism", a.str() == b.str(), "CSV from 1 and 2 workers"};
    });

    std::vector<CheckOutcome> outcomes;
    for (auto& [name, fn] : cases) {
        try {
            outcomes.push_back(fn());
        } catch (const std::exception& e) {
            outcomes.push_back({name, false, std::string("exception: ") + e.what()});
        }
    }
    return outcomes;
}

} // namespace thermoflux::cli
