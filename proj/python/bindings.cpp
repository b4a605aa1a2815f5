// bindings.cpp — Python module thermoflux._core

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "thermoflux/analytic.hpp"
#include "thermoflux/config.hpp"
#include "thermoflux/errors.hpp"
#include "thermoflux/fock.hpp"
#include "thermoflux/lindblad.hpp"
#include "thermoflux/steady.hpp"
#include "thermoflux/sweep.hpp"
#include "thermoflux/tls_reduction.hpp"
#include "thermoflux/transport.hpp"

namespace py = pybind11;
using namespace thermoflux;
using namespace thermoflux::cli;

namespace {

py::dict row_dict(const SweepRow& row)
{
    py::dict d;
    d["T_varied"] = row.T_varied;
    d["J_forward"] = row.J_forward;
    d["J_reverse"] = row.J_reverse;
    d["R"] = row.R;
    d["no_transport"] = row.no_transport;
    d["mean_n"] = row.mean_n;
    d["residual"] = row.residual;
    d["analytic_J"] = row.analytic_J;
    d["analytic_R"] = row.analytic_R;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Steady-state heat transport through a two-bath harmonic oscillator";
    m.attr("__version__") = kCodeVersion;

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
    auto solver = py::register_exception<SolverError>(m, "SolverError", error.ptr());
    py::register_exception<DegenerateSteadyState>(m, "DegenerateSteadyState", solver.ptr());
    py::register_exception<NonConvergent>(m, "NonConvergent", solver.ptr());
    py::register_exception<CrossCheckFailed>(m, "CrossCheckFailed", error.ptr());
    py::register_exception<DomainError>(m, "DomainError", error.ptr());

    py::class_<BathSpec>(m, "BathSpec")
        .def(py::init([](double T, double gamma, double Gamma2) { return BathSpec{T, gamma, Gamma2}; }),
             py::arg("T") = 1.0, py::arg("gamma") = 0.0, py::arg("Gamma2") = 0.0)
        .def_readwrite("T", &BathSpec::temperature)
        .def_readwrite("gamma", &BathSpec::gamma)
        .def_readwrite("Gamma2", &BathSpec::Gamma_two);

    py::class_<ModelConfig>(m, "ModelConfig")
        .def(py::init([](double omega, int dim, BathSpec left, BathSpec right) {
                 ModelConfig c;
                 c.omega = omega;
                 c.dim = dim;
                 c.left = left;
                 c.right = right;
                 c.validate();
                 return c;
             }),
             py::arg("omega") = 1.0, py::arg("dim") = 50, py::arg("left") = BathSpec{},
             py::arg("right") = BathSpec{})
        .def_readwrite("omega", &ModelConfig::omega)
        .def_readwrite("dim", &ModelConfig::dim)
        .def_readwrite("left", &ModelConfig::left)
        .def_readwrite("right", &ModelConfig::right)
        .def("with_temperatures", &ModelConfig::with_temperatures, py::arg("T_left"), py::arg("T_right"))
        .def("with_swapped_temperatures", &ModelConfig::with_swapped_temperatures);

    m.def("thermal_occupation", &thermal_occupation, py::arg("omega"), py::arg("T"));
    m.def(
        "liouvillian", [](const ModelConfig& c) { return liouvillian(c).matrix(); }, py::arg("config"),
        "Dense generator acting on column-stacked density matrices.");

    m.def(
        "steady_state",
        [](const ModelConfig& c, const std::string& sector) {
            const auto s = parse_sector(sector);
            if (!s) throw InvalidArgument("unknown sector '" + sector + "'");
            return solve_steady(liouvillian(c), *s).rho.matrix();
        },
        py::arg("config"), py::arg("sector") = "full");
    m.def(
        "populations",
        [](const ModelConfig& c) {
            return solve_steady(liouvillian(c), default_sector(c)).rho.populations();
        },
        py::arg("config"));

    m.def(
        "heat_currents",
        [](const ModelConfig& c) {
            const TransportResult t = solve_operating_point(c).transport;
            py::dict d;
            d["J_left"] = t.J_left;
            d["J_right"] = t.J_right;
            d["mean_n"] = t.moments.mean_n;
            d["balance_residual"] = t.balance_residual;
            return d;
        },
        py::arg("config"));
    m.def(
        "forward_reverse",
        [](const ModelConfig& c) {
            const RectificationResult r = forward_reverse(c);
            return py::make_tuple(r.J_forward, r.J_reverse, r.R);
        },
        py::arg("config"), "Returns (J_forward, J_reverse, R).");
    m.def(
        "rectification", [](double f, double r) { return rectification(f, r).value; }, py::arg("J_forward"),
        py::arg("J_reverse"));

    auto a = m.def_submodule("analytic", "Closed-form currents and occupations");
    a.def("linear_current", &analytic::linear_current, py::arg("config"));
    a.def("two_photon_ratio", &analytic::two_photon_ratio, py::arg("config"));
    a.def("two_photon_current", &analytic::two_photon_current, py::arg("config"));
    a.def(
        "semiclassical_occupation", [](const ModelConfig& c) { return analytic::semiclassical_occupation(c).root; },
        py::arg("config"));
    a.def("semiclassical_current", &analytic::semiclassical_current, py::arg("config"));
    a.def("weak_coupling_current", &analytic::weak_coupling_current, py::arg("config"));

    m.def(
        "effective_rates",
        [](double omega_o, double omega_a, double g, double kappa, double T) {
            const tls::EffectiveRates r = tls::effective_rates({omega_o, omega_a, g, kappa, T});
            py::dict d;
            d["gamma_minus"] = r.gamma_minus;
            d["gamma_plus"] = r.gamma_plus;
            d["Gamma_minus"] = r.Gamma_minus;
            d["Gamma_plus"] = r.Gamma_plus;
            d["gamma_d"] = r.gamma_d;
            return d;
        },
        py::arg("omega_o"), py::arg("omega_a"), py::arg("g"), py::arg("kappa"), py::arg("T"));

    m.def(
        "run_sweep",
        [](const std::string& config_json, int workers) {
            const RunConfig run = parse_run_config(nlohmann::json::parse(config_json));
            SweepResult res;
            {
                py::gil_scoped_release release;
                res = run_sweep(run, workers);
            }
            py::list rows;
            for (const auto& row : res.rows) rows.append(row_dict(row));
            return rows;
        },
        py::arg("config_json"), py::arg("workers") = 1,
        "Runs a sweep from a JSON config document and returns one dict per temperature.");
}
