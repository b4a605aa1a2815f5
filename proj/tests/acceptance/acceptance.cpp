// acceptance — one PASS/FAIL line per acceptance criterion; exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "thermoflux/analytic.hpp"
#include "thermoflux/lindblad.hpp"
#include "thermoflux/steady.hpp"
#include "thermoflux/sweep.hpp"
#include "thermoflux/tls_reduction.hpp"
#include "thermoflux/transport.hpp"

using namespace thermoflux;
namespace an = thermoflux::analytic;

namespace {

ModelConfig make(double gL, double GL, double gR, double GR, double TL, double TR, int dim)
{
    ModelConfig c;
    c.omega = 1.0;
    c.dim = dim;
    c.left = {TL, gL, GL};
    c.right = {TR, gR, GR};
    return c;
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

// Every solve in criteria 1-9 goes through here so that criteria 10 and 11
// see all of them.
struct Ledger {
    int solves{0};
    int unbalanced{0};
    double worst_balance{0.0}; // |J_L + J_R| / max(|J_L|, |J_R|)
    double worst_oracle{0.0};  // max |diag(rho) - p_rate|
    std::string worst_oracle_at;
};

Ledger ledger;

OperatingPoint solve(const ModelConfig& c, std::optional<Sector> sector = std::nullopt)
{
    SolveOptions opts;
    opts.sector = sector;
    OperatingPoint op = solve_operating_point(c, opts);
    const Sector s = sector.value_or(default_sector(c));
    const auto q = solve_rate_equation(c, s);
    const double diff = (op.steady.rho.populations() - q.values()).cwiseAbs().maxCoeff();

    ++ledger.solves;
    if (!op.transport.balanced()) ++ledger.unbalanced;
    const double scale = std::max(std::abs(op.transport.J_left), std::abs(op.transport.J_right));
    if (scale > 1e-12) ledger.worst_balance = std::max(ledger.worst_balance, op.transport.balance_residual / scale);
    if (diff > ledger.worst_oracle) {
        ledger.worst_oracle = diff;
        char buf[160];
        std::snprintf(buf, sizeof buf, "D=%d TL=%.3g TR=%.3g gL=%.3g GL=%.3g gR=%.3g GR=%.3g", c.dim,
                      c.left.temperature, c.right.temperature, c.left.gamma, c.left.Gamma_two, c.right.gamma,
                      c.right.Gamma_two);
        ledger.worst_oracle_at = buf;
    }
    return op;
}

struct RR {
    double Jf, Jr, R;
};

RR forward_reverse_tracked(const ModelConfig& c)
{
    const ModelConfig fwd = c.right.temperature > c.left.temperature ? c : c.with_swapped_temperatures();
    const double Jf = solve(fwd).transport.J_right;
    const double Jr = solve(fwd.with_swapped_temperatures()).transport.J_right;
    return {Jf, Jr, rectification(Jf, Jr).value};
}

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), s);
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Cutoff for which <n> and the currents move by less than tol under D -> D+10.
int converged_dim(const ModelConfig& c, double tol)
{
    return convergence_check(c, tol) + 10;
}

} // namespace

int main()
{
    std::mt19937_64 rng(20261014);
    auto U = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

    report(1, "linear null rectification", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double gL = U(0.05, 1.0), gR = U(0.05, 1.0);
            if (std::abs(gL - gR) < 0.05) gR = gL + 0.1;
            double TL = U(0.2, 3.0), TR = U(0.2, 3.0);
            if (std::abs(TL - TR) < 0.05) TR = TL + 0.3;
            ModelConfig c = make(gL, 0.0, gR, 0.0, TL, TR, 10);
            // Truncation enters R through the top population ~ r^D, r = n/(n+1) at the hotter side.
            const double n = 1.0 / std::expm1(1.0 / std::max(TL, TR));
            c.dim = static_cast<int>(std::ceil(std::log(1e-14) / std::log(n / (n + 1.0)))) + 5;
            worst = std::max(worst, forward_reverse_tracked(c).R);
        }
        return Outcome{worst <= 1e-10, fmt("max R = %.3e over 20 configs (tol 1e-10)", worst)};
    });

    report(2, "linear current closed form", [&] {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            ModelConfig c = make(U(0.05, 1.0), 0.0, U(0.05, 1.0), 0.0, U(0.2, 3.0), U(0.2, 3.0), 10);
            const double J0 = an::linear_current(c);
            c.dim = converged_dim(c, 1e-11 * std::abs(J0));
            worst = std::max(worst, rel(solve(c).transport.J_right, J0));
        }
        return Outcome{worst <= 1e-8, fmt("max relative error %.3e (tol 1e-8)", worst)};
    });

    report(3, "two-photon closed form on the 5x5 grid, D=60", [&] {
        double worst = 0.0, worst_TL = 0, worst_TR = 0, worst_diag = 0.0;
        std::string where;
        for (double GR : {0.001, 0.01}) {
            for (int i = 0; i < 5; ++i) {
                for (int j = 0; j < 5; ++j) {
                    const double TL = 0.5 + 0.875 * i, TR = 0.5 + 0.875 * j;
                    const ModelConfig c = make(0.0, 0.1, 0.0, GR, TL, TR, 60);
                    const double J = solve(c, Sector::EvenParity).transport.J_right;
                    const double J0 = an::two_photon_current(c);
                    if (i == j) {
                        worst_diag = std::max(worst_diag, std::abs(J));
                        continue;
                    }
                    const double e = rel(J, J0);
                    if (e > worst) {
                        worst = e;
                        worst_TL = TL;
                        worst_TR = TR;
                    }
                }
            }
        }
        const bool pass = worst <= 1e-6 && worst_diag <= 1e-10;
        return Outcome{pass, fmt("max relative error %.3e at (T_L, T_R) = (%.4g, ", worst, worst_TL)
                                 + fmt("%.4g) (tol 1e-6); equal-T |J| <= %.1e", worst_TR, worst_diag)};
    });

    report(4, "geometric even-sector distribution and moments", [&] {
        double worst_ratio = 0.0, worst_moment = 0.0;
        // Hot enough that p_30 sits well above roundoff; D = 100 keeps the truncated tail below 1e-14.
        for (auto [TL, TR] : {std::pair{2.0, 3.0}, std::pair{3.0, 2.5}, std::pair{2.5, 2.5}}) {
            const ModelConfig c = make(0.0, 0.1, 0.0, 0.001, TL, TR, 100);
            const auto op = solve(c, Sector::EvenParity);
            const Eigen::VectorXd p = op.steady.rho.populations();
            const double r = an::two_photon_ratio(c);
            for (int k = 0; k < 15; ++k) worst_ratio = std::max(worst_ratio, rel(p(2 * k + 2) / p(2 * k), r));
            const auto m = an::two_photon_moments(r);
            const Moments nm = op.transport.moments;
            worst_moment = std::max({worst_moment, rel(nm.mean_n, m.mean_n), rel(nm.n_n_minus_1, m.n_n_minus_1),
                                     rel(nm.n1_n2, m.n1_n2)});
        }
        return Outcome{worst_ratio <= 1e-8 && worst_moment <= 1e-8,
                       fmt("ratio deviation %.3e, moment deviation %.3e (tol 1e-8)", worst_ratio, worst_moment)};
    });

    report(5, "symmetric two-photon antisymmetry", [&] {
        double worst = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double G = U(0.005, 0.2);
            const ModelConfig c = make(0.0, G, 0.0, G, U(0.3, 2.0), U(0.3, 2.0), 60);
            worst = std::max(worst, forward_reverse_tracked(c).R);
        }
        return Outcome{worst <= 1e-10, fmt("max R = %.3e over 8 configs (tol 1e-10)", worst)};
    });

    report(6, "semiclassical current at the fig3 parameters", [&] {
        const auto grid = cli::temperature_grid(0.25, 4.0, 64);
        double worst_low = 0.0, worst_low_T = 0.0, err1 = 0.0, err4 = 0.0;
        for (double TR : grid) {
            if (TR <= 0.25) continue; // T_R = T_L: numeric J = 0
            if (TR > 1.0 + 1e-12 && TR < 4.0) continue;
            const ModelConfig c = make(0.2, 0.02, 0.2, 0.0, 0.25, TR, 50);
            const double e = rel(an::semiclassical_current(c), solve(c).transport.J_right);
            if (TR <= 1.0 + 1e-12 && e > worst_low) {
                worst_low = e;
                worst_low_T = TR;
            }
            if (TR == 4.0) err4 = e;
        }
        const ModelConfig c1 = make(0.2, 0.02, 0.2, 0.0, 0.25, 1.0, 50);
        err1 = rel(an::semiclassical_current(c1), solve(c1).transport.J_right);
        const bool pass = worst_low <= 0.05 && err4 > err1;
        return Outcome{pass, fmt("max relative error for T_R <= 1: %.3e at T_R = %.4g (tol 5e-2); ", worst_low, worst_low_T)
                                 + fmt("error at T_R = 1: %.3e, at T_R = 4: %.3e", err1, err4)};
    });

    report(7, "weak-coupling remainder is O(Gamma_L^2)", [&] {
        double worst = 0.0;
        for (double TR : {0.5, 1.0, 2.0, 4.0}) {
            double q[2];
            int k = 0;
            for (double GL : {1e-3, 1e-4}) {
                const ModelConfig c = make(0.2, GL, 0.2, 0.0, 0.25, TR, 50);
                q[k++] = std::abs(an::semiclassical_current(c) - an::weak_coupling_current(c)) / (GL * GL);
            }
            worst = std::max(worst, std::max(q[0] / q[1], q[1] / q[0]));
        }
        return Outcome{worst < 2.0, fmt("max ratio of scaled remainders %.4f (must be < 2)", worst)};
    });

    auto ordering = [&](cli::FigureId fig, const char* what) {
        const auto runs = cli::figure_runs(fig, ".");
        const auto& weak = runs[0];
        const auto& strong = runs[1];
        int violations = 0, points = 0;
        double min_gap = 1e300;
        for (double T : weak.sweep.T_values) {
            if (T == weak.sweep.fixed_T) continue;
            const double Rw = forward_reverse_tracked(weak.sweep.forward_config(T)).R;
            const double Rs = forward_reverse_tracked(strong.sweep.forward_config(T)).R;
            ++points;
            if (!(Rs > Rw)) ++violations;
            min_gap = std::min(min_gap, Rs - Rw);
        }
        return Outcome{violations == 0, fmt("%.0f of %.0f grid points ordered, min R gap %.3e", points - violations,
                                            points, min_gap)
                                            + std::string(" (") + what + ")"};
    };

    report(8, "fig4 ordering R(Gamma_L=0.1) > R(Gamma_L=0.001)", [&] {
        return ordering(cli::FigureId::Fig4, "gamma = 0.5, Gamma_R = 0, T_L = 2, D = 50");
    });

    report(9, "fig5 ordering R(Gamma_R=0.01) > R(Gamma_R=0.001)", [&] {
        return ordering(cli::FigureId::Fig5, "gamma = 0.2, Gamma_L = 0.1, T_L = 2, D = 50");
    });

    report(10, "energy conservation on every solve", [&] {
        return Outcome{ledger.unbalanced == 0,
                       fmt("%.0f solves, %.0f unbalanced, worst |J_L+J_R|/max|J| = %.3e (tol 1e-9)",
                           ledger.solves, ledger.unbalanced, ledger.worst_balance)};
    });

    report(11, "null-space solver matches the rate equation", [&] {
        return Outcome{ledger.worst_oracle <= 1e-9,
                       fmt("%.0f solves, worst population difference %.3e (tol 1e-9)", ledger.solves,
                           ledger.worst_oracle)
                           + (ledger.worst_oracle_at.empty() ? "" : " at " + ledger.worst_oracle_at)};
    });

    report(12, "TLS reduction", [&] {
        tls::TlsHoParams p;
        p.omega_o = 5.0;
        p.omega_a = 1.0;
        p.g = 0.1;
        p.kappa = 0.05;
        p.T = 2.0;

        tls::TlsHoParams p2 = p;
        p2.g = 0.2;
        const auto a = tls::effective_rates(p);
        const auto b = tls::effective_rates(p2);
        const double scaling = std::max({rel(b.gamma_minus, 4 * a.gamma_minus), rel(b.gamma_plus, 4 * a.gamma_plus),
                                         rel(b.Gamma_minus, 8 * a.Gamma_minus), rel(b.Gamma_plus, 8 * a.Gamma_plus)});

        const FockSpace space(20);
        const auto on = solve_steady(tls::reduced_ho_liouvillian(p, space, true), Sector::Full);
        const auto off = solve_steady(tls::reduced_ho_liouvillian(p, space, false), Sector::Full);
        const Moments mon = population_moments(on.rho.populations());
        const Moments moff = population_moments(off.rho.populations());
        const double dephasing = std::max(std::abs(mon.mean_n - moff.mean_n), std::abs(mon.n_n_minus_1 - moff.n_n_minus_1));

        const auto composite = solve_steady(tls::composite_liouvillian(p, space), Sector::Full);
        const Eigen::MatrixXcd rho_ho = tls::trace_out_tls(composite.rho.matrix(), 20);
        double n_comp = 0.0;
        for (int n = 0; n < 20; ++n) n_comp += n * rho_ho(n, n).real();
        const double cross = rel(n_comp, mon.mean_n);

        tls::TlsHoParams left = p, right = p;
        left.T = 2.0;
        right.T = 0.5;
        right.g = 0.05;
        const auto rr = tls::engineered_forward_reverse(left, right, FockSpace(30));

        const bool pass = scaling <= 1e-10 && dephasing <= 1e-10 && cross <= 0.15 && rr.R > 0.0;
        return Outcome{pass, fmt("scaling error %.1e, dephasing shift %.1e, ", scaling, dephasing)
                                 + fmt("composite vs reduced <n> rel %.2e (tol 0.15), engineered R = %.4f", cross, rr.R)};
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
