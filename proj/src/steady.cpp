// steady.cpp — Steady-state solvers
//
// The Liouvillians built here couple only operator elements |n><m| of equal
// coherence order (and, without single-photon channels, equal parity). The
// solver splits the dense matrix into the connected components of its exact
// nonzero pattern, so the rank-revealing factorisations run on D-sized blocks
// instead of the full D^2 x D^2 matrix. Generic dense inputs form a single block.

#include "thermoflux/steady.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "thermoflux/errors.hpp"
#include "thermoflux/transport.hpp"

namespace thermoflux {

using cd = std::complex<double>;

std::string_view to_string(Sector sector) noexcept
{
    switch (sector) {
    case Sector::Full: return "full";
    case Sector::EvenParity: return "even";
    case Sector::OddParity: return "odd";
    }
    return "full";
}

std::optional<Sector> parse_sector(std::string_view text) noexcept
{
    if (text == "full") return Sector::Full;
    if (text == "even") return Sector::EvenParity;
    if (text == "odd") return Sector::OddParity;
    return std::nullopt;
}

Sector default_sector(const ModelConfig& config) noexcept
{
    return (config.left.gamma == 0.0 && config.right.gamma == 0.0) ? Sector::EvenParity : Sector::Full;
}

namespace {

bool in_sector(Eigen::Index n, Sector sector) noexcept
{
    switch (sector) {
    case Sector::Full: return true;
    case Sector::EvenParity: return n % 2 == 0;
    case Sector::OddParity: return n % 2 == 1;
    }
    return true;
}

// Column-stacked indices of |i><j| with both i and j in the sector.
std::vector<Eigen::Index> sector_indices(int dim, Sector sector)
{
    std::vector<Eigen::Index> out;
    for (Eigen::Index j = 0; j < dim; ++j) {
        if (!in_sector(j, sector)) continue;
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (in_sector(i, sector)) out.push_back(vec_index(i, j, dim));
        }
    }
    return out;
}

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

struct Block {
    std::vector<Eigen::Index> members; // global vectorised indices, ascending
    Eigen::MatrixXcd matrix;
    Eigen::VectorXd singular_values;
};

std::vector<Block> decompose(const Superoperator& generator, Sector sector)
{
    const int dim = generator.dim();
    const auto& L = generator.matrix();
    const auto indices = sector_indices(dim, sector);
    const std::size_t n = indices.size();

    std::vector<Eigen::Index> local(static_cast<std::size_t>(L.rows()), -1);
    for (std::size_t k = 0; k < n; ++k) local[static_cast<std::size_t>(indices[k])] = static_cast<Eigen::Index>(k);

    DisjointSet groups(n);
    for (std::size_t c = 0; c < n; ++c) {
        const Eigen::Index col = indices[c];
        for (Eigen::Index row = 0; row < L.rows(); ++row) {
            const Eigen::Index r = local[static_cast<std::size_t>(row)];
            if (r >= 0 && L(row, col) != cd(0.0, 0.0)) groups.unite(static_cast<std::size_t>(r), c);
        }
    }

    std::map<std::size_t, Block> by_root;
    for (std::size_t k = 0; k < n; ++k) by_root[groups.find(k)].members.push_back(indices[k]);

    std::vector<Block> blocks;
    blocks.reserve(by_root.size());
    for (auto& [root, block] : by_root) {
        const auto size = static_cast<Eigen::Index>(block.members.size());
        block.matrix.resize(size, size);
        for (Eigen::Index c = 0; c < size; ++c) {
            for (Eigen::Index r = 0; r < size; ++r) {
                block.matrix(r, c) = L(block.members[static_cast<std::size_t>(r)],
                                       block.members[static_cast<std::size_t>(c)]);
            }
        }
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(block.matrix);
        block.singular_values = svd.singularValues();
        blocks.push_back(std::move(block));
    }
    return blocks;
}

double max_singular_value(const std::vector<Block>& blocks)
{
    double s = 0.0;
    for (const auto& b : blocks) {
        if (b.singular_values.size() > 0) s = std::max(s, b.singular_values.maxCoeff());
    }
    return s;
}

int count_null(const Eigen::VectorXd& values, double cutoff)
{
    int k = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (values(i) <= cutoff) ++k;
    }
    return k;
}

constexpr int kRefinementSteps = 2;

bool is_population(Eigen::Index vec, int dim) noexcept
{
    return vec % dim == vec / dim;
}

} // namespace

std::vector<double> singular_values(const Superoperator& generator, Sector sector)
{
    std::vector<double> out;
    for (const auto& b : decompose(generator, sector)) {
        for (Eigen::Index i = 0; i < b.singular_values.size(); ++i) out.push_back(b.singular_values(i));
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

int nullity(const Superoperator& generator, Sector sector, double threshold)
{
    const auto blocks = decompose(generator, sector);
    const double cutoff = threshold * max_singular_value(blocks);
    int k = 0;
    for (const auto& b : blocks) k += count_null(b.singular_values, cutoff);
    return k;
}

SteadyStateResult solve_steady(const Superoperator& generator, Sector sector, const SteadyOptions& options)
{
    const int dim = generator.dim();
    const auto blocks = decompose(generator, sector);
    const double cutoff = options.nullity_threshold * max_singular_value(blocks);

    int total_null = 0;
    const Block* steady_block = nullptr;
    for (const auto& b : blocks) {
        const int k = count_null(b.singular_values, cutoff);
        total_null += k;
        if (k > 0) steady_block = &b;
    }
    if (total_null == 0) {
        throw NonConvergent("generator has no null space in the " + std::string(to_string(sector))
                            + " sector");
    }
    if (total_null > 1) {
        throw DegenerateSteadyState("steady state is not unique: nullity " + std::to_string(total_null)
                                    + " in the " + std::string(to_string(sector)) + " sector");
    }

    const auto& members = steady_block->members;
    const auto size = static_cast<Eigen::Index>(members.size());
    Eigen::Index replaced = -1;
    Eigen::RowVectorXcd trace_row = Eigen::RowVectorXcd::Zero(size);
    for (Eigen::Index k = 0; k < size; ++k) {
        if (is_population(members[static_cast<std::size_t>(k)], dim)) {
            trace_row(k) = 1.0;
            replaced = k;
        }
    }
    if (replaced < 0) {
        throw NonConvergent("null space consists of traceless coherences only");
    }

    // The trace functional is a left null vector, so any population row is
    // redundant; the highest Fock population row is the one dropped.
    Eigen::MatrixXcd system = steady_block->matrix;
    system.row(replaced) = trace_row;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);
    rhs(replaced) = 1.0;
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(system);
    Eigen::VectorXcd x = qr.solve(rhs);
    // Residuals accumulated in long double; tiny net currents are differences
    // of much larger gross flows and need the extra digits.
    for (int sweep = 0; sweep < kRefinementSteps; ++sweep) {
        Eigen::VectorXcd r(size);
        for (Eigen::Index i = 0; i < size; ++i) {
            std::complex<long double> acc(rhs(i).real(), rhs(i).imag());
            for (Eigen::Index j = 0; j < size; ++j) {
                const std::complex<long double> a(system(i, j).real(), system(i, j).imag());
                const std::complex<long double> b(x(j).real(), x(j).imag());
                acc -= a * b;
            }
            r(i) = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
        }
        x += qr.solve(r);
    }

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim) * dim);
    for (Eigen::Index k = 0; k < size; ++k) v(members[static_cast<std::size_t>(k)]) = x(k);
    Eigen::MatrixXcd rho = unvectorize(v, dim);
    rho = (0.5 * (rho + rho.adjoint())).eval();

    for (int n = 0; n < dim; ++n) {
        const double p = rho(n, n).real();
        if (p < -PopulationVector::kNegativeTol) {
            throw NonConvergent("negative population " + std::to_string(p) + " at n=" + std::to_string(n));
        }
        if (p < 0.0) rho(n, n) = 0.0;
    }
    rho /= rho.trace().real();

    const double residual = generator.apply(vectorize(rho)).norm();
    const double scale = generator.matrix().norm();
    if (!(residual <= options.residual_tolerance * scale)) {
        throw NonConvergent("steady-state residual " + std::to_string(residual) + " exceeds "
                            + std::to_string(options.residual_tolerance) + " * ||L||_F");
    }

    try {
        return SteadyStateResult{DensityMatrix(std::move(rho)), residual, total_null, sector};
    } catch (const InvalidArgument& e) {
        throw NonConvergent(std::string("steady state is not a density matrix: ") + e.what());
    }
}

PopulationVector::PopulationVector(Eigen::VectorXd p) : p_(std::move(p))
{
    if (p_.size() == 0) throw InvalidArgument("population vector must be non-empty");
    if (std::abs(p_.sum() - 1.0) > kSumTol) {
        throw InvalidArgument("populations sum to " + std::to_string(p_.sum()));
    }
    if (p_.minCoeff() < -kNegativeTol) {
        throw InvalidArgument("negative population " + std::to_string(p_.minCoeff()));
    }
}

Eigen::MatrixXd rate_generator(const ModelConfig& config)
{
    config.validate();
    const int d = config.dim;
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(d, d);

    auto add_rate = [&](int from, int to, double rate) {
        if (to < 0 || to >= d || rate == 0.0) return;
        W(to, from) += rate;
        W(from, from) -= rate;
    };

    for (const Side side : {Side::Left, Side::Right}) {
        const BathSpec& bath = config.bath(side);
        if (!bath.coupled()) continue;
        const double nb = thermal_occupation(config.omega, bath.temperature);
        const double mb = thermal_occupation(2.0 * config.omega, bath.temperature);
        for (int n = 0; n < d; ++n) {
            const double x = n;
            add_rate(n, n - 1, bath.gamma * (nb + 1.0) * x);
            add_rate(n, n + 1, bath.gamma * nb * (x + 1.0));
            add_rate(n, n - 2, bath.Gamma_two * (mb + 1.0) * x * (x - 1.0));
            add_rate(n, n + 2, bath.Gamma_two * mb * (x + 1.0) * (x + 2.0));
        }
    }
    return W;
}

PopulationVector solve_rate_equation(const ModelConfig& config, Sector sector, const SteadyOptions& options)
{
    const Eigen::MatrixXd W = rate_generator(config);
    const int d = config.dim;

    std::vector<int> kept;
    for (int n = 0; n < d; ++n) {
        if (in_sector(n, sector)) kept.push_back(n);
    }
    const auto m = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixXd Ws(m, m);
    for (Eigen::Index c = 0; c < m; ++c) {
        for (Eigen::Index r = 0; r < m; ++r) Ws(r, c) = W(kept[r], kept[c]);
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(Ws, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cutoff = options.nullity_threshold * s.maxCoeff();
    const int null_count = count_null(s, cutoff);
    if (null_count == 0) {
        throw NonConvergent("rate generator has no stationary distribution in the "
                            + std::string(to_string(sector)) + " sector");
    }
    if (null_count > 1) {
        throw DegenerateSteadyState("stationary distribution is not unique: nullity "
                                    + std::to_string(null_count));
    }

    Eigen::VectorXd q = svd.matrixV().col(m - 1);
    q /= q.sum();
    for (Eigen::Index k = 0; k < m; ++k) {
        if (q(k) < -PopulationVector::kNegativeTol) {
            throw NonConvergent("negative stationary probability " + std::to_string(q(k)));
        }
        if (q(k) < 0.0) q(k) = 0.0;
    }
    q /= q.sum();

    const double residual = (Ws * q).norm();
    if (!(residual <= options.residual_tolerance * Ws.norm())) {
        throw NonConvergent("rate-equation residual " + std::to_string(residual) + " too large");
    }

    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    for (Eigen::Index k = 0; k < m; ++k) p(kept[k]) = q(k);
    return PopulationVector(std::move(p));
}

int convergence_check(const ModelConfig& config, double tolerance, const ConvergenceOptions& options)
{
    if (!(tolerance > 0.0)) throw InvalidArgument("convergence tolerance must be positive");
    const Sector sector = default_sector(config);

    struct Observables {
        double mean_n, J_left, J_right;
    };
    std::map<int, Observables> cache;
    auto observe = [&](int d) {
        if (auto it = cache.find(d); it != cache.end()) return it->second;
        const ModelConfig probe = config.with_dim(d);
        const Eigen::VectorXd p = solve_rate_equation(probe, sector).values();
        const Observables o{population_moments(p).mean_n,
                            population_heat_current(p, probe, Side::Left).current,
                            population_heat_current(p, probe, Side::Right).current};
        cache.emplace(d, o);
        return o;
    };

    for (int d = FockSpace::kMinDim; d + options.probe_step <= options.max_dim; ++d) {
        const Observables a = observe(d);
        const Observables b = observe(d + options.probe_step);
        if (std::abs(a.mean_n - b.mean_n) < tolerance && std::abs(a.J_left - b.J_left) < tolerance
            && std::abs(a.J_right - b.J_right) < tolerance) {
            return d;
        }
    }
    throw CutoffExceeded("no Fock cutoff below " + std::to_string(options.max_dim)
                         + " converges to tolerance " + std::to_string(tolerance));
}

} // namespace thermoflux
