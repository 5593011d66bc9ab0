#include "qps/thermal_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qps {

namespace {

// Half-width where the classical density has decayed to ~e^{-26} of its peak.
double decay_halfwidth_x(const HamiltonianSpec& h, double beta) {
    double vmin = potential_at(h, 0.0);
    for (double x = -50.0; x <= 50.0; x += 0.05)
        vmin = std::min(vmin, potential_at(h, x));
    double half = 1.0;
    while (half < 1000.0) {
        const double worst = std::min(potential_at(h, half), potential_at(h, -half)) - vmin;
        if (beta * worst >= 26.0) break;
        half += 0.25;
    }
    return half;
}

} // namespace

PhaseDistribution classical_gibbs(const HamiltonianSpec& h, double beta, const PhaseGrid& grid,
                                  SystemUnits u) {
    h.validate(false);
    if (!(beta > 0.0)) throw std::invalid_argument("classical_gibbs: beta must be positive");
    Eigen::MatrixXd values(grid.nx, grid.np);
    double e_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.nx; ++i) e_min = std::min(e_min, potential_at(h, grid.x(i)));
    for (int i = 0; i < grid.nx; ++i) {
        const double vx = potential_at(h, grid.x(i));
        for (int j = 0; j < grid.np; ++j) {
            const double e = grid.p(j) * grid.p(j) / (2.0 * h.mass) + vx;
            values(i, j) = std::exp(-beta * (e - e_min));
        }
    }
    values /= values.sum() * grid.cell();
    return make_distribution(grid, values, u);
}

ThermalCurve thermal_wigner_correction(const HamiltonianSpec& h, const std::vector<double>& betas,
                                       int dim, SystemUnits u, int n_grid) {
    h.validate(false);
    u.validate();
    if (betas.size() < 3)
        throw std::invalid_argument("thermal_wigner_correction: need at least three betas");
    for (std::size_t k = 0; k < betas.size(); ++k) {
        if (!(betas[k] > 0.0))
            throw std::invalid_argument("thermal_wigner_correction: betas must be positive");
        if (k > 0 && !(betas[k] < betas[k - 1]))
            throw std::invalid_argument(
                "thermal_wigner_correction: betas must be strictly decreasing");
    }

    // Size the shared grid from the hottest member, with a quantum-width floor.
    // The floor is 10 widths: hot anharmonic states populate Fock levels whose
    // position tails reach past the classical decay length.
    const double beta_min = betas.back();
    const double x_half = std::max(decay_halfwidth_x(h, beta_min), 10.0 * u.width_x());
    const double p_half =
        std::max(std::sqrt(52.0 * h.mass / beta_min), 10.0 * u.width_p());
    const PhaseGrid grid = PhaseGrid::centered(x_half, p_half, n_grid, n_grid);

    const CMat ham = hamiltonian_matrix(h, dim, u);
    ThermalCurve curve;
    curve.grid = grid;
    for (const double beta : betas) {
        const FockState gs = gibbs_state(ham, beta, u);
        const QuasiDistribution w = wigner_from_state(gs, grid);
        Eigen::MatrixXd wn = w.values / (w.values.sum() * grid.cell());
        const PhaseDistribution cl = classical_gibbs(h, beta, grid, u);
        const double dist = (wn - cl.values).cwiseAbs().maxCoeff();
        curve.points.push_back({beta, dist});
    }

    std::vector<double> bs, ds;
    for (std::size_t k = betas.size() - 3; k < betas.size(); ++k) {
        bs.push_back(curve.points[k].beta);
        ds.push_back(curve.points[k].distance);
    }
    curve.small_beta_slope = loglog_slope(bs, ds);
    return curve;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need two or more matched points");
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < n; ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0))
            throw std::invalid_argument("loglog_slope: points must be positive");
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace qps
