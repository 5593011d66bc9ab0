#pragma once

#include "qps/classical.hpp"
#include "qps/hamiltonian.hpp"
#include "qps/quasiprob.hpp"

#include <vector>

namespace qps {

/// Boltzmann density e^{-beta (p^2/2m + V(x))} normalized on the grid.
PhaseDistribution classical_gibbs(const HamiltonianSpec& h, double beta, const PhaseGrid& grid,
                                  SystemUnits u = {});

struct ThermalCurvePoint {
    double beta;
    double distance; // sup |normalized quantum Wigner - classical Gibbs|
};

struct ThermalCurve {
    std::vector<ThermalCurvePoint> points; // in the order of the input betas
    double small_beta_slope;               // log-log fit over the three smallest betas
    PhaseGrid grid;                        // the common comparison grid
};

/// Distance between the thermal state's Wigner function and the classical
/// Gibbs density as the temperature rises. beta_list must be positive and
/// strictly decreasing; the grid is sized from the hottest (widest) member
/// and shared by every point so the curve is comparable.
ThermalCurve thermal_wigner_correction(const HamiltonianSpec& h, const std::vector<double>& betas,
                                       int dim, SystemUnits u = {}, int n_grid = 256);

/// Least-squares slope of ln(y) against ln(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace qps
