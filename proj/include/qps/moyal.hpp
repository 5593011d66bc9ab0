#pragma once

#include "qps/hamiltonian.hpp"
#include "qps/quasiprob.hpp"

namespace qps {

/// Classical advection field {H, W} = V'(x) dW/dp - (p/m) dW/dx evaluated
/// spectrally. The input must be a Wigner-kind distribution whose support has
/// decayed below 1e-10 of its peak on the outermost grid cells, since the
/// Fourier derivatives wrap periodically.
Eigen::MatrixXd poisson_rhs(const QuasiDistribution& w, const HamiltonianSpec& h);

/// Advection field plus the odd-order quantum corrections up to n = n_corr:
/// each term n carries hbar^(2n) (-1)^n / ((2n+1)! 2^(2n)) V^(2n+1) d^(2n+1)W/dp^(2n+1).
/// For a polynomial potential of degree <= 2 n_corr + 2 the truncation is exact.
/// n_corr may be 0 (pure advection) up to 2.
Eigen::MatrixXd moyal_rhs(const QuasiDistribution& w, const HamiltonianSpec& h, int n_corr);

/// Fixed-step split-spectral integration of dW/dt = moyal_rhs, accurate to
/// fourth order in the step: the kinetic and potential flows are applied as
/// exact Fourier phases, so mass is conserved to roundoff. Refuses dt above
/// 0.25 * min(dx * m / p_max, dp / max|V'|) (the message names the admissible
/// step), and demands the support stay inside the grid: the boundary ring is
/// checked against 1e-6 of the peak on the input and after every step, a
/// looser gate than the field routines' so one run's output can seed the
/// next. The grid mass must drift by less than 1e-6 over the run. Confining
/// potentials only, except the free particle.
QuasiDistribution evolve_wigner(const QuasiDistribution& w0, const HamiltonianSpec& h,
                                int n_corr, double t, double dt);

/// ||n=1 correction field||_2 / ||advection field||_2. Quadratic potentials
/// return exactly zero (the correction vanishes identically); a vanishing
/// advection field with a live correction is an error.
double classicality_ratio(const QuasiDistribution& w, const HamiltonianSpec& h);

}  // namespace qps
