#pragma once

#include "qps/fock.hpp"
#include "qps/quasiprob.hpp"

#include <functional>
#include <vector>

namespace qps {

struct JumpTerm {
    double rate; // > 0
    CMat op;
};

/// Open-system generator: optional Hamiltonian (empty matrix means none) plus
/// weighted jump operators, all sharing the state dimension.
struct LindbladSpec {
    CMat hamiltonian;
    std::vector<JumpTerm> jumps;
};

/// Amplifying channel, jumps = {raising} at the given rate.
LindbladSpec amplification_spec(int dim, double gamma);
/// Damping channel, jumps = {lowering}; decreases entropy for hot inputs.
LindbladSpec damping_spec(int dim, double gamma);

struct EvolveOptions {
    /// Refuse evolutions whose projected occupation exceeds this fraction of
    /// the space. The projection is exp(sum of rates * t) * (nbar + 1) - 1.
    double max_occupancy_fraction = 0.125;
    /// Called with (time, state) once before stepping and after every step.
    std::function<void(double, const FockState&)> observer;
};

/// Fixed-step fourth-order integration of drho/dt = -(i/hbar)[H, rho]
/// + sum_i rate_i (L rho L^+ - (L^+L rho + rho L^+L)/2). The state is
/// re-hermitized after every step; trace drift beyond 1e-9 or negative
/// eigenvalues below -1e-8 abort with an exception.
FockState lindblad_evolve(const FockState& s, const LindbladSpec& spec, double t, double dt,
                          const EvolveOptions& opts = {});

/// True when sum_i rate_i (L^+L - LL^+) is positive semidefinite on the block
/// that excludes the truncation corner; such generators never decrease
/// von Neumann entropy.
bool entropy_criterion(const LindbladSpec& spec);

/// Stretched Husimi function: (1/lambda) Q(z / sqrt(lambda)) resampled on the
/// same grid (bicubic). lambda = 1 reproduces the input exactly. Errors when
/// the stretched support would not fit the grid.
QuasiDistribution stretch_Q(const QuasiDistribution& q1, double lambda);

/// Stretched Wigner function: the same dilation followed by a Gaussian blur of
/// per-axis variance (lambda - 1)/2 in width units, applied as a real-space
/// separable convolution. Requires lambda > 1 (the kernel degenerates at 1)
/// and four kernel widths of grid margin around the stretched support.
QuasiDistribution stretch_W(const QuasiDistribution& w1, double lambda);

/// Tr(rho a^n (a^+)^m), evaluated in a space padded by m levels so the
/// operator product is exact for the embedded state. Warns on stderr when the
/// state's occupation tail reaches the truncation corner.
Cplx antinormal_moment(const FockState& s, int n, int m);

/// Unitary quadrature scaling X -> sqrt(alpha_sq) X, P -> P / sqrt(alpha_sq),
/// realized as exp((z/2)(a^+^2 - a^2)) with z = ln(alpha_sq)/2. Entropy is
/// untouched; occupation grows, so the same refusal gate as evolution applies.
FockState squeeze_unitary(const FockState& s, double alpha_sq,
                          double max_occupancy_fraction = 0.125);

struct CommutatorRescaleReport {
    double lambda;
    double effective_hbar;   // hbar / lambda
    double min_uncertainty;  // hbar / (2 lambda)
    double matrix_residual;  // deviation of [X/sqrt(l), P/sqrt(l)] from i hbar/l, corner excluded
};

/// The commutator and uncertainty floor seen by the rescaled quadratures,
/// cross-checked against explicit matrices at dim 16.
CommutatorRescaleReport commutator_rescale_report(double lambda, SystemUnits u = {});

/// Largest deviation between the Fourier ratio F(W_lambda)/F(dilated W_1) and
/// the Gaussian transfer the stretch is supposed to apply, over wavevectors
/// where the denominator is above 1e-6 of the zero mode. Small values confirm
/// the real-space convolution realizes the intended filter.
double bandwidth_filter_residual(const QuasiDistribution& w1, const QuasiDistribution& w_lam,
                                 double lambda);

struct MomentEntry {
    int n, m;
    Cplx before, after;
};

struct StretchReport {
    double lambda = 1.0;
    double entropy_before = 0.0, entropy_after = 0.0;
    std::vector<MomentEntry> antinormal_moments; // n + m <= 4
    double min_wigner = 0.0;
    double sup_dist_w_q = 0.0;
};

/// Evolves s through the amplifying channel to the given lambda = e^{gamma t}
/// and collects the before/after observables on the given grid.
StretchReport make_stretch_report(const FockState& s, double lambda, double gamma, double dt,
                                  const PhaseGrid& grid, const EvolveOptions& opts = {});

} // namespace qps
