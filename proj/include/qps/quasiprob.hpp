#pragma once

#include "qps/fock.hpp"
#include "qps/grid.hpp"

namespace qps {

enum class QuasiKind { wigner, husimi };

/// Real phase-space quasiprobability sampled at grid cell centers. Values
/// are densities over (x, p): the midpoint sum times the cell area is one.
struct QuasiDistribution {
    PhaseGrid grid;
    Eigen::MatrixXd values; // nx rows (x index), np cols (p index)
    QuasiKind kind = QuasiKind::wigner;
    SystemUnits units;

    double value(int i, int j) const { return values(i, j); }
};

/// Validate shape, normalization (1e-6) and, for Husimi data, positivity
/// down to -1e-9. Every producer in this module ends here.
QuasiDistribution make_quasi(PhaseGrid grid, Eigen::MatrixXd values, QuasiKind kind,
                             SystemUnits units);

/// The single place where phase-space points become coherent-state labels:
/// alpha = sqrt(m omega / 2 hbar) (x + i p / (m omega)).
Cplx alpha_from_xp(double x, double p, const SystemUnits& u);

/// Wigner function W(x,p) = (1/pi hbar) Int dy exp(-2ipy/hbar) <x+y|rho|x-y>,
/// with the bra-kets built from truncated oscillator eigenfunctions and the
/// y integral taken as a discrete Fourier sum on a grid-commensurate y axis.
/// Throws when the grid cannot resolve the state (spacing refusals carry the
/// required resolution in the message); warns on stderr when the grid looks
/// too small for the state's support.
QuasiDistribution wigner_from_state(const FockState& s, const PhaseGrid& grid);

/// Husimi function Q(x,p) = <alpha|rho|alpha> / (2 pi hbar).
QuasiDistribution husimi_from_state(const FockState& s, const PhaseGrid& grid);

/// Gaussian smoothing of a Wigner function into the matching Husimi
/// function, evaluated as a discrete-Fourier-domain convolution with the
/// ground-state kernel. Requires the input's support to sit at least four
/// kernel widths inside the grid; the error message names the padding.
QuasiDistribution weierstrass(const QuasiDistribution& wigner);

struct NegativityReport {
    double neg_volume = 0.0; ///< integral of max(0, -W)
    double neg_area = 0.0;   ///< total area of cells with W < 0
    double min_value = 0.0;
    double min_x = 0.0;
    double min_p = 0.0;
};
/// Cells with value below -rel_floor * max|value| count as negative; the floor
/// keeps underflowed far tails (whose computed sign is noise) out of the tally.
NegativityReport negativity_report(const QuasiDistribution& q, double rel_floor = 1e-12);

/// Midpoint-rule mass of the sampled distribution.
double quad_integral(const QuasiDistribution& q);
/// Midpoint moment <x^k p^l>.
double quad_moment(const QuasiDistribution& q, int k, int l);
/// Anti-normal moment Int alpha^n conj(alpha)^m Q dx dp of a Husimi function.
Cplx grid_antinormal_moment(const QuasiDistribution& husimi, int n, int m);

Eigen::VectorXd marginal_x(const QuasiDistribution& q); ///< dp-integrated rows
Eigen::VectorXd marginal_p(const QuasiDistribution& q); ///< dx-integrated cols

/// Diagonal <x|rho|x> (resp. <p|rho|p>) at the grid's cell centers.
Eigen::VectorXd position_density(const FockState& s, const PhaseGrid& grid);
Eigen::VectorXd momentum_density(const FockState& s, const PhaseGrid& grid);

/// Zero-padded Gaussian convolution on a grid-sampled field (kernel std
/// deviations in axis units). Shared by the Weierstrass transform and the
/// classicalizing channel's real-space route.
Eigen::MatrixXd gaussian_smooth(const Eigen::MatrixXd& values, const PhaseGrid& grid,
                                double sigma_x, double sigma_p);

} // namespace qps
