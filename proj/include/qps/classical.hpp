#pragma once

#include "qps/fock.hpp"
#include "qps/grid.hpp"

#include <Eigen/Dense>
#include <utility>

namespace qps {

/// Classical probability density sampled at grid cell centers.
struct PhaseDistribution {
    PhaseGrid grid;
    Eigen::MatrixXd values; // nx rows (x index), np cols (p index)
    SystemUnits units;

    double value(int i, int j) const { return values(i, j); }
};

/// Validates shape, nonnegativity, and unit mass (within 1e-6).
PhaseDistribution make_distribution(PhaseGrid grid, Eigen::MatrixXd values,
                                    SystemUnits units = {});

/// z -> linear z + shift on the (x, p) plane.
struct AffineMap2D {
    Eigen::Matrix2d linear;
    Eigen::Vector2d shift = Eigen::Vector2d::Zero();
};

AffineMap2D make_affine(const Eigen::Matrix2d& linear,
                        const Eigen::Vector2d& shift = Eigen::Vector2d::Zero());

/// Entropy in nats against the Planck-cell reference measure:
/// -sum rho ln(2 pi hbar rho) cell, with 0 ln 0 = 0. A density spread evenly
/// over W Planck cells scores ln W; the value is unbounded below.
double shannon_entropy(const PhaseDistribution& rho);

/// Push-forward rho'(z) = rho(R^-1 z)/|det R|, sampled by inverse-map bilinear
/// interpolation. The two-argument form places the result on the image of the
/// source grid's bounding box (same point counts), so diagonal stretches land
/// on exact nodes; the three-argument form uses the given target grid and
/// throws if the mapped support does not fit it.
PhaseDistribution apply_map(const PhaseDistribution& rho, const AffineMap2D& r);
PhaseDistribution apply_map(const PhaseDistribution& rho, const AffineMap2D& r,
                            const PhaseGrid& target);

/// Determinant of the linear part, and the Poisson bracket {R(x), R(p)}
/// computed from it. These agree identically for affine maps.
std::pair<double, double> jacobian_and_bracket(const AffineMap2D& r);

/// Grid quadrature of x^n p^m rho (raw moment about the origin).
double central_moment(const PhaseDistribution& rho, int n, int m);

/// Splits an expanding map into canonical and pure-stretch factors
/// R = T o U with T = diag(sqrt(det), sqrt(det)) and det U = 1.
/// Returns (U, T); throws if det(R) <= 1.
std::pair<AffineMap2D, AffineMap2D> decompose_stretch(const AffineMap2D& r);

/// Normalized Gaussian test density with the given widths and center.
PhaseDistribution gaussian_distribution(const PhaseGrid& grid, double sigma_x, double sigma_p,
                                        double cx = 0.0, double cp = 0.0, SystemUnits units = {});

} // namespace qps
