#include "qps/classical.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// corners of the grid's bounding box, mapped through r
std::pair<Eigen::Vector2d, Eigen::Vector2d> image_box(const PhaseGrid& g, const AffineMap2D& r) {
    Eigen::Vector2d lo(std::numeric_limits<double>::max(), std::numeric_limits<double>::max());
    Eigen::Vector2d hi = -lo;
    for (double x : {g.x_min, g.x_max})
        for (double p : {g.p_min, g.p_max}) {
            const Eigen::Vector2d z = r.linear * Eigen::Vector2d(x, p) + r.shift;
            lo = lo.cwiseMin(z);
            hi = hi.cwiseMax(z);
        }
    return {lo, hi};
}

} // namespace

PhaseDistribution make_distribution(PhaseGrid grid, Eigen::MatrixXd values, SystemUnits units) {
    grid.validate();
    units.validate();
    if (values.rows() != grid.nx || values.cols() != grid.np)
        throw std::invalid_argument("make_distribution: value shape does not match grid");
    if (values.minCoeff() < 0.0)
        throw std::invalid_argument("make_distribution: densities must be nonnegative");
    const double mass = values.sum() * grid.cell();
    if (std::abs(mass - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "make_distribution: mass " << mass << " deviates from one by more than 1e-6";
        throw std::invalid_argument(msg.str());
    }
    return PhaseDistribution{grid, std::move(values), units};
}

AffineMap2D make_affine(const Eigen::Matrix2d& linear, const Eigen::Vector2d& shift) {
    if (linear.determinant() == 0.0)
        throw std::invalid_argument("make_affine: linear part must be invertible");
    return AffineMap2D{linear, shift};
}

double shannon_entropy(const PhaseDistribution& rho) {
    const double href = kTwoPi * rho.units.hbar;
    double s = 0.0;
    for (int i = 0; i < rho.grid.nx; ++i)
        for (int j = 0; j < rho.grid.np; ++j) {
            const double v = rho.values(i, j);
            if (v > 0.0) s -= v * std::log(href * v);
        }
    return s * rho.grid.cell();
}

PhaseDistribution apply_map(const PhaseDistribution& rho, const AffineMap2D& r) {
    const auto [lo, hi] = image_box(rho.grid, r);
    PhaseGrid target;
    target.x_min = lo(0);
    target.x_max = hi(0);
    target.p_min = lo(1);
    target.p_max = hi(1);
    target.nx = rho.grid.nx;
    target.np = rho.grid.np;
    return apply_map(rho, r, target);
}

PhaseDistribution apply_map(const PhaseDistribution& rho, const AffineMap2D& r,
                            const PhaseGrid& target) {
    const PhaseGrid& g = rho.grid;
    const double det = r.linear.determinant();

    // mapped support must fit: check the image of the smallest box holding
    // every cell that carries mass
    double sx_lo = g.x_max, sx_hi = g.x_min, sp_lo = g.p_max, sp_hi = g.p_min;
    const double floor_ = 1e-15 * rho.values.maxCoeff();
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.np; ++j)
            if (rho.values(i, j) > floor_) {
                sx_lo = std::min(sx_lo, g.x(i));
                sx_hi = std::max(sx_hi, g.x(i));
                sp_lo = std::min(sp_lo, g.p(j));
                sp_hi = std::max(sp_hi, g.p(j));
            }
    Eigen::Vector2d img_lo(std::numeric_limits<double>::max(),
                           std::numeric_limits<double>::max());
    Eigen::Vector2d img_hi = -img_lo;
    for (double x : {sx_lo, sx_hi})
        for (double p : {sp_lo, sp_hi}) {
            const Eigen::Vector2d z = r.linear * Eigen::Vector2d(x, p) + r.shift;
            img_lo = img_lo.cwiseMin(z);
            img_hi = img_hi.cwiseMax(z);
        }
    if (img_lo(0) < target.x_min || img_hi(0) > target.x_max || img_lo(1) < target.p_min ||
        img_hi(1) > target.p_max) {
        std::ostringstream msg;
        msg << "apply_map: mapped support needs x in [" << img_lo(0) << ", " << img_hi(0)
            << "], p in [" << img_lo(1) << ", " << img_hi(1) << "] but the target grid covers x in ["
            << target.x_min << ", " << target.x_max << "], p in [" << target.p_min << ", "
            << target.p_max << "]";
        throw std::invalid_argument(msg.str());
    }

    const Eigen::Matrix2d inv = r.linear.inverse();
    Eigen::MatrixXd out(target.nx, target.np);
    const double dx = g.dx(), dp = g.dp();
    for (int i = 0; i < target.nx; ++i)
        for (int j = 0; j < target.np; ++j) {
            const Eigen::Vector2d z =
                inv * (Eigen::Vector2d(target.x(i), target.p(j)) - r.shift);
            // fractional source-cell coordinates
            const double fx = (z(0) - g.x(0)) / dx;
            const double fp = (z(1) - g.p(0)) / dp;
            const int a = static_cast<int>(std::floor(fx));
            const int b = static_cast<int>(std::floor(fp));
            double v = 0.0;
            if (a >= -1 && a < g.nx && b >= -1 && b < g.np) {
                const double tx = fx - a, tp = fp - b;
                auto at = [&](int ii, int jj) {
                    return (ii >= 0 && ii < g.nx && jj >= 0 && jj < g.np) ? rho.values(ii, jj)
                                                                          : 0.0;
                };
                v = (1 - tx) * (1 - tp) * at(a, b) + tx * (1 - tp) * at(a + 1, b) +
                    (1 - tx) * tp * at(a, b + 1) + tx * tp * at(a + 1, b + 1);
            }
            out(i, j) = v / std::abs(det);
        }
    return make_distribution(target, std::move(out), rho.units);
}

std::pair<double, double> jacobian_and_bracket(const AffineMap2D& r) {
    const double jac = r.linear.determinant();
    // {R(x), R(p)} = dR(x)/dx dR(p)/dp - dR(x)/dp dR(p)/dx
    const double bracket = r.linear(0, 0) * r.linear(1, 1) - r.linear(0, 1) * r.linear(1, 0);
    return {jac, bracket};
}

double central_moment(const PhaseDistribution& rho, int n, int m) {
    if (n + m > 8)
        throw std::invalid_argument("central_moment: grid quadrature is unreliable past order 8");
    double acc = 0.0;
    for (int i = 0; i < rho.grid.nx; ++i) {
        const double xn = std::pow(rho.grid.x(i), n);
        for (int j = 0; j < rho.grid.np; ++j)
            acc += xn * std::pow(rho.grid.p(j), m) * rho.values(i, j);
    }
    return acc * rho.grid.cell();
}

std::pair<AffineMap2D, AffineMap2D> decompose_stretch(const AffineMap2D& r) {
    const double det = r.linear.determinant();
    if (det <= 1.0)
        throw std::invalid_argument("decompose_stretch: map does not expand (det <= 1)");
    const double root = std::sqrt(det);
    AffineMap2D t{Eigen::Matrix2d::Identity() * root, Eigen::Vector2d::Zero()};
    AffineMap2D u{r.linear / root, r.shift / root};
    return {u, t};
}

PhaseDistribution gaussian_distribution(const PhaseGrid& grid, double sigma_x, double sigma_p,
                                        double cx, double cp, SystemUnits units) {
    Eigen::MatrixXd v(grid.nx, grid.np);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.np; ++j) {
            const double ax = (grid.x(i) - cx) / sigma_x;
            const double ap = (grid.p(j) - cp) / sigma_p;
            v(i, j) = std::exp(-0.5 * (ax * ax + ap * ap));
        }
    v /= v.sum() * grid.cell();
    return make_distribution(grid, std::move(v), units);
}

} // namespace qps
