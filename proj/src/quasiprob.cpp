#include "qps/quasiprob.hpp"

#include "qps/fourier.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <sstream>

namespace qps {

namespace {

constexpr double kPi = std::numbers::pi;

using RowMajorXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Oscillator eigenfunctions in the dimensionless coordinate xi = x/width_x,
// normalized against d(xi). The three-term recurrence acts on the functions
// themselves (never on bare Hermite polynomials), so nothing overflows for
// any dim used here; far tails underflow harmlessly to zero.
void hermite_row(double xi, Eigen::Ref<Eigen::RowVectorXd> out) {
    const int dim = static_cast<int>(out.size());
    const double g = std::exp(-0.5 * xi * xi);
    out(0) = std::pow(kPi, -0.25) * g;
    if (dim > 1) out(1) = std::sqrt(2.0) * xi * out(0);
    for (int n = 2; n < dim; ++n)
        out(n) = std::sqrt(2.0 / n) * xi * out(n - 1) - std::sqrt((n - 1.0) / n) * out(n - 2);
}

// Radius, in width units, beyond which |psi_n|^2 has fallen under 1e-12 of
// its peak: the WKB tunneling action S = int_c^x sqrt(t^2 - c^2) dt with
// c^2 = 2n + 1 reaches ln(1e12)/2. This is the same 1e-12 tail convention
// effective_cutoff uses for occupation. A flat padding over sqrt(2n + 1)
// would be wrong at both ends: the ground state needs 4.5 widths past its
// turning point while n = 63 needs only 2.5, and overpadding there starves
// large thermal states of grid room.
double support_radius(int n) {
    const double c2 = 2.0 * n + 1.0;
    const double c = std::sqrt(c2);
    const double target = 0.5 * std::log(1e12);
    auto action = [&](double x) {
        const double s = std::sqrt(x * x - c2);
        return 0.5 * (x * s - c2 * std::log((x + s) / c));
    };
    double lo = c, hi = c + 6.0; // the padding is 4.53 at n = 0 and shrinks
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (action(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Advisory only: the hard gate is the normalization check in make_quasi.
// Measured from the marginals rather than a sigma box, which overstates the
// spread of anything bimodal.
void warn_if_support_clipped(const FockState& s, const PhaseGrid& g, const char* who) {
    const double mx = position_density(s, g).sum() * g.dx();
    const double mp = momentum_density(s, g).sum() * g.dp();
    if (1.0 - mx > 1e-7 || 1.0 - mp > 1e-7)
        std::cerr << who << ": warning: grid may clip the state's support "
                  << "(marginal mass on grid: x " << mx << ", p " << mp << ")\n";
}

} // namespace

QuasiDistribution make_quasi(PhaseGrid grid, Eigen::MatrixXd values, QuasiKind kind,
                             SystemUnits units) {
    grid.validate();
    units.validate();
    if (values.rows() != grid.nx || values.cols() != grid.np)
        throw std::invalid_argument("make_quasi: value shape does not match grid");

    const double mass = values.sum() * grid.cell();
    if (std::abs(mass - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "make_quasi: mass " << mass << " deviates from one by more than 1e-6 "
            << "(grid too small or too coarse for this state)";
        throw std::invalid_argument(msg.str());
    }
    if (kind == QuasiKind::husimi && values.minCoeff() < -1e-9) {
        std::ostringstream msg;
        msg << "make_quasi: husimi values reach " << values.minCoeff() << " below -1e-9";
        throw std::invalid_argument(msg.str());
    }
    return QuasiDistribution{grid, std::move(values), kind, units};
}

Cplx alpha_from_xp(double x, double p, const SystemUnits& u) {
    return std::sqrt(u.mass * u.omega / (2.0 * u.hbar)) * Cplx(x, p / (u.mass * u.omega));
}

QuasiDistribution wigner_from_state(const FockState& s, const PhaseGrid& grid) {
    grid.validate();
    const SystemUnits& u = s.units;
    const int dim = s.dim();
    const double hbar = u.hbar;
    const double dx = grid.dx();

    const int n_eff = effective_cutoff(s);
    const double r_eff = u.width_x() * support_radius(n_eff);
    const double p_eff = u.width_p() * support_radius(n_eff);

    // The grid must sample the fastest oscillation the state can put into W:
    // frequency (2 y)/hbar in p with |y| up to the support radius, and the
    // mirror statement in x. Coarser grids alias the midpoint sums.
    if (grid.dp() > kPi * hbar / r_eff) {
        std::ostringstream msg;
        msg << "wigner_from_state: dp " << grid.dp() << " too coarse for occupation "
            << n_eff << "; need dp <= " << kPi * hbar / r_eff;
        throw std::invalid_argument(msg.str());
    }
    if (dx > kPi * hbar / p_eff) {
        std::ostringstream msg;
        msg << "wigner_from_state: dx " << dx << " too coarse for occupation "
            << n_eff << "; need dx <= " << kPi * hbar / p_eff;
        throw std::invalid_argument(msg.str());
    }
    warn_if_support_clipped(s, grid, "wigner_from_state");

    // y axis commensurate with the x grid: h = dx / 2^q, fine enough that the
    // aliased copies of W sit beyond the state's momentum support.
    const double p_abs = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
    const double h_max = kPi * hbar / (p_abs + p_eff);
    int q = 1;
    while (dx / (1 << q) > h_max && q < 8) ++q;
    if (dx / (1 << q) > h_max)
        throw std::invalid_argument("wigner_from_state: grid spacing pathologically coarse");
    const double h = dx / (1 << q);
    const int K = static_cast<int>(std::ceil(r_eff / h));

    // sample points S_m = x_min + m h; row i's center is m = (2i+1) 2^(q-1)
    const int c0 = 1 << (q - 1);
    const int m_lo = c0 - K;
    const int m_hi = (2 * (grid.nx - 1) + 1) * c0 + K;
    const int n_ext = m_hi - m_lo + 1;

    RowMajorXd phi(n_ext, dim);
    const double wx = u.width_x();
    const double phys = 1.0 / std::sqrt(wx);
    for (int t = 0; t < n_ext; ++t) {
        hermite_row((grid.x_min + (m_lo + t) * h) / wx, phi.row(t));
        phi.row(t) *= phys;
    }

    // P = rho phi^T via two real products
    const Eigen::MatrixXd pr = s.rho.real() * phi.transpose();
    const Eigen::MatrixXd pi_ = s.rho.imag() * phi.transpose();

    // phase tables over (p index, y index), shared by every x row
    Eigen::MatrixXd cos_t(grid.np, K + 1), sin_t(grid.np, K + 1);
    for (int j = 0; j < grid.np; ++j)
        for (int k = 0; k <= K; ++k) {
            const double theta = 2.0 * grid.p(j) * k * h / hbar;
            cos_t(j, k) = std::cos(theta);
            sin_t(j, k) = std::sin(theta);
        }

    Eigen::MatrixXd w(grid.nx, grid.np);
    Eigen::VectorXd b_re(K + 1), b_im(K + 1);
    for (int i = 0; i < grid.nx; ++i) {
        const int c = (2 * i + 1) * c0 - m_lo;
        for (int k = 0; k <= K; ++k) {
            const double scale = (k == 0) ? 1.0 : 2.0; // y and -y fold together
            b_re(k) = scale * phi.row(c + k).dot(pr.col(c - k));
            b_im(k) = scale * phi.row(c + k).dot(pi_.col(c - k));
        }
        w.row(i) = (h / (kPi * hbar)) * (cos_t * b_re + sin_t * b_im).transpose();
    }
    return make_quasi(grid, std::move(w), QuasiKind::wigner, u);
}

QuasiDistribution husimi_from_state(const FockState& s, const PhaseGrid& grid) {
    grid.validate();
    const SystemUnits& u = s.units;
    const int dim = s.dim();
    warn_if_support_clipped(s, grid, "husimi_from_state");

    Eigen::MatrixXd qv(grid.nx, grid.np);
    CMat c(grid.np, dim);
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.np; ++j) {
            const Cplx alpha = alpha_from_xp(grid.x(i), grid.p(j), u);
            c(j, 0) = std::exp(-0.5 * std::norm(alpha));
            for (int n = 1; n < dim; ++n) c(j, n) = c(j, n - 1) * alpha / std::sqrt(double(n));
        }
        const CMat d = c.conjugate() * s.rho;
        qv.row(i) = (d.cwiseProduct(c)).rowwise().sum().real().transpose() /
                    (2.0 * kPi * u.hbar);
    }
    return make_quasi(grid, std::move(qv), QuasiKind::husimi, u);
}

Eigen::MatrixXd gaussian_smooth(const Eigen::MatrixXd& values, const PhaseGrid& grid,
                                double sigma_x, double sigma_p) {
    const int pad_x = static_cast<int>(std::ceil(6.0 * sigma_x / grid.dx())) + 1;
    const int pad_p = static_cast<int>(std::ceil(6.0 * sigma_p / grid.dp())) + 1;
    const int nx = grid.nx + 2 * pad_x;
    const int np = grid.np + 2 * pad_p;

    Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(nx, np);
    f.block(pad_x, pad_p, grid.nx, grid.np) = values.cast<Cplx>();
    fft::dft2(f, -1);

    const Eigen::VectorXd kx = fft::freq(nx, grid.dx());
    const Eigen::VectorXd kp = fft::freq(np, grid.dp());
    for (int b = 0; b < np; ++b)
        for (int a = 0; a < nx; ++a)
            f(a, b) *= std::exp(-0.5 * (sigma_x * sigma_x * kx(a) * kx(a) +
                                        sigma_p * sigma_p * kp(b) * kp(b)));

    fft::dft2(f, +1);
    f /= double(nx) * double(np);
    return f.block(pad_x, pad_p, grid.nx, grid.np).real();
}

QuasiDistribution weierstrass(const QuasiDistribution& wigner) {
    if (wigner.kind != QuasiKind::wigner)
        throw std::invalid_argument("weierstrass: input must be a Wigner function");
    const SystemUnits& u = wigner.units;
    const double sigma_x = u.width_x() / std::sqrt(2.0);
    const double sigma_p = u.width_p() / std::sqrt(2.0);

    // locate the support bounding box and require four kernel widths of margin
    const double thresh = 1e-12 * wigner.values.cwiseAbs().maxCoeff();
    const PhaseGrid& g = wigner.grid;
    double sup_x_lo = g.x_max, sup_x_hi = g.x_min, sup_p_lo = g.p_max, sup_p_hi = g.p_min;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.np; ++j)
            if (std::abs(wigner.values(i, j)) > thresh) {
                sup_x_lo = std::min(sup_x_lo, g.x(i));
                sup_x_hi = std::max(sup_x_hi, g.x(i));
                sup_p_lo = std::min(sup_p_lo, g.p(j));
                sup_p_hi = std::max(sup_p_hi, g.p(j));
            }
    const double need_x = 4.0 * sigma_x, need_p = 4.0 * sigma_p;
    const double have_x = std::min(sup_x_lo - g.x_min, g.x_max - sup_x_hi);
    const double have_p = std::min(sup_p_lo - g.p_min, g.p_max - sup_p_hi);
    if (have_x < need_x || have_p < need_p) {
        std::ostringstream msg;
        msg << "weierstrass: insufficient grid margin; pad x by >= " << need_x - have_x
            << " and p by >= " << need_p - have_p;
        throw std::invalid_argument(msg.str());
    }

    Eigen::MatrixXd smoothed = gaussian_smooth(wigner.values, g, sigma_x, sigma_p);
    return make_quasi(g, std::move(smoothed), QuasiKind::husimi, u);
}

NegativityReport negativity_report(const QuasiDistribution& q, double rel_floor) {
    NegativityReport r;
    r.min_value = q.values(0, 0);
    r.min_x = q.grid.x(0);
    r.min_p = q.grid.p(0);
    const double cell = q.grid.cell();
    // ignore cells whose magnitude sits at the noise floor: far tails underflow
    // and come back from the quadrature with arbitrary sign
    const double floor_ = rel_floor * q.values.cwiseAbs().maxCoeff();
    for (int i = 0; i < q.grid.nx; ++i)
        for (int j = 0; j < q.grid.np; ++j) {
            const double v = q.values(i, j);
            if (v < -floor_) {
                r.neg_volume -= v * cell;
                r.neg_area += cell;
            }
            if (v < r.min_value) {
                r.min_value = v;
                r.min_x = q.grid.x(i);
                r.min_p = q.grid.p(j);
            }
        }
    return r;
}

double quad_integral(const QuasiDistribution& q) { return q.values.sum() * q.grid.cell(); }

double quad_moment(const QuasiDistribution& q, int k, int l) {
    double acc = 0.0;
    for (int i = 0; i < q.grid.nx; ++i) {
        const double xk = std::pow(q.grid.x(i), k);
        for (int j = 0; j < q.grid.np; ++j)
            acc += xk * std::pow(q.grid.p(j), l) * q.values(i, j);
    }
    return acc * q.grid.cell();
}

Cplx grid_antinormal_moment(const QuasiDistribution& husimi, int n, int m) {
    if (husimi.kind != QuasiKind::husimi)
        throw std::invalid_argument("grid_antinormal_moment: input must be a Husimi function");
    Cplx acc = 0.0;
    for (int i = 0; i < husimi.grid.nx; ++i)
        for (int j = 0; j < husimi.grid.np; ++j) {
            const Cplx a = alpha_from_xp(husimi.grid.x(i), husimi.grid.p(j), husimi.units);
            acc += std::pow(a, n) * std::pow(std::conj(a), m) * husimi.values(i, j);
        }
    return acc * husimi.grid.cell();
}

Eigen::VectorXd marginal_x(const QuasiDistribution& q) {
    return q.values.rowwise().sum() * q.grid.dp();
}

Eigen::VectorXd marginal_p(const QuasiDistribution& q) {
    return q.values.colwise().sum().transpose() * q.grid.dx();
}

Eigen::VectorXd position_density(const FockState& s, const PhaseGrid& grid) {
    const int dim = s.dim();
    const double wx = s.units.width_x();
    Eigen::VectorXd out(grid.nx);
    Eigen::RowVectorXd row(dim);
    for (int i = 0; i < grid.nx; ++i) {
        hermite_row(grid.x(i) / wx, row);
        row /= std::sqrt(wx);
        out(i) = (row * s.rho.real() * row.transpose())(0);
    }
    return out;
}

Eigen::VectorXd momentum_density(const FockState& s, const PhaseGrid& grid) {
    const int dim = s.dim();
    const double wp = s.units.width_p();
    Eigen::VectorXd out(grid.np);
    Eigen::RowVectorXd row(dim);
    CVec v(dim);
    const Cplx iu(0.0, 1.0);
    for (int j = 0; j < grid.np; ++j) {
        hermite_row(grid.p(j) / wp, row);
        Cplx ph = 1.0;
        for (int n = 0; n < dim; ++n, ph *= iu) v(n) = ph * row(n);
        out(j) = (v.adjoint() * s.rho * v)(0).real() / wp;
    }
    return out;
}

} // namespace qps
