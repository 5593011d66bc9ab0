#include "qps/moyal.hpp"

#include "qps/fourier.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace qps {

namespace {

// Spectral derivatives wrap periodically, so the field must be dead at the
// boundary ring before they mean anything. tol is relative to the peak:
// caller-supplied fields must sit at 1e-10, while the evolution loop polices
// its running state at a looser 1e-6, which still flags genuine transport
// long before wrap-around feeds back into the interior.
void require_interior_support(const Eigen::MatrixXd& v, const char* who, double tol) {
    const double gmax = v.cwiseAbs().maxCoeff();
    double edge = v.row(0).cwiseAbs().maxCoeff();
    edge = std::max(edge, v.row(v.rows() - 1).cwiseAbs().maxCoeff());
    edge = std::max(edge, v.col(0).cwiseAbs().maxCoeff());
    edge = std::max(edge, v.col(v.cols() - 1).cwiseAbs().maxCoeff());
    if (edge > tol * gmax)
        throw std::invalid_argument(std::string(who) +
                                    ": support touches the grid edge; enlarge the grid "
                                    "until the field decays at the boundary");
}

Eigen::MatrixXd x_derivative(const Eigen::MatrixXd& v, const PhaseGrid& g) {
    Eigen::MatrixXcd f = v.cast<Cplx>();
    fft::dft_cols(f, -1);
    const Eigen::VectorXd kx = fft::freq(g.nx, g.dx());
    for (int i = 0; i < g.nx; ++i) f.row(i) *= Cplx(0.0, kx(i));
    // The Nyquist mode of an odd derivative has no symmetric partner; drop it.
    if (g.nx % 2 == 0) f.row(g.nx / 2).setZero();
    fft::dft_cols(f, +1);
    return f.real() / g.nx;
}

Eigen::MatrixXd p_derivative(const Eigen::MatrixXd& v, const PhaseGrid& g, int order) {
    Eigen::MatrixXcd f = v.cast<Cplx>();
    fft::dft_rows(f, -1);
    const Eigen::VectorXd kp = fft::freq(g.np, g.dp());
    for (int j = 0; j < g.np; ++j) f.col(j) *= std::pow(Cplx(0.0, kp(j)), order);
    if (order % 2 == 1 && g.np % 2 == 0) f.col(g.np / 2).setZero();
    fft::dft_rows(f, +1);
    return f.real() / g.np;
}

Eigen::MatrixXd rhs_core(const Eigen::MatrixXd& v, const PhaseGrid& g,
                         const HamiltonianSpec& h, int n_corr, double hbar,
                         const char* who) {
    require_interior_support(v, who, 1e-10);

    const Eigen::MatrixXd dxw = x_derivative(v, g);
    const Eigen::MatrixXd dpw = p_derivative(v, g, 1);
    Eigen::MatrixXd field(g.nx, g.np);
    for (int i = 0; i < g.nx; ++i) {
        const double slope = potential_derivative_at(h, g.x(i), 1);
        for (int j = 0; j < g.np; ++j)
            field(i, j) = slope * dpw(i, j) - (g.p(j) / h.mass) * dxw(i, j);
    }

    for (int n = 1; n <= n_corr; ++n) {
        const int order = 2 * n + 1;
        if (h.degree() < order) continue;  // the derivative is identically zero
        double fact = 1.0;
        for (int k = 2; k <= order; ++k) fact *= k;
        const double coef =
            (n % 2 ? -1.0 : 1.0) * std::pow(hbar, 2 * n) / (fact * std::pow(4.0, n));
        const Eigen::MatrixXd dnw = p_derivative(v, g, order);
        for (int i = 0; i < g.nx; ++i) {
            const double vd = potential_derivative_at(h, g.x(i), order);
            if (vd != 0.0) field.row(i) += (coef * vd) * dnw.row(i);
        }
    }
    return field;
}

// One substep of the split propagator. The kinetic flow multiplies the
// x-spectrum by a phase, and the potential flow, correction terms included,
// multiplies the p-spectrum by a phase: at fixed x every term is an odd
// p-derivative with an x-dependent coefficient, so the whole potential side
// is diagonal after the p-transform. Both factors have unit modulus, which
// makes the stepping unconditionally stable and conserves the total mass to
// roundoff (the zero mode is untouched). The round-trip FFT normalization is
// folded into the tables.
Eigen::MatrixXcd kinetic_phase(const PhaseGrid& g, double mass, double tau) {
    const Eigen::VectorXd kx = fft::freq(g.nx, g.dx());
    Eigen::MatrixXcd e(g.nx, g.np);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.np; ++j) {
            const double phi = -kx(i) * (g.p(j) / mass) * tau;
            // The Nyquist mode of a real field carries both signs of the
            // frequency at once; cos is its symmetric rotation.
            e(i, j) = (g.nx % 2 == 0 && i == g.nx / 2) ? Cplx(std::cos(phi), 0.0)
                                                       : std::polar(1.0, phi);
        }
    return e / static_cast<double>(g.nx);
}

Eigen::MatrixXcd potential_phase(const PhaseGrid& g, const HamiltonianSpec& h, int n_corr,
                                 double hbar, double tau) {
    const Eigen::VectorXd kp = fft::freq(g.np, g.dp());
    Eigen::MatrixXcd e(g.nx, g.np);
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        for (int j = 0; j < g.np; ++j) {
            double phi = potential_derivative_at(h, x, 1) * kp(j);
            for (int n = 1; n <= n_corr; ++n) {
                const int order = 2 * n + 1;
                if (h.degree() < order) continue;  // the derivative is identically zero
                double fact = 1.0;
                for (int k = 2; k <= order; ++k) fact *= k;
                phi += std::pow(hbar, 2 * n) / (fact * std::pow(4.0, n)) *
                       potential_derivative_at(h, x, order) * std::pow(kp(j), order);
            }
            phi *= tau;
            e(i, j) = (g.np % 2 == 0 && j == g.np / 2) ? Cplx(std::cos(phi), 0.0)
                                                       : std::polar(1.0, phi);
        }
    }
    return e / static_cast<double>(g.np);
}

void apply_kinetic(Eigen::MatrixXcd& f, const Eigen::MatrixXcd& phase) {
    fft::dft_cols(f, -1);
    f.array() *= phase.array();
    fft::dft_cols(f, +1);
}

void apply_potential(Eigen::MatrixXcd& f, const Eigen::MatrixXcd& phase) {
    fft::dft_rows(f, -1);
    f.array() *= phase.array();
    fft::dft_rows(f, +1);
}

void check_inputs(const QuasiDistribution& w, const HamiltonianSpec& h, int n_corr,
                  const char* who) {
    if (w.kind != QuasiKind::wigner)
        throw std::invalid_argument(std::string(who) + ": input must be a Wigner function");
    h.validate(false);
    if (n_corr < 0 || n_corr > 2)
        throw std::invalid_argument(std::string(who) + ": n_corr must be 0, 1, or 2");
}

}  // namespace

Eigen::MatrixXd poisson_rhs(const QuasiDistribution& w, const HamiltonianSpec& h) {
    check_inputs(w, h, 0, "poisson_rhs");
    return rhs_core(w.values, w.grid, h, 0, w.units.hbar, "poisson_rhs");
}

Eigen::MatrixXd moyal_rhs(const QuasiDistribution& w, const HamiltonianSpec& h, int n_corr) {
    check_inputs(w, h, n_corr, "moyal_rhs");
    return rhs_core(w.values, w.grid, h, n_corr, w.units.hbar, "moyal_rhs");
}

QuasiDistribution evolve_wigner(const QuasiDistribution& w0, const HamiltonianSpec& h,
                                int n_corr, double t, double dt) {
    check_inputs(w0, h, n_corr, "evolve_wigner");
    // Anything that exerts a force must confine, or the support escapes the
    // grid; a flat potential (free particle) is fine as is.
    if (h.degree() >= 1) h.validate(true);
    if (!(t > 0.0)) throw std::invalid_argument("evolve_wigner: t must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("evolve_wigner: dt must be positive");

    const PhaseGrid& g = w0.grid;
    double vmax = 0.0;
    for (int i = 0; i < g.nx; ++i)
        vmax = std::max(vmax, std::abs(potential_derivative_at(h, g.x(i), 1)));
    const double pmax = std::max(std::abs(g.p_min), std::abs(g.p_max));

    double limit = std::numeric_limits<double>::infinity();
    if (pmax > 0.0) limit = std::min(limit, 0.25 * g.dx() * h.mass / pmax);
    if (vmax > 0.0) limit = std::min(limit, 0.25 * g.dp() / vmax);
    if (dt > limit) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "evolve_wigner: dt %g is too coarse to resolve the advection; "
                      "use dt <= %g",
                      dt, limit);
        throw std::invalid_argument(msg);
    }

    const int steps = std::max(1, static_cast<int>(std::ceil(t / dt - 1e-12)));
    const double hs = t / steps;
    const double hbar = w0.units.hbar;

    // The evolution polices support at 1e-6 of the peak, input included, so
    // that one run's output can seed the next; transported tails settle near
    // the classical saturation level, far above the 1e-10 the instantaneous
    // field routines demand of a fresh state.
    require_interior_support(w0.values, "evolve_wigner", 1e-6);

    // Fourth-order composition of the exact split flows (a three-fold Strang
    // sandwich with one negative inner weight; the substeps are phase
    // rotations, so the backward leg costs nothing in stability).
    const double y1 = 1.0 / (2.0 - std::cbrt(2.0));
    const double y0 = 1.0 - 2.0 * y1;
    const Eigen::MatrixXcd pot_outer = potential_phase(g, h, n_corr, hbar, 0.5 * y1 * hs);
    const Eigen::MatrixXcd pot_inner =
        potential_phase(g, h, n_corr, hbar, 0.5 * (y0 + y1) * hs);
    const Eigen::MatrixXcd kin_outer = kinetic_phase(g, h.mass, y1 * hs);
    const Eigen::MatrixXcd kin_inner = kinetic_phase(g, h.mass, y0 * hs);

    Eigen::MatrixXd v = w0.values;
    Eigen::MatrixXcd f(g.nx, g.np);
    for (int s = 0; s < steps; ++s) {
        f = v.cast<Cplx>();
        apply_potential(f, pot_outer);
        apply_kinetic(f, kin_outer);
        apply_potential(f, pot_inner);
        apply_kinetic(f, kin_inner);
        apply_potential(f, pot_inner);
        apply_kinetic(f, kin_outer);
        apply_potential(f, pot_outer);
        v = f.real();
        require_interior_support(v, "evolve_wigner", 1e-6);
    }

    const double mass = v.sum() * g.cell();
    if (std::abs(mass - 1.0) > 1e-6)
        throw std::runtime_error(
            "evolve_wigner: normalization drifted by more than 1e-6; reduce dt or "
            "enlarge the grid");
    return QuasiDistribution{g, std::move(v), QuasiKind::wigner, w0.units};
}

double classicality_ratio(const QuasiDistribution& w, const HamiltonianSpec& h) {
    check_inputs(w, h, 1, "classicality_ratio");
    const double hbar = w.units.hbar;
    const Eigen::MatrixXd advection =
        rhs_core(w.values, w.grid, h, 0, hbar, "classicality_ratio");

    // A quadratic well has no correction at all: the ratio is zero, not 0/0.
    if (h.degree() < 3) return 0.0;

    const Eigen::MatrixXd d3 = p_derivative(w.values, w.grid, 3);
    const double coef = -hbar * hbar / 24.0;
    Eigen::MatrixXd correction = Eigen::MatrixXd::Zero(w.grid.nx, w.grid.np);
    for (int i = 0; i < w.grid.nx; ++i) {
        const double vd = potential_derivative_at(h, w.grid.x(i), 3);
        if (vd != 0.0) correction.row(i) = (coef * vd) * d3.row(i);
    }

    const double base = advection.norm();
    if (base == 0.0)
        throw std::runtime_error(
            "classicality_ratio: advection field vanishes; the ratio is undefined");
    return correction.norm() / base;
}

}  // namespace qps
