#include "qps/stretch.hpp"

#include "qps/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace qps {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_spec(const LindbladSpec& spec, int dim) {
    if (spec.hamiltonian.size() > 0 &&
        (spec.hamiltonian.rows() != dim || spec.hamiltonian.cols() != dim))
        throw std::invalid_argument("lindblad_evolve: hamiltonian dimension mismatch");
    if (spec.jumps.empty() && spec.hamiltonian.size() == 0)
        throw std::invalid_argument("lindblad_evolve: empty generator");
    for (const auto& j : spec.jumps) {
        if (!(j.rate > 0.0)) throw std::invalid_argument("lindblad_evolve: jump rate must be > 0");
        if (j.op.rows() != dim || j.op.cols() != dim)
            throw std::invalid_argument("lindblad_evolve: jump operator dimension mismatch");
    }
}

struct PreparedJump {
    double rate;
    CMat op, adj, adj_op; // L, L^+, L^+L
};

// Grid-axis support of |v| above a relative floor, as index ranges.
struct SupportBox {
    int i_lo, i_hi, j_lo, j_hi;
    bool empty;
};

SupportBox support_box(const Eigen::MatrixXd& v, double rel_floor) {
    const double floor = rel_floor * v.cwiseAbs().maxCoeff();
    SupportBox b{static_cast<int>(v.rows()), -1, static_cast<int>(v.cols()), -1, true};
    for (int i = 0; i < v.rows(); ++i)
        for (int j = 0; j < v.cols(); ++j)
            if (std::abs(v(i, j)) > floor) {
                b.i_lo = std::min(b.i_lo, i);
                b.i_hi = std::max(b.i_hi, i);
                b.j_lo = std::min(b.j_lo, j);
                b.j_hi = std::max(b.j_hi, j);
                b.empty = false;
            }
    return b;
}

// Catmull-Rom interpolation of a grid field at fractional index coordinates.
// Indices are clamped at the boundary; integer coordinates reproduce node
// values exactly (coordinates within 1e-9 of a node are snapped onto it so
// that identity maps survive roundoff).
double bicubic_at(const Eigen::MatrixXd& v, double fi, double fj) {
    const auto snap = [](double f) {
        const double r = std::round(f);
        return std::abs(f - r) < 1e-9 ? r : f;
    };
    fi = snap(fi);
    fj = snap(fj);
    const int ni = static_cast<int>(v.rows()), nj = static_cast<int>(v.cols());
    const int i0 = static_cast<int>(std::floor(fi));
    const int j0 = static_cast<int>(std::floor(fj));
    const double ti = fi - i0, tj = fj - j0;
    auto weights = [](double t, double w[4]) {
        w[0] = 0.5 * t * (-1.0 + t * (2.0 - t));
        w[1] = 1.0 + t * t * (-2.5 + 1.5 * t);
        w[2] = 0.5 * t * (1.0 + t * (4.0 - 3.0 * t));
        w[3] = 0.5 * t * t * (t - 1.0);
    };
    double wi[4], wj[4];
    weights(ti, wi);
    weights(tj, wj);
    double out = 0.0;
    for (int a = 0; a < 4; ++a) {
        const int i = std::clamp(i0 - 1 + a, 0, ni - 1);
        double row = 0.0;
        for (int b = 0; b < 4; ++b) {
            const int j = std::clamp(j0 - 1 + b, 0, nj - 1);
            row += wj[b] * v(i, j);
        }
        out += wi[a] * row;
    }
    return out;
}

// Dilated field (1/lambda) v(z / sqrt(lambda)) on the same grid, with the
// grid sum renormalized to remove interpolation drift.
Eigen::MatrixXd dilate_field(const QuasiDistribution& q, double lambda, const char* who) {
    const PhaseGrid& g = q.grid;
    if (lambda == 1.0) return q.values;
    const double root = std::sqrt(lambda);
    const SupportBox box = support_box(q.values, 1e-12);
    if (!box.empty) {
        const double x_lo = root * g.x(box.i_lo), x_hi = root * g.x(box.i_hi);
        const double p_lo = root * g.p(box.j_lo), p_hi = root * g.p(box.j_hi);
        if (x_lo < g.x_min || x_hi > g.x_max || p_lo < g.p_min || p_hi > g.p_max) {
            std::ostringstream msg;
            msg << who << ": stretched support needs x in [" << x_lo << ", " << x_hi
                << "], p in [" << p_lo << ", " << p_hi << "] but the grid covers ["
                << g.x_min << ", " << g.x_max << "] x [" << g.p_min << ", " << g.p_max << "]";
            throw std::invalid_argument(msg.str());
        }
    }
    Eigen::MatrixXd out(g.nx, g.np);
    for (int i = 0; i < g.nx; ++i) {
        const double fx = (g.x(i) / root - g.x(0)) / g.dx();
        for (int j = 0; j < g.np; ++j) {
            const double fp = (g.p(j) / root - g.p(0)) / g.dp();
            out(i, j) = bicubic_at(q.values, fx, fp) / lambda;
        }
    }
    const double mass = out.sum() * g.cell();
    if (std::abs(mass - 1.0) > 1e-3)
        throw std::runtime_error(std::string(who) + ": dilation lost normalization");
    out /= mass;
    return out;
}

void convolve_axis(Eigen::MatrixXd& v, double sigma, double step, bool along_rows) {
    const int radius = std::max(1, static_cast<int>(std::ceil(6.0 * sigma / step)));
    Eigen::VectorXd w(2 * radius + 1);
    for (int k = -radius; k <= radius; ++k)
        w(k + radius) = std::exp(-0.5 * (k * step) * (k * step) / (sigma * sigma));
    w /= w.sum();
    const Eigen::MatrixXd src = v;
    const int ni = static_cast<int>(v.rows()), nj = static_cast<int>(v.cols());
    v.setZero();
    if (along_rows) { // blur across the row index (x axis)
        for (int i = 0; i < ni; ++i) {
            const int k_lo = std::max(-radius, -i), k_hi = std::min(radius, ni - 1 - i);
            for (int k = k_lo; k <= k_hi; ++k) v.row(i) += w(k + radius) * src.row(i + k);
        }
    } else {
        for (int j = 0; j < nj; ++j) {
            const int k_lo = std::max(-radius, -j), k_hi = std::min(radius, nj - 1 - j);
            for (int k = k_lo; k <= k_hi; ++k) v.col(j) += w(k + radius) * src.col(j + k);
        }
    }
}

CMat op_pow(const CMat& a, int n) {
    CMat out = CMat::Identity(a.rows(), a.cols());
    for (int k = 0; k < n; ++k) out = out * a;
    return out;
}

} // namespace

LindbladSpec amplification_spec(int dim, double gamma) {
    return LindbladSpec{CMat(), {JumpTerm{gamma, raising(dim)}}};
}

LindbladSpec damping_spec(int dim, double gamma) {
    return LindbladSpec{CMat(), {JumpTerm{gamma, lowering(dim)}}};
}

FockState lindblad_evolve(const FockState& s, const LindbladSpec& spec, double t, double dt,
                          const EvolveOptions& opts) {
    const int dim = s.dim();
    check_spec(spec, dim);
    if (!(t >= 0.0)) throw std::invalid_argument("lindblad_evolve: t must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("lindblad_evolve: dt must be > 0");

    double rate_sum = 0.0;
    for (const auto& j : spec.jumps) rate_sum += j.rate;
    if (rate_sum * dt > 0.1)
        throw std::invalid_argument("lindblad_evolve: dt too large for stability (rate * dt = " +
                                    std::to_string(rate_sum * dt) + " > 0.1)");

    // A-priori occupancy projection: amplification multiplies nbar + 1 by
    // e^{rate t}; refuse before integrating into the truncation corner.
    const double nbar0 = occupation(s);
    const double projected = std::exp(rate_sum * t) * (nbar0 + 1.0) - 1.0;
    const double cap = opts.max_occupancy_fraction * dim;
    if (projected > cap) {
        std::ostringstream msg;
        msg << "lindblad_evolve: projected occupation " << projected << " exceeds "
            << opts.max_occupancy_fraction << " * dim = " << cap
            << "; increase dim or shorten the evolution";
        throw std::invalid_argument(msg.str());
    }

    std::vector<PreparedJump> jumps;
    jumps.reserve(spec.jumps.size());
    for (const auto& j : spec.jumps)
        jumps.push_back({j.rate, j.op, j.op.adjoint(), j.op.adjoint() * j.op});
    const bool with_h = spec.hamiltonian.size() > 0;
    const double hbar = s.units.hbar;

    auto rhs = [&](const CMat& rho) {
        CMat d = CMat::Zero(dim, dim);
        if (with_h)
            d = (spec.hamiltonian * rho - rho * spec.hamiltonian) * Cplx(0.0, -1.0 / hbar);
        for (const auto& j : jumps)
            d += j.rate * (j.op * rho * j.adj - 0.5 * (j.adj_op * rho + rho * j.adj_op));
        return d;
    };

    const int steps = std::max(1, static_cast<int>(std::ceil(t / dt - 1e-12)));
    const double h = t / steps;
    CMat rho = s.rho;
    if (opts.observer) opts.observer(0.0, s);
    for (int n = 0; n < steps; ++n) {
        const CMat k1 = rhs(rho);
        const CMat k2 = rhs(rho + (0.5 * h) * k1);
        const CMat k3 = rhs(rho + (0.5 * h) * k2);
        const CMat k4 = rhs(rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint().eval());
        const double drift = std::abs(rho.trace().real() - 1.0);
        if (drift > 1e-9)
            throw std::runtime_error("lindblad_evolve: trace drifted by " + std::to_string(drift) +
                                     "; reduce dt");
        // Hermitized and trace-checked above, so hand the observer the matrix
        // directly rather than paying a full validation per step.
        if (opts.observer) opts.observer((n + 1) * h, FockState{rho, s.units});
    }

    Eigen::SelfAdjointEigenSolver<CMat> eig(rho, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < kEigFloor)
        throw std::runtime_error("lindblad_evolve: positivity lost (min eigenvalue " +
                                 std::to_string(eig.eigenvalues().minCoeff()) + "); reduce dt");
    return make_state(rho, s.units);
}

bool entropy_criterion(const LindbladSpec& spec) {
    if (spec.jumps.empty()) return true;
    const int dim = static_cast<int>(spec.jumps.front().op.rows());
    check_spec(spec, dim);
    CMat m = CMat::Zero(dim, dim);
    for (const auto& j : spec.jumps)
        m += j.rate * (j.op.adjoint() * j.op - j.op * j.op.adjoint());
    m = 0.5 * (m + m.adjoint().eval());
    if (dim < 2) return true;
    // The truncation corner row/column is an artifact of the cutoff; the
    // criterion is judged on the interior block.
    const CMat block = m.topLeftCorner(dim - 1, dim - 1);
    Eigen::SelfAdjointEigenSolver<CMat> eig(block, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return eig.eigenvalues().minCoeff() >= -1e-12 * scale;
}

QuasiDistribution stretch_Q(const QuasiDistribution& q1, double lambda) {
    if (q1.kind != QuasiKind::husimi)
        throw std::invalid_argument("stretch_Q: input must be a Husimi distribution");
    if (!(lambda >= 1.0)) throw std::domain_error("stretch_Q: lambda must be >= 1");
    if (lambda == 1.0) return q1;
    Eigen::MatrixXd out = dilate_field(q1, lambda, "stretch_Q");
    // Interpolation can undershoot by a few 1e-7 of the peak near steep
    // flanks; clip what is provably noise so the nonnegativity gate holds.
    const double noise = 1e-6 * out.maxCoeff();
    out = out.unaryExpr([noise](double v) { return (v < 0.0 && v > -noise) ? 0.0 : v; });
    return make_quasi(q1.grid, out, QuasiKind::husimi, q1.units);
}

QuasiDistribution stretch_W(const QuasiDistribution& w1, double lambda) {
    if (w1.kind != QuasiKind::wigner)
        throw std::invalid_argument("stretch_W: input must be a Wigner distribution");
    if (!(lambda > 1.0))
        throw std::domain_error("stretch_W: lambda must be > 1 (the blur kernel degenerates)");
    const PhaseGrid& g = w1.grid;
    const double sig_x = std::sqrt(0.5 * (lambda - 1.0)) * w1.units.width_x();
    const double sig_p = std::sqrt(0.5 * (lambda - 1.0)) * w1.units.width_p();

    Eigen::MatrixXd out = dilate_field(w1, lambda, "stretch_W");

    const SupportBox box = support_box(out, 1e-12);
    if (!box.empty) {
        const double mx = std::min(g.x(box.i_lo) - g.x_min, g.x_max - g.x(box.i_hi));
        const double mp = std::min(g.p(box.j_lo) - g.p_min, g.p_max - g.p(box.j_hi));
        if (mx < 4.0 * sig_x || mp < 4.0 * sig_p) {
            std::ostringstream msg;
            msg << "stretch_W: blur kernel needs 4 widths of margin; pad x by >= "
                << std::max(0.0, 4.0 * sig_x - mx) << " and p by >= "
                << std::max(0.0, 4.0 * sig_p - mp);
            throw std::invalid_argument(msg.str());
        }
    }

    convolve_axis(out, sig_x, g.dx(), true);
    convolve_axis(out, sig_p, g.dp(), false);
    return make_quasi(g, out, QuasiKind::wigner, w1.units);
}

Cplx antinormal_moment(const FockState& s, int n, int m) {
    if (n < 0 || m < 0 || n + m > 6)
        throw std::invalid_argument("antinormal_moment: need n, m >= 0 and n + m <= 6");
    const int dim = s.dim();
    // A 1e-6 slice of population within m levels of the corner is where the
    // cut ladder paths start to matter at the accuracy this routine serves.
    if (effective_cutoff(s, 1e-6) + m >= dim)
        std::cerr << "antinormal_moment: occupation tail reaches the truncation corner; "
                     "result may be unreliable\n";
    // Pad by m levels so lowering^n raising^m acts exactly on the embedded state.
    const int pd = dim + m;
    CMat rho = CMat::Zero(pd, pd);
    rho.topLeftCorner(dim, dim) = s.rho;
    const CMat op = op_pow(lowering(pd), n) * op_pow(raising(pd), m);
    return (rho * op).trace();
}

FockState squeeze_unitary(const FockState& s, double alpha_sq, double max_occupancy_fraction) {
    if (!(alpha_sq > 0.0)) throw std::invalid_argument("squeeze_unitary: alpha_sq must be > 0");
    const int dim = s.dim();
    const double z = 0.5 * std::log(alpha_sq);
    const double growth = std::max(alpha_sq, 1.0 / alpha_sq);
    const double projected = growth * (occupation(s) + 1.0) - 1.0;
    if (projected > max_occupancy_fraction * dim) {
        std::ostringstream msg;
        msg << "squeeze_unitary: projected occupation " << projected << " exceeds "
            << max_occupancy_fraction << " * dim = " << max_occupancy_fraction * dim;
        throw std::invalid_argument(msg.str());
    }
    const CMat a = lowering(dim);
    const CMat g = 0.5 * z * ((a.adjoint() * a.adjoint()) - a * a);
    // g is anti-Hermitian; exponentiate through the Hermitian matrix g / i.
    const CMat k = Cplx(0.0, -1.0) * g;
    Eigen::SelfAdjointEigenSolver<CMat> eig(k);
    const CVec phases =
        (Cplx(0.0, 1.0) * eig.eigenvalues().cast<Cplx>().array()).exp().matrix();
    const CMat u = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    return make_state(u * s.rho * u.adjoint(), s.units);
}

CommutatorRescaleReport commutator_rescale_report(double lambda, SystemUnits u) {
    if (!(lambda >= 1.0))
        throw std::invalid_argument("commutator_rescale_report: lambda must be >= 1");
    u.validate();
    const int dim = 16;
    const double root = std::sqrt(lambda);
    const CMat x = position_op(dim, u) / root;
    const CMat p = momentum_op(dim, u) / root;
    const CMat comm = x * p - p * x;
    const CMat expected = Cplx(0.0, u.hbar / lambda) * CMat::Identity(dim, dim);
    // The truncation corner carries the cutoff artifact; measure off it.
    const double residual =
        (comm - expected).topLeftCorner(dim - 1, dim - 1).cwiseAbs().maxCoeff();
    return CommutatorRescaleReport{lambda, u.hbar / lambda, 0.5 * u.hbar / lambda, residual};
}

double bandwidth_filter_residual(const QuasiDistribution& w1, const QuasiDistribution& w_lam,
                                 double lambda) {
    if (!(lambda > 1.0))
        throw std::domain_error("bandwidth_filter_residual: lambda must be > 1");
    if (!(w1.grid == w_lam.grid))
        throw std::invalid_argument("bandwidth_filter_residual: grids must match");
    const PhaseGrid& g = w1.grid;
    Eigen::MatrixXcd f_ref = dilate_field(w1, lambda, "bandwidth_filter_residual")
                                 .cast<Cplx>() * g.cell();
    Eigen::MatrixXcd f_lam = w_lam.values.cast<Cplx>() * g.cell();
    fft::dft2(f_ref, -1);
    fft::dft2(f_lam, -1);
    const Eigen::VectorXd kx = fft::freq(g.nx, g.dx());
    const Eigen::VectorXd kp = fft::freq(g.np, g.dp());
    const double wx2 = w1.units.width_x() * w1.units.width_x();
    const double wp2 = w1.units.width_p() * w1.units.width_p();
    double worst = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.np; ++j) {
            if (std::abs(f_ref(i, j)) <= 1e-6) continue;
            const double transfer =
                std::exp(-0.25 * (lambda - 1.0) * (wx2 * kx(i) * kx(i) + wp2 * kp(j) * kp(j)));
            worst = std::max(worst, std::abs(f_lam(i, j) / f_ref(i, j) - transfer));
        }
    return worst;
}

StretchReport make_stretch_report(const FockState& s, double lambda, double gamma, double dt,
                                  const PhaseGrid& grid, const EvolveOptions& opts) {
    if (!(lambda > 1.0)) throw std::invalid_argument("make_stretch_report: lambda must be > 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("make_stretch_report: gamma must be > 0");
    const double t = std::log(lambda) / gamma;
    const FockState after = lindblad_evolve(s, amplification_spec(s.dim(), gamma), t, dt, opts);

    StretchReport rep;
    rep.lambda = lambda;
    rep.entropy_before = von_neumann_entropy(s);
    rep.entropy_after = von_neumann_entropy(after);
    for (int total = 0; total <= 4; ++total)
        for (int n = 0; n <= total; ++n)
            rep.antinormal_moments.push_back(
                {n, total - n, antinormal_moment(s, n, total - n),
                 antinormal_moment(after, n, total - n)});
    const QuasiDistribution w = wigner_from_state(after, grid);
    const QuasiDistribution q = husimi_from_state(after, grid);
    rep.min_wigner = negativity_report(w).min_value;
    rep.sup_dist_w_q = (w.values - q.values).cwiseAbs().maxCoeff();
    return rep;
}

} // namespace qps
