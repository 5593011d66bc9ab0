#include "qps/qubit.hpp"

#include <cmath>
#include <stdexcept>

namespace qps {

namespace {

using Cx = std::complex<double>;

double xlnx(double x) { return x > 1e-14 ? x * std::log(x) : 0.0; }

Eigen::Matrix2cd ketbra(const Eigen::Vector2cd& v) { return v * v.adjoint(); }

} // namespace

Qubit make_qubit(Eigen::Matrix2cd rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("make_qubit: not hermitian");
    rho = 0.5 * (rho + rho.adjoint()).eval();
    if (std::abs(rho.trace().real() - 1.0) > 1e-10)
        throw std::invalid_argument("make_qubit: trace must be one");
    rho /= rho.trace().real();
    const Eigen::Vector3d b{2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
                            (rho(0, 0) - rho(1, 1)).real()};
    if (b.norm() > 1.0 + 1e-12)
        throw std::invalid_argument("make_qubit: Bloch vector longer than one (not positive)");
    return Qubit{rho};
}

Qubit qubit_from_bloch(double bx, double by, double bz) {
    Eigen::Matrix2cd rho;
    rho << Cx(1.0 + bz, 0.0), Cx(bx, -by), Cx(bx, by), Cx(1.0 - bz, 0.0);
    return make_qubit(0.5 * rho);
}

Eigen::Vector3d bloch_vector(const Qubit& q) {
    return {2.0 * q.rho(0, 1).real(), -2.0 * q.rho(0, 1).imag(),
            (q.rho(0, 0) - q.rho(1, 1)).real()};
}

double qubit_entropy(const Qubit& q) {
    const double r = std::min(1.0, bloch_vector(q).norm());
    return -xlnx(0.5 * (1.0 + r)) - xlnx(0.5 * (1.0 - r));
}

double qubit_trace_distance(const Qubit& a, const Qubit& b) {
    // The difference has eigenvalues +-|b_a - b_b|/2, so the trace distance
    // is half the Bloch-vector distance.
    return 0.5 * (bloch_vector(a) - bloch_vector(b)).norm();
}

AliasingReport two_slit_aliasing() {
    const Eigen::Vector2cd L{1.0, 0.0}, R{0.0, 1.0};
    const double rt = 1.0 / std::sqrt(2.0);
    const Eigen::Vector2cd plus = rt * (L + R), minus = rt * (L - R);

    const Eigen::Matrix2cd mix_pm = 0.5 * ketbra(plus) + 0.5 * ketbra(minus);
    const Eigen::Matrix2cd mix_lr = 0.5 * ketbra(L) + 0.5 * ketbra(R);

    // Uniform average of (|L> + e^{-i theta} |R>)/sqrt(2) over the circle;
    // equally spaced samples kill the single oscillating cross term exactly.
    const int n = 360;
    Eigen::Matrix2cd avg = Eigen::Matrix2cd::Zero();
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * M_PI * k / n;
        const Eigen::Vector2cd psi = rt * (L + std::exp(Cx(0.0, -theta)) * R);
        avg += ketbra(psi) / double(n);
    }

    AliasingReport rep;
    rep.mixture_entry_gap = (mix_pm - mix_lr).cwiseAbs().maxCoeff();
    rep.phase_average_gap =
        (avg - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    rep.pure_entropy = qubit_entropy(make_qubit(ketbra(rt * (L + R))));
    rep.mixed_entropy = qubit_entropy(make_qubit(mix_lr));
    return rep;
}

Qubit depolarize(const Qubit& q, double strength) {
    if (!(strength >= 0.0) || !(strength <= 1.0))
        throw std::domain_error("depolarize: strength must lie in [0, 1]");
    return Qubit{(1.0 - strength) * q.rho +
                 strength * 0.5 * Eigen::Matrix2cd::Identity()};
}

ContractionReport contraction_check(const std::vector<std::pair<Qubit, Qubit>>& pairs,
                                    double strength) {
    ContractionReport rep;
    rep.worst_deviation = 0.0;
    for (const auto& [a, b] : pairs) {
        const double d0 = qubit_trace_distance(a, b);
        const double d1 = qubit_trace_distance(depolarize(a, strength), depolarize(b, strength));
        rep.before.push_back(d0);
        rep.after.push_back(d1);
        rep.worst_deviation =
            std::max(rep.worst_deviation, std::abs(d1 - (1.0 - strength) * d0));
    }
    return rep;
}

} // namespace qps
