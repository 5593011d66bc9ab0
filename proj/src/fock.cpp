#include "qps/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace qps {

FockState make_state(CMat rho, SystemUnits units) {
    units.validate();
    if (rho.rows() != rho.cols() || rho.rows() < 2)
        throw std::invalid_argument("make_state: rho must be square with dim >= 2");

    const double herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > kHermTol) {
        std::ostringstream msg;
        msg << "make_state: hermiticity defect " << herm_defect << " exceeds " << kHermTol;
        throw std::invalid_argument(msg.str());
    }
    rho = 0.5 * (rho + rho.adjoint().eval());

    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream msg;
        msg << "make_state: trace " << tr << " deviates from one by more than " << kTraceTol;
        throw std::invalid_argument(msg.str());
    }
    rho /= tr;

    Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < kEigFloor) {
        std::ostringstream msg;
        msg << "make_state: eigenvalue " << min_eig << " below floor " << kEigFloor;
        throw std::invalid_argument(msg.str());
    }
    return FockState{std::move(rho), units};
}

CMat lowering(int dim) {
    if (dim < 2) throw std::invalid_argument("lowering: dim must be >= 2");
    CMat a = CMat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

CMat raising(int dim) { return lowering(dim).adjoint(); }

CMat number_op(int dim) {
    if (dim < 2) throw std::invalid_argument("number_op: dim must be >= 2");
    CMat n = CMat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

CMat position_op(int dim, const SystemUnits& u) {
    u.validate();
    const CMat a = lowering(dim);
    return std::sqrt(u.hbar / (2.0 * u.mass * u.omega)) * (a + a.adjoint());
}

CMat momentum_op(int dim, const SystemUnits& u) {
    u.validate();
    const CMat a = lowering(dim);
    return Cplx(0.0, 1.0) * std::sqrt(u.hbar * u.mass * u.omega / 2.0) * (a.adjoint() - a);
}

CMat oscillator_hamiltonian(int dim, const SystemUnits& u) {
    u.validate();
    CMat h = CMat::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) h(k, k) = u.hbar * u.omega * (k + 0.5);
    return h;
}

FockState fock_state(int dim, int n, SystemUnits u) {
    if (n < 0 || n >= dim)
        throw std::invalid_argument("fock_state: need 0 <= n < dim");
    CMat rho = CMat::Zero(dim, dim);
    rho(n, n) = 1.0;
    return make_state(std::move(rho), u);
}

namespace {

CVec coherent_vector(int dim, Cplx alpha) {
    CVec c(dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
    return c;
}

} // namespace

FockState coherent_state(int dim, Cplx alpha, SystemUnits u) {
    if (dim < 2) throw std::invalid_argument("coherent_state: dim must be >= 2");
    CVec c = coherent_vector(dim, alpha);
    c.normalize(); // absorb the truncated tail
    return make_state(c * c.adjoint(), u);
}

FockState cat_state(int dim, Cplx alpha, SystemUnits u) {
    if (dim < 2) throw std::invalid_argument("cat_state: dim must be >= 2");
    CVec c = coherent_vector(dim, alpha) + coherent_vector(dim, -alpha);
    const double nrm = c.norm();
    if (nrm < 1e-12) throw std::invalid_argument("cat_state: degenerate superposition");
    c /= nrm;
    return make_state(c * c.adjoint(), u);
}

FockState thermal_state(int dim, double nbar, SystemUnits u) {
    if (dim < 2) throw std::invalid_argument("thermal_state: dim must be >= 2");
    if (nbar < 0.0) throw std::invalid_argument("thermal_state: nbar must be >= 0");
    CMat rho = CMat::Zero(dim, dim);
    if (nbar == 0.0) {
        rho(0, 0) = 1.0;
    } else {
        const double q = nbar / (nbar + 1.0);
        double w = 1.0;
        double sum = 0.0;
        for (int n = 0; n < dim; ++n, w *= q) {
            rho(n, n) = w;
            sum += w;
        }
        rho /= sum;
    }
    return make_state(std::move(rho), u);
}

double von_neumann_entropy(const FockState& s) {
    Eigen::SelfAdjointEigenSolver<CMat> es(s.rho, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p < kEigFloor)
            throw std::invalid_argument("von_neumann_entropy: state not positive semidefinite");
        if (p < 1e-14) continue;
        entropy -= p * std::log(p);
    }
    return entropy;
}

double trace_distance(const FockState& a, const FockState& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<CMat> es(a.rho - b.rho, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

FockState gibbs_state(const CMat& hamiltonian, double beta, SystemUnits u) {
    if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() < 2)
        throw std::invalid_argument("gibbs_state: hamiltonian must be square with dim >= 2");
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        throw std::invalid_argument("gibbs_state: hamiltonian must be hermitian");
    if (!(beta > 0.0))
        throw std::invalid_argument("gibbs_state: beta must be positive");

    Eigen::SelfAdjointEigenSolver<CMat> es(hamiltonian);
    const Eigen::VectorXd e = es.eigenvalues();
    Eigen::VectorXd w = (-(beta * (e.array() - e.minCoeff()))).exp();
    w /= w.sum();
    CMat rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    return make_state(std::move(rho), u);
}

Cplx expectation(const FockState& s, const CMat& op) {
    if (op.rows() != s.dim() || op.cols() != s.dim())
        throw std::invalid_argument("expectation: operator dimension mismatch");
    return (s.rho * op).trace();
}

double occupation(const FockState& s) {
    double n = 0.0;
    for (int k = 0; k < s.dim(); ++k) n += k * s.rho(k, k).real();
    return n;
}

int effective_cutoff(const FockState& s, double tail) {
    double acc = 0.0;
    for (int k = s.dim() - 1; k >= 0; --k) {
        acc += std::max(0.0, s.rho(k, k).real());
        if (acc > tail) return k;
    }
    return 0;
}

} // namespace qps
