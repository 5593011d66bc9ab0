#pragma once

#include <complex>
#include <Eigen/Dense>

#include "qps/units.hpp"

namespace qps {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kHermTol  = 1e-10;  // allowed hermiticity defect of a density matrix
inline constexpr double kTraceTol = 1e-10;  // allowed trace defect before normalization
inline constexpr double kEigFloor = -1e-8;  // most negative eigenvalue tolerated as roundoff

/// Density matrix on a truncated number basis {|0>,...,|dim-1>}.
/// Construct through make_state or the state factories below; both enforce
/// hermiticity, unit trace and positivity up to the tolerances above.
struct FockState {
    CMat rho;
    SystemUnits units;

    int dim() const { return static_cast<int>(rho.rows()); }
};

/// Validate rho (hermitian to kHermTol, trace within kTraceTol of one,
/// eigenvalues above kEigFloor), pin the trace to exactly one and return
/// the state. Throws std::invalid_argument on violation.
FockState make_state(CMat rho, SystemUnits units = {});

// --- operators ------------------------------------------------------------

/// Lowering operator, a[n-1,n] = sqrt(n).
CMat lowering(int dim);
/// Raising operator, adjoint of lowering.
CMat raising(int dim);
/// Number operator a^dag a.
CMat number_op(int dim);
/// Position quadrature sqrt(hbar/(2 m omega)) (a^dag + a).
CMat position_op(int dim, const SystemUnits& u = {});
/// Momentum quadrature i sqrt(hbar m omega / 2) (a^dag - a).
CMat momentum_op(int dim, const SystemUnits& u = {});
/// Oscillator Hamiltonian hbar omega (n + 1/2).
CMat oscillator_hamiltonian(int dim, const SystemUnits& u = {});

// --- states ---------------------------------------------------------------

FockState fock_state(int dim, int n, SystemUnits u = {});
FockState coherent_state(int dim, Cplx alpha, SystemUnits u = {});
/// Even superposition (|alpha> + |-alpha>)/norm.
FockState cat_state(int dim, Cplx alpha, SystemUnits u = {});
/// Geometric occupation with mean nbar, renormalized on the truncated basis.
FockState thermal_state(int dim, double nbar, SystemUnits u = {});

// --- measures -------------------------------------------------------------

/// Von Neumann entropy -Tr rho ln rho in nats. Eigenvalues below 1e-14 are
/// dropped; negatives above kEigFloor are treated as zero.
double von_neumann_entropy(const FockState& s);

/// Trace distance (1/2)||r - s||_1 between equal-dimension states.
double trace_distance(const FockState& a, const FockState& b);

/// exp(-beta H)/Z for hermitian H, computed spectrally with the ground
/// energy shifted out so large beta cannot overflow. Requires beta > 0.
FockState gibbs_state(const CMat& hamiltonian, double beta, SystemUnits u = {});

Cplx expectation(const FockState& s, const CMat& op);
/// Mean occupation <a^dag a>.
double occupation(const FockState& s);
/// Index of the highest basis state needed to hold all but `tail` of the
/// population (used for truncation-margin checks).
int effective_cutoff(const FockState& s, double tail = 1e-12);

} // namespace qps
