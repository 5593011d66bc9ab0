#pragma once

#include "qps/units.hpp"

namespace qps {

/// Entropy of the classical Gaussian with uncertainty product sigma:
/// ln(sigma/hbar) + 1. Defined for all sigma > 0 and unbounded below.
double s_classical(double sigma, SystemUnits u = {});

/// Entropy of the quantum Gaussian (thermal) state with uncertainty product
/// sigma: (r+1/2)ln(r+1/2) - (r-1/2)ln(r-1/2) with r = sigma/hbar. Vanishes at
/// the Heisenberg bound sigma = hbar/2 and increases from there.
double s_quantum(double sigma, SystemUnits u = {});

/// The stretched family: s_quantum(lambda sigma) - ln(lambda). Interpolates
/// between the quantum curve (lambda = 1) and the classical one (lambda -> inf).
double s_quantum_rescaled(double sigma, double lambda, SystemUnits u = {});

enum class CurveKind { classical, quantum, rescaled };

/// Inverse of the chosen curve: the sigma whose entropy is s, found by
/// bisection to |S(sigma) - s| < 1e-10 (classical kind is inverted exactly).
/// lambda only matters for the rescaled kind.
double sigma_from_entropy(double s, CurveKind kind, double lambda = 1.0, SystemUnits u = {});

} // namespace qps
