#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace qps {

/// Two-level density matrix; construct through make_qubit or qubit_from_bloch,
/// which enforce hermiticity, unit trace, positivity and Bloch length <= 1.
struct Qubit {
    Eigen::Matrix2cd rho;
};

Qubit make_qubit(Eigen::Matrix2cd rho);
Qubit qubit_from_bloch(double bx, double by, double bz);
Eigen::Vector3d bloch_vector(const Qubit& q);
double qubit_entropy(const Qubit& q);
double qubit_trace_distance(const Qubit& a, const Qubit& b);

/// The which-path basis {|L>, |R>} and the superposition basis {|+>, |->}
/// average to the same maximally mixed state; this computes how closely.
struct AliasingReport {
    double mixture_entry_gap;  // max entry of (mix of |+->) - (mix of |LR>)
    double phase_average_gap;  // max entry of the theta-averaged family minus I/2
    double pure_entropy;       // entropy of the theta = 0 member
    double mixed_entropy;      // entropy of the common mixture
};

AliasingReport two_slit_aliasing();

/// rho -> (1 - strength) rho + strength I/2, strength in [0, 1].
Qubit depolarize(const Qubit& q, double strength);

/// Trace distances of every pair before and after depolarizing; the channel
/// contracts each by exactly (1 - strength).
struct ContractionReport {
    std::vector<double> before, after;
    double worst_deviation; // max |after - (1 - strength) * before|
};

ContractionReport contraction_check(const std::vector<std::pair<Qubit, Qubit>>& pairs,
                                    double strength);

} // namespace qps
