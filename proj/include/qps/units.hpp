#pragma once

#include <cmath>
#include <stdexcept>

namespace qps {

/// Oscillator unit system. Natural units (hbar = m = omega = 1) unless
/// configured otherwise. All phase-space lengths in this library derive
/// from these three constants.
struct SystemUnits {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;

    /// Ground-state length scale sqrt(hbar / (m*omega)).
    double width_x() const { return std::sqrt(hbar / (mass * omega)); }
    /// Ground-state momentum scale sqrt(hbar * m * omega).
    double width_p() const { return std::sqrt(hbar * mass * omega); }

    void validate() const {
        if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0))
            throw std::invalid_argument("SystemUnits: hbar, mass, omega must all be positive");
    }
};

} // namespace qps
