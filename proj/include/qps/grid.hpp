#pragma once

#include "qps/units.hpp"

namespace qps {

/// Uniform rectangular phase-space grid. Values attached to a grid are
/// sampled at cell centers and integrated by the midpoint rule, so there is
/// no half-weight boundary bookkeeping anywhere downstream.
struct PhaseGrid {
    double x_min = -8.0, x_max = 8.0;
    double p_min = -8.0, p_max = 8.0;
    int nx = 128, np = 128;

    double dx() const { return (x_max - x_min) / nx; }
    double dp() const { return (p_max - p_min) / np; }
    double x(int i) const { return x_min + (i + 0.5) * dx(); }
    double p(int j) const { return p_min + (j + 0.5) * dp(); }
    double cell() const { return dx() * dp(); }

    bool operator==(const PhaseGrid&) const = default;

    void validate() const;

    /// Symmetric grid reaching `widths` ground-state widths out along each
    /// axis. The default (8 widths, 128 points per axis) resolves every
    /// low-occupation state used in the lambda sweeps.
    static PhaseGrid natural(const SystemUnits& u = {}, double widths = 8.0, int n = 128);
    static PhaseGrid centered(double x_half, double p_half, int nx, int np);
};

} // namespace qps
