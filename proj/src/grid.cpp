#include "qps/grid.hpp"

#include <stdexcept>

namespace qps {

void PhaseGrid::validate() const {
    if (nx < 16 || np < 16)
        throw std::invalid_argument("PhaseGrid: nx and np must be at least 16");
    if (!(x_max > x_min) || !(p_max > p_min))
        throw std::invalid_argument("PhaseGrid: empty axis range");
}

PhaseGrid PhaseGrid::natural(const SystemUnits& u, double widths, int n) {
    u.validate();
    return centered(widths * u.width_x(), widths * u.width_p(), n, n);
}

PhaseGrid PhaseGrid::centered(double x_half, double p_half, int nx, int np) {
    PhaseGrid g{-x_half, x_half, -p_half, p_half, nx, np};
    g.validate();
    return g;
}

} // namespace qps
