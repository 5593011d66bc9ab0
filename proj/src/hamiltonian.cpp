#include "qps/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace qps {

int HamiltonianSpec::degree() const {
    int d = 0;
    for (std::size_t k = 0; k < potential_coeffs.size(); ++k)
        if (potential_coeffs[k] != 0.0) d = static_cast<int>(k);
    return d;
}

void HamiltonianSpec::validate(bool require_confining) const {
    if (!(mass > 0.0)) throw std::invalid_argument("HamiltonianSpec: mass must be positive");
    if (potential_coeffs.size() > 7)
        throw std::invalid_argument("HamiltonianSpec: potential degree must be <= 6");
    if (require_confining) {
        const int d = degree();
        if (d < 2 || d % 2 != 0 || !(potential_coeffs[d] > 0.0))
            throw std::invalid_argument(
                "HamiltonianSpec: confinement needs a positive leading even coefficient");
    }
}

double potential_at(const HamiltonianSpec& h, double x) {
    double v = 0.0;
    for (std::size_t k = h.potential_coeffs.size(); k-- > 0;)
        v = v * x + h.potential_coeffs[k];
    return v;
}

double potential_derivative_at(const HamiltonianSpec& h, double x, int order) {
    if (order < 0) throw std::invalid_argument("potential_derivative_at: order must be >= 0");
    if (order == 0) return potential_at(h, x);
    double v = 0.0;
    for (std::size_t k = h.potential_coeffs.size(); k-- > static_cast<std::size_t>(order);) {
        double fall = 1.0;
        for (int j = 0; j < order; ++j) fall *= static_cast<double>(k - j);
        v = v * x + fall * h.potential_coeffs[k];
    }
    return v;
}

CMat hamiltonian_matrix(const HamiltonianSpec& h, int dim, const SystemUnits& u) {
    h.validate(false);
    u.validate();
    if (dim < 2) throw std::invalid_argument("hamiltonian_matrix: dim must be >= 2");
    const int pad = std::max(2, h.degree());
    const int big = dim + pad;
    const CMat x = position_op(big, u);
    const CMat p = momentum_op(big, u);
    CMat ham = (p * p) / (2.0 * h.mass);
    CMat xk = CMat::Identity(big, big);
    for (std::size_t k = 0; k < h.potential_coeffs.size(); ++k) {
        if (k > 0) xk = xk * x;
        if (h.potential_coeffs[k] != 0.0) ham += h.potential_coeffs[k] * xk;
    }
    CMat out = ham.topLeftCorner(dim, dim);
    return 0.5 * (out + out.adjoint().eval());
}

} // namespace qps
