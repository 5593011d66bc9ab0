#pragma once

#include "qps/fock.hpp"

#include <vector>

namespace qps {

/// H = P^2 / 2m + V(X) with a polynomial potential V(x) = sum_k c_k x^k of
/// degree <= 6. For time evolution the leading even coefficient must confine.
struct HamiltonianSpec {
    double mass = 1.0;
    std::vector<double> potential_coeffs; // c_0, c_1, ..., degree <= 6

    int degree() const;
    void validate(bool require_confining) const;
};

double potential_at(const HamiltonianSpec& h, double x);
/// d^order V / dx^order at x; exact for polynomials.
double potential_derivative_at(const HamiltonianSpec& h, double x, int order);

/// Number-basis matrix of H. Powers of X are assembled in a space padded by
/// the polynomial degree and cropped, so every retained entry is exact.
CMat hamiltonian_matrix(const HamiltonianSpec& h, int dim, const SystemUnits& u = {});

} // namespace qps
