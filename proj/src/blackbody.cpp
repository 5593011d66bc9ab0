#include "qps/blackbody.hpp"

#include <cmath>
#include <stdexcept>

namespace qps {

void RadianceParams::validate() const {
    if (!(nu > 0.0) || !(beta > 0.0) || !(h > 0.0) || !(c > 0.0) || !(k_b > 0.0))
        throw std::invalid_argument("RadianceParams: all fields must be positive");
}

double planck(const RadianceParams& p) {
    p.validate();
    const double x = p.h * p.beta * p.nu;
    if (x > 700.0) return 0.0; // e^x overflows a double; the radiance is ~1e-300 anyway
    return (2.0 * p.h * p.nu * p.nu * p.nu / (p.c * p.c)) / std::expm1(x);
}

double rayleigh_jeans(const RadianceParams& p) {
    p.validate();
    return 2.0 * p.nu * p.nu / (p.c * p.c * p.beta);
}

double planck_beta_series(const RadianceParams& p, int order) {
    p.validate();
    if (order < 1 || order > 2)
        throw std::invalid_argument("planck_beta_series: order must be 1 or 2");
    // 1/(e^x - 1) = 1/x - 1/2 + x/12 - ...; the 1/x term alone reproduces
    // rayleigh_jeans bit for bit, the next adds a beta-free constant.
    double series = rayleigh_jeans(p);
    if (order >= 2) series -= p.h * p.nu * p.nu * p.nu / (p.c * p.c);
    return series;
}

} // namespace qps
