#include "qps/curves.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qps {

namespace {

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

[[noreturn]] void domain_fail(const char* what, double value) {
    std::ostringstream msg;
    msg << what << " (got " << value << ")";
    throw std::domain_error(msg.str());
}

} // namespace

double s_classical(double sigma, SystemUnits u) {
    u.validate();
    if (sigma <= 0.0) domain_fail("s_classical: sigma must be positive", sigma);
    return std::log(sigma / u.hbar) + 1.0;
}

double s_quantum(double sigma, SystemUnits u) {
    u.validate();
    const double r = sigma / u.hbar;
    if (r < 0.5) domain_fail("s_quantum: sigma below the Heisenberg bound hbar/2", sigma);
    return xlnx(r + 0.5) - xlnx(r - 0.5);
}

double s_quantum_rescaled(double sigma, double lambda, SystemUnits u) {
    if (lambda < 1.0) domain_fail("s_quantum_rescaled: lambda must be >= 1", lambda);
    if (lambda * sigma < 0.5 * u.hbar)
        domain_fail("s_quantum_rescaled: lambda * sigma below hbar/2", lambda * sigma);
    return s_quantum(lambda * sigma, u) - std::log(lambda);
}

double sigma_from_entropy(double s, CurveKind kind, double lambda, SystemUnits u) {
    u.validate();
    if (kind == CurveKind::classical) return u.hbar * std::exp(s - 1.0);

    const double lam = (kind == CurveKind::rescaled) ? lambda : 1.0;
    if (kind == CurveKind::quantum && s < 0.0)
        domain_fail("sigma_from_entropy: the quantum curve never goes below zero", s);
    if (kind == CurveKind::rescaled && s < -std::log(lam))
        domain_fail("sigma_from_entropy: entropy below the rescaled curve's minimum", s);

    auto eval = [&](double sigma) {
        return kind == CurveKind::quantum ? s_quantum(sigma, u)
                                          : s_quantum_rescaled(sigma, lam, u);
    };

    double lo = 0.5 * u.hbar / lam;
    double hi = std::max(lo * 2.0, u.hbar * std::exp(s));
    while (eval(hi) < s) hi *= 2.0;

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = eval(mid);
        if (std::abs(v - s) < 1e-12) return mid;
        (v < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace qps
