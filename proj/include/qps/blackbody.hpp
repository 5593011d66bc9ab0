#pragma once

namespace qps {

/// Spectral radiance inputs. Only the dimensionless combination h*beta*nu
/// matters to the comparisons; the constants default to reduced units.
struct RadianceParams {
    double nu;
    double beta;
    double h = 1.0, c = 1.0, k_b = 1.0;

    void validate() const;
};

/// (2 h nu^3 / c^2) / (e^{h beta nu} - 1). Saturates to 0 when the exponent
/// would overflow (h beta nu > 700).
double planck(const RadianceParams& p);

/// 2 nu^2 / (c^2 beta), the small-exponent asymptote of planck.
double rayleigh_jeans(const RadianceParams& p);

/// Laurent expansion of planck in beta, truncated after `order` terms
/// (order 1 or 2). Order 1 is identical to rayleigh_jeans; order 2 adds the
/// constant -h nu^3 / c^2 correction.
double planck_beta_series(const RadianceParams& p, int order);

} // namespace qps
