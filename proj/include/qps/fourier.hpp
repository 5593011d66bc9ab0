#pragma once

#include <Eigen/Dense>

namespace qps::fft {

/// Unnormalized in-place 2D DFT over both indices (sign -1 forward, +1 inverse).
void dft2(Eigen::MatrixXcd& f, int sign);
/// Unnormalized in-place DFT down each column (the contiguous index).
void dft_cols(Eigen::MatrixXcd& f, int sign);
/// Unnormalized in-place DFT along each row.
void dft_rows(Eigen::MatrixXcd& f, int sign);

/// Angular frequencies for a length-n periodic axis with sample spacing d,
/// in standard DFT ordering (non-negative first, then negative).
Eigen::VectorXd freq(int n, double d);

} // namespace qps::fft
