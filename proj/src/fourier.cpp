#include "qps/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <numbers>
#include <tuple>

namespace qps::fft {

namespace {

// Plans are cached per shape; FFTW_UNALIGNED lets one plan serve any buffer.
using PlanKey = std::tuple<int, int, int, int>; // rows, cols, sign, kind(0=2d,1=cols,2=rows)

fftw_plan plan_for(const PlanKey& key, fftw_complex* data) {
    static std::map<PlanKey, fftw_plan> cache;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const auto [rows, cols, sign, kind] = key;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = nullptr;
    switch (kind) {
        case 0:
            // column-major storage: the slow index is the column
            p = fftw_plan_dft_2d(cols, rows, data, data, sign, flags);
            break;
        case 1: {
            int n = rows;
            p = fftw_plan_many_dft(1, &n, cols, data, nullptr, 1, rows,
                                   data, nullptr, 1, rows, sign, flags);
            break;
        }
        case 2: {
            int n = cols;
            p = fftw_plan_many_dft(1, &n, rows, data, nullptr, rows, 1,
                                   data, nullptr, rows, 1, sign, flags);
            break;
        }
    }
    cache.emplace(key, p);
    return p;
}

void run(Eigen::MatrixXcd& f, int sign, int kind) {
    auto* data = reinterpret_cast<fftw_complex*>(f.data());
    fftw_plan p = plan_for({static_cast<int>(f.rows()), static_cast<int>(f.cols()), sign, kind}, data);
    fftw_execute_dft(p, data, data);
}

} // namespace

void dft2(Eigen::MatrixXcd& f, int sign) { run(f, sign, 0); }
void dft_cols(Eigen::MatrixXcd& f, int sign) { run(f, sign, 1); }
void dft_rows(Eigen::MatrixXcd& f, int sign) { run(f, sign, 2); }

Eigen::VectorXd freq(int n, double d) {
    Eigen::VectorXd k(n);
    const double base = 2.0 * std::numbers::pi / (n * d);
    for (int m = 0; m < n; ++m) k(m) = base * (m <= (n - 1) / 2 ? m : m - n);
    return k;
}

} // namespace qps::fft
