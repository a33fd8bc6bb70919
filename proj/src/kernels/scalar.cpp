#include "pti/kernels.hpp"

#include <cmath>

namespace pti::kernels {
namespace {

void rotate_pair_scalar(double* xr, double* xi, double* yr, double* yi, std::size_t n,
                        cplx alpha, cplx beta, cplx gamma, cplx delta) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double br = beta.real(), bi = beta.imag();
  const double gr = gamma.real(), gi = gamma.imag();
  const double dr = delta.real(), di = delta.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double x_r = xr[k], x_i = xi[k], y_r = yr[k], y_i = yi[k];
    xr[k] = (ar * x_r - ai * x_i) + (br * y_r - bi * y_i);
    xi[k] = (ar * x_i + ai * x_r) + (br * y_i + bi * y_r);
    yr[k] = (gr * x_r - gi * x_i) + (dr * y_r - di * y_i);
    yi[k] = (gr * x_i + gi * x_r) + (dr * y_i + di * y_r);
  }
}

void accumulate_outer_scalar(double x_r, double x_i, const double* yr, const double* yi,
                             double* acc_r, double* acc_i, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    acc_r[j] += x_r * yr[j] + x_i * yi[j];
    acc_i[j] += x_i * yr[j] - x_r * yi[j];
  }
}

double max_abs_scalar(const double* v, std::size_t n) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::fabs(v[k]);
    if (a > m) m = a;
  }
  return m;
}

constexpr KernelTable kScalar{"scalar", rotate_pair_scalar, accumulate_outer_scalar,
                              max_abs_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace pti::kernels
