#include "pti/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace pti::kernels {
namespace {

constexpr std::size_t kLanes = 4;

void rotate_pair_avx2(double* xr, double* xi, double* yr, double* yi, std::size_t n,
                      cplx alpha, cplx beta, cplx gamma, cplx delta) {
  const __m256d ar = _mm256_set1_pd(alpha.real()), ai = _mm256_set1_pd(alpha.imag());
  const __m256d br = _mm256_set1_pd(beta.real()), bi = _mm256_set1_pd(beta.imag());
  const __m256d gr = _mm256_set1_pd(gamma.real()), gi = _mm256_set1_pd(gamma.imag());
  const __m256d dr = _mm256_set1_pd(delta.real()), di = _mm256_set1_pd(delta.imag());

  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d x_r = _mm256_loadu_pd(xr + k), x_i = _mm256_loadu_pd(xi + k);
    const __m256d y_r = _mm256_loadu_pd(yr + k), y_i = _mm256_loadu_pd(yi + k);

    const __m256d nxr = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(ar, x_r), _mm256_mul_pd(ai, x_i)),
                                      _mm256_sub_pd(_mm256_mul_pd(br, y_r), _mm256_mul_pd(bi, y_i)));
    const __m256d nxi = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ar, x_i), _mm256_mul_pd(ai, x_r)),
                                      _mm256_add_pd(_mm256_mul_pd(br, y_i), _mm256_mul_pd(bi, y_r)));
    const __m256d nyr = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(gr, x_r), _mm256_mul_pd(gi, x_i)),
                                      _mm256_sub_pd(_mm256_mul_pd(dr, y_r), _mm256_mul_pd(di, y_i)));
    const __m256d nyi = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(gr, x_i), _mm256_mul_pd(gi, x_r)),
                                      _mm256_add_pd(_mm256_mul_pd(dr, y_i), _mm256_mul_pd(di, y_r)));

    _mm256_storeu_pd(xr + k, nxr);
    _mm256_storeu_pd(xi + k, nxi);
    _mm256_storeu_pd(yr + k, nyr);
    _mm256_storeu_pd(yi + k, nyi);
  }
  if (k < n) {
    scalar_kernels().rotate_pair(xr + k, xi + k, yr + k, yi + k, n - k, alpha, beta, gamma, delta);
  }
}

void accumulate_outer_avx2(double x_r, double x_i, const double* yr, const double* yi,
                           double* acc_r, double* acc_i, std::size_t n) {
  const __m256d vr = _mm256_set1_pd(x_r), vi = _mm256_set1_pd(x_i);
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    const __m256d y_r = _mm256_loadu_pd(yr + j), y_i = _mm256_loadu_pd(yi + j);
    const __m256d re = _mm256_add_pd(_mm256_mul_pd(vr, y_r), _mm256_mul_pd(vi, y_i));
    const __m256d im = _mm256_sub_pd(_mm256_mul_pd(vi, y_r), _mm256_mul_pd(vr, y_i));
    _mm256_storeu_pd(acc_r + j, _mm256_add_pd(_mm256_loadu_pd(acc_r + j), re));
    _mm256_storeu_pd(acc_i + j, _mm256_add_pd(_mm256_loadu_pd(acc_i + j), im));
  }
  if (j < n) scalar_kernels().accumulate_outer(x_r, x_i, yr + j, yi + j, acc_r + j, acc_i + j, n - j);
}

double max_abs_avx2(const double* v, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(v + k)));
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, m);
  double best = lanes[0];
  for (std::size_t l = 1; l < kLanes; ++l) best = lanes[l] > best ? lanes[l] : best;
  for (; k < n; ++k) {
    const double a = std::fabs(v[k]);
    if (a > best) best = a;
  }
  return best;
}

constexpr KernelTable kAvx2{"avx2", rotate_pair_avx2, accumulate_outer_avx2, max_abs_avx2};

}  // namespace

namespace detail {
const KernelTable& avx2_table() { return kAvx2; }
}  // namespace detail

}  // namespace pti::kernels
