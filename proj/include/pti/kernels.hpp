#pragma once

// Data-parallel inner loops of the eigensolver and the state sampler.
//
// Every kernel exists as a scalar reference and, where the CPU allows, an
// AVX2 variant. Variants evaluate exactly the same sequence of IEEE
// operations per element (no FMA contraction, no reassociation), so their
// outputs are bitwise identical. The tests in tests/test_kernels.cpp hold
// them to that.

#include <complex>
#include <cstddef>
#include <string_view>

namespace pti::kernels {

using cplx = std::complex<double>;

// Two split-complex rows x and y of length n are replaced by
//   x' = alpha * x + beta  * y
//   y' = gamma * x + delta * y
// Each output component is evaluated as
//   (ar*xr - ai*xi) + (br*yr - bi*yi)   (real)
//   (ar*xi + ai*xr) + (br*yi + bi*yr)   (imag)
using RotatePairFn = void (*)(double* xr, double* xi, double* yr, double* yi, std::size_t n,
                              cplx alpha, cplx beta, cplx gamma, cplx delta);

// acc[j] += x * conj(y[j]) for j < n, with x a single complex scalar.
//   acc_r += xr*yr + xi*yi
//   acc_i += xi*yr - xr*yi
using AccumulateOuterFn = void (*)(double xr, double xi, const double* yr, const double* yi,
                                   double* acc_r, double* acc_i, std::size_t n);

// max_k |v[k]| over a plain double array; 0 for n == 0.
using MaxAbsFn = double (*)(const double* v, std::size_t n);

struct KernelTable {
  std::string_view name;
  RotatePairFn rotate_pair;
  AccumulateOuterFn accumulate_outer;
  MaxAbsFn max_abs;
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

// The table used by default: AVX2 when available, unless the environment
// variable PTI_SIMD is set to "scalar".
const KernelTable& active_kernels();

namespace detail {
// Defined in avx2.cpp when that translation unit is built.
const KernelTable& avx2_table();
}  // namespace detail

}  // namespace pti::kernels
