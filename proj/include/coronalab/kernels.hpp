#pragma once

// Data-parallel inner loops shared by the transform, constants and harness modules.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2 variant.
// Element-wise kernels (hilbert_row, poisson_row) perform the same IEEE operations in the
// same order as the scalar code and are bit-identical to it. Reductions (dot, poisson_sum,
// weighted_sq_sum) use a fixed 4-lane accumulation order: deterministic for a given table,
// but not bitwise equal to the scalar sum.

#include <cstddef>
#include <span>

namespace coronalab::kernels {

struct KernelTable {
  const char* name;
  /// out[i] = (1/pi) * (y - xs[i]) / ((y - xs[i])^2 + delta_sq); NaN where y == xs[i] and
  /// delta_sq == 0, the caller applies the principal-value zero.
  void (*hilbert_row)(double y, const double* xs, std::size_t n, double delta_sq, double* out);
  /// out[i] = y / (y^2 + (s - ts[i])^2)
  void (*poisson_row)(double s, double y, const double* ts, std::size_t n, double* out);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// sum_i ws[i] * y / ((xc - ts[i])^2 + y^2)   (no 1/pi factor)
  double (*poisson_sum)(double xc, double y, const double* ts, const double* ws, std::size_t n);
  /// sum_i v[i]^2 * w[i]
  double (*weighted_sq_sum)(const double* v, const double* w, std::size_t n);
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when the build or the running CPU lacks AVX2.
const KernelTable* avx2_table();

/// Table used by the library. Chosen once per process: AVX2 when available, unless the
/// environment variable CORONA_LAB_SIMD=scalar forces the reference path.
const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double poisson_sum(double xc, double y, std::span<const double> ts,
                          std::span<const double> ws) {
  return active().poisson_sum(xc, y, ts.data(), ws.data(), ts.size());
}

inline double weighted_sq_sum(std::span<const double> v, std::span<const double> w) {
  return active().weighted_sq_sum(v.data(), w.data(), v.size());
}

}  // namespace coronalab::kernels
