// Compiled with -mavx2 (and deliberately without -mfma): each lane performs exactly the
// scalar operation sequence, so element-wise kernels match the reference bit for bit.

#include "coronalab/kernels.hpp"

#include <immintrin.h>

#include <numbers>

namespace coronalab::kernels {
namespace {

constexpr double kInvPi = std::numbers::inv_pi;

inline double horizontal_sum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void hilbert_row(double y, const double* xs, std::size_t n, double delta_sq, double* out) {
  const __m256d vy = _mm256_set1_pd(y);
  const __m256d vdsq = _mm256_set1_pd(delta_sq);
  const __m256d vinv = _mm256_set1_pd(kInvPi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(vy, _mm256_loadu_pd(xs + i));
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(d, d), vdsq);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_div_pd(d, den), vinv));
  }
  for (; i < n; ++i) {
    const double d = y - xs[i];
    out[i] = (d / (d * d + delta_sq)) * kInvPi;
  }
}

void poisson_row(double s, double y, const double* ts, std::size_t n, double* out) {
  const double y2 = y * y;
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d vy = _mm256_set1_pd(y);
  const __m256d vy2 = _mm256_set1_pd(y2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(vs, _mm256_loadu_pd(ts + i));
    const __m256d den = _mm256_add_pd(vy2, _mm256_mul_pd(d, d));
    _mm256_storeu_pd(out + i, _mm256_div_pd(vy, den));
  }
  for (; i < n; ++i) {
    const double d = s - ts[i];
    out[i] = y / (y2 + d * d);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return horizontal_sum(acc) + tail;
}

double poisson_sum(double xc, double y, const double* ts, const double* ws, std::size_t n) {
  const double y2 = y * y;
  const __m256d vx = _mm256_set1_pd(xc);
  const __m256d vy = _mm256_set1_pd(y);
  const __m256d vy2 = _mm256_set1_pd(y2);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(vx, _mm256_loadu_pd(ts + i));
    const __m256d k = _mm256_div_pd(vy, _mm256_add_pd(_mm256_mul_pd(d, d), vy2));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(ws + i), k));
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double d = xc - ts[i];
    tail += ws[i] * (y / (d * d + y2));
  }
  return horizontal_sum(acc) + tail;
}

double weighted_sq_sum(const double* v, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(x, x), _mm256_loadu_pd(w + i)));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += v[i] * v[i] * w[i];
  return horizontal_sum(acc) + tail;
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{"avx2", hilbert_row, poisson_row, dot, poisson_sum,
                                 weighted_sq_sum};
  return table;
}

}  // namespace coronalab::kernels
