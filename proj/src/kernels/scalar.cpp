#include "coronalab/kernels.hpp"

#include <numbers>

namespace coronalab::kernels {
namespace {

constexpr double kInvPi = std::numbers::inv_pi;

void hilbert_row(double y, const double* xs, std::size_t n, double delta_sq, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double d = y - xs[i];
    out[i] = (d / (d * d + delta_sq)) * kInvPi;
  }
}

void poisson_row(double s, double y, const double* ts, std::size_t n, double* out) {
  const double y2 = y * y;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = s - ts[i];
    out[i] = y / (y2 + d * d);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double poisson_sum(double xc, double y, const double* ts, const double* ws, std::size_t n) {
  const double y2 = y * y;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = xc - ts[i];
    acc += ws[i] * (y / (d * d + y2));
  }
  return acc;
}

double weighted_sq_sum(const double* v, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += v[i] * v[i] * w[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", hilbert_row, poisson_row, dot, poisson_sum,
                                 weighted_sq_sum};
  return table;
}

}  // namespace coronalab::kernels
