#pragma once

#include <cmath>

namespace coronalab::detail {

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline std::vector<double> ones_start(std::size_t n) {
  return std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

/// Ramp 0..n-1 with the all-ones component removed, normalized.
inline std::vector<double> ramp_start(std::size_t n) {
  std::vector<double> v(n);
  const double mean = 0.5 * static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i) - mean;
  const double nv = norm2(v);
  if (nv == 0.0) return ones_start(n);
  for (double& x : v) x /= nv;
  return v;
}

}  // namespace coronalab::detail

namespace coronalab {

template <class Apply>
PowerResult top_eigenvalue_psd(std::size_t n, Apply&& apply, const PowerOptions& opt) {
  PowerResult r;
  if (n == 0) return r;
  std::vector<double> v = detail::ones_start(n), y(n);
  auto rayleigh = [&](const std::vector<double>& x, std::vector<double>& out) {
    apply(x, out);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * out[i];
    return s;
  };
  double lambda = rayleigh(v, y);
  // The Frobenius norm is not available through a callback; |S 1| stands in for it.
  if (lambda <= 1e-14 * detail::norm2(y) && n > 1) {
    v = detail::ramp_start(n);
    lambda = rayleigh(v, y);
  }
  r.converged = false;
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    const double ny = detail::norm2(y);
    if (ny == 0.0) {
      r.converged = true;
      r.iterations = it;
      lambda = 0.0;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / ny;
    const double next = rayleigh(v, y);
    r.residual = std::abs(next - lambda) / std::max(std::abs(next), 1e-300);
    lambda = std::max(lambda, next);
    r.iterations = it;
    if (r.residual <= opt.tolerance) {
      r.converged = true;
      break;
    }
  }
  r.value = lambda;
  r.vector = std::move(v);
  return r;
}

}  // namespace coronalab
