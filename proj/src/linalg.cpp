#include "coronalab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coronalab/kernels.hpp"
#include "coronalab/parallel.hpp"

namespace coronalab {

SymmetricEigen symmetric_eigen(std::vector<double> s, std::size_t n) {
  SymmetricEigen e;
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto off = [&] {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) t += s[i * n + j] * s[i * n + j];
      }
    }
    return std::sqrt(t);
  };
  double total = 0.0;
  for (double x : s) total += x * x;
  total = std::sqrt(total);
  for (e.sweeps = 0; e.sweeps < 100; ++e.sweeps) {
    const double o = off();
    if (o <= 1e-17 * total || o == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s[p * n + q];
        if (apq == 0.0) continue;
        const double app = s[p * n + p], aqq = s[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s[k * n + p], skq = s[k * n + q];
          s[k * n + p] = c * skp - sn * skq;
          s[k * n + q] = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s[p * n + k], sqk = s[q * n + k];
          s[p * n + k] = c * spk - sn * sqk;
          s[q * n + k] = sn * spk + c * sqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - sn * vkq;
          v[k * n + q] = sn * vkp + c * vkq;
        }
      }
    }
  }
  e.off_norm = off();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return s[x * n + x] < s[y * n + y]; });
  e.values.resize(n);
  e.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    e.values[k] = s[order[k] * n + order[k]];
    for (std::size_t i = 0; i < n; ++i) e.vectors[i * n + k] = v[i * n + order[k]];
  }
  return e;
}

namespace {

PowerResult dense_top_singular(const std::vector<double>& a, std::size_t rows, std::size_t cols) {
  const bool by_cols = cols <= rows;
  const std::size_t n = by_cols ? cols : rows;
  std::vector<double> g(n * n, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p; q < n; ++q) {
      double s = 0.0;
      if (by_cols) {
        for (std::size_t j = 0; j < rows; ++j) s += a[j * cols + p] * a[j * cols + q];
      } else {
        for (std::size_t i = 0; i < cols; ++i) s += a[p * cols + i] * a[q * cols + i];
      }
      g[p * n + q] = g[q * n + p] = s;
    }
  }
  const SymmetricEigen e = symmetric_eigen(std::move(g), n);
  PowerResult r;
  r.value = std::sqrt(std::max(0.0, e.values.back()));
  r.iterations = e.sweeps;
  r.residual = e.off_norm;
  r.vector.assign(cols, 0.0);
  if (by_cols) {
    for (std::size_t i = 0; i < cols; ++i) r.vector[i] = e.vectors[i * n + n - 1];
  } else if (r.value > 0.0) {
    for (std::size_t i = 0; i < cols; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < rows; ++j) s += a[j * cols + i] * e.vectors[j * n + n - 1];
      r.vector[i] = s / r.value;
    }
  }
  return r;
}

}  // namespace

PowerResult top_singular_value(const std::vector<double>& a, std::size_t rows, std::size_t cols,
                               const PowerOptions& opt) {
  PowerResult r;
  if (rows == 0 || cols == 0) return r;
  if (std::min(rows, cols) <= opt.dense_threshold) return dense_top_singular(a, rows, cols);
  std::vector<double> at(rows * cols);
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t i = 0; i < cols; ++i) at[i * rows + j] = a[j * cols + i];
  }
  const auto& kt = kernels::active();
  const std::size_t grain = std::max<std::size_t>(1, 65536 / std::max<std::size_t>(1, cols));
  std::vector<double> u(rows), w(cols);
  // ||A v||^2 for unit v; w receives A^T A v.
  auto step = [&](const std::vector<double>& v) {
    parallel_for(rows, [&](std::size_t j) { u[j] = kt.dot(a.data() + j * cols, v.data(), cols); },
                 grain);
    parallel_for(cols, [&](std::size_t i) { w[i] = kt.dot(at.data() + i * rows, u.data(), rows); },
                 grain);
    double s = 0.0;
    for (double x : u) s += x * x;
    return s;
  };
  double frob = 0.0;
  for (double x : a) frob += x * x;
  std::vector<double> v = detail::ones_start(cols);
  double lambda = step(v);
  if (lambda <= 1e-14 * frob && cols > 1) {
    v = detail::ramp_start(cols);
    lambda = step(v);
  }
  r.converged = false;
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    const double nw = detail::norm2(w);
    r.iterations = it;
    if (nw == 0.0) {
      r.converged = true;
      break;
    }
    for (std::size_t i = 0; i < cols; ++i) v[i] = w[i] / nw;
    const double next = step(v);
    r.residual = std::abs(next - lambda) / std::max(next, 1e-300);
    lambda = std::max(lambda, next);
    if (r.residual <= opt.tolerance) {
      r.converged = true;
      break;
    }
  }
  r.value = std::sqrt(lambda);
  r.vector = std::move(v);
  return r;
}

}  // namespace coronalab
