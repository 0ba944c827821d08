#include "coronalab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "coronalab/errors.hpp"
#include "coronalab/kernels.hpp"
#include "coronalab/parallel.hpp"

namespace coronalab {

KernelMatrix hilbert_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double delta) {
  if (!(delta >= 0.0)) throw ValidationError("regularization must be >= 0");
  KernelMatrix k;
  k.source = mu;
  k.target = nu;
  k.delta = delta;
  const std::size_t n = nu.size(), m = mu.size();
  k.entries.assign(n * m, 0.0);
  const double dsq = delta * delta;
  const auto& kt = kernels::active();
  std::vector<char> flagged(n, 0);
  parallel_for(n, [&](std::size_t j) {
    double* row = k.entries.data() + j * m;
    kt.hilbert_row(nu.x(j), mu.positions().data(), m, dsq, row);
    if (delta == 0.0 && mu.has_atom_at(nu.x(j))) {
      const auto it = std::lower_bound(mu.positions().begin(), mu.positions().end(), nu.x(j));
      row[it - mu.positions().begin()] = 0.0;
      flagged[j] = 1;
    }
  }, 64);
  k.coincident = std::any_of(flagged.begin(), flagged.end(), [](char c) { return c != 0; });
  return k;
}

WeightedFunction apply_hilbert(const KernelMatrix& k, const WeightedFunction& f) {
  f.require_base(k.source);
  std::vector<double> fw(k.cols());
  for (std::size_t i = 0; i < k.cols(); ++i) fw[i] = f[i] * k.source.w(i);
  std::vector<double> out(k.rows());
  const auto& kt = kernels::active();
  parallel_for(k.rows(), [&](std::size_t j) {
    out[j] = kt.dot(k.entries.data() + j * k.cols(), fw.data(), k.cols());
  }, 256);
  return WeightedFunction(k.target, std::move(out));
}

double poisson_range(const DiscreteMeasure& sigma, std::size_t first, std::size_t last, double x,
                     double y) {
  if (last <= first) return 0.0;
  return std::numbers::inv_pi * kernels::active().poisson_sum(
      x, y, sigma.positions().data() + first, sigma.weights().data() + first, last - first);
}

double poisson_point(const DiscreteMeasure& sigma, HalfPlanePoint z) {
  if (!(z.y > 0.0)) throw DomainError("Poisson extension needs y > 0");
  return poisson_range(sigma, 0, sigma.size(), z.x, z.y);
}

double poisson_interval(const DiscreteMeasure& sigma, double a, double b) {
  if (!(b > a)) throw DomainError("Poisson integral over a degenerate interval");
  return poisson_point(sigma, {(a + b) / 2.0, b - a});
}

double maximal_indicator(const DiscreteMeasure& mu, std::size_t first, std::size_t last,
                         double x) {
  if (last <= first) return 0.0;
  // Atoms of the indicator left of x are [first, p), right of x are [q, last).
  const auto pos = mu.positions();
  const auto lo = std::lower_bound(pos.begin() + first, pos.begin() + last, x) - pos.begin();
  const auto hi = std::upper_bound(pos.begin() + first, pos.begin() + last, x) - pos.begin();
  const auto p = static_cast<std::size_t>(lo), q = static_cast<std::size_t>(hi);
  if (q > p) return std::numeric_limits<double>::infinity();  // x is a charged atom
  // Suffix masses to the left: L[l] = mass of atoms l..p-1; prefix masses to the right.
  double best = 0.0;
  std::vector<double> left_mass(p - first + 1, 0.0);
  for (std::size_t l = p; l-- > first;) left_mass[l - first] = left_mass[l - first + 1] + mu.w(l);
  // J = [x_l, x] and J = [x_l, x_r]
  double right_mass = 0.0;
  for (std::size_t l = first; l < p; ++l) {
    best = std::max(best, left_mass[l - first] / (x - mu.x(l)));
  }
  for (std::size_t r = q; r < last; ++r) {
    right_mass += mu.w(r);
    best = std::max(best, right_mass / (mu.x(r) - x));
    for (std::size_t l = first; l < p; ++l) {
      best = std::max(best, (left_mass[l - first] + right_mass) / (mu.x(r) - mu.x(l)));
    }
  }
  return best;
}

double maximal_value(const WeightedFunction& f, double x) {
  const DiscreteMeasure& mu = f.base();
  const std::size_t m = mu.size();
  const auto pos = mu.positions();
  const std::size_t p = static_cast<std::size_t>(std::lower_bound(pos.begin(), pos.end(), x) - pos.begin());
  const std::size_t q = static_cast<std::size_t>(std::upper_bound(pos.begin(), pos.end(), x) - pos.begin());
  double at_x = 0.0;
  for (std::size_t i = p; i < q; ++i) at_x += std::abs(f[i]) * mu.w(i);
  if (at_x > 0.0) return std::numeric_limits<double>::infinity();
  std::vector<double> left_mass(p + 1, 0.0);
  for (std::size_t l = p; l-- > 0;) left_mass[l] = left_mass[l + 1] + std::abs(f[l]) * mu.w(l);
  double best = 0.0;
  for (std::size_t l = 0; l < p; ++l) best = std::max(best, left_mass[l] / (x - mu.x(l)));
  double right_mass = 0.0;
  for (std::size_t r = q; r < m; ++r) {
    right_mass += std::abs(f[r]) * mu.w(r);
    best = std::max(best, right_mass / (mu.x(r) - x));
    for (std::size_t l = 0; l < p; ++l) {
      best = std::max(best, (left_mass[l] + right_mass) / (mu.x(r) - mu.x(l)));
    }
  }
  return best;
}

// --- circle -----------------------------------------------------------------------------

cplx blaschke(cplx a, cplx z) { return (z - a) / (1.0 - std::conj(a) * z); }

double blaschke_identity_residual(cplx a, cplx zeta, cplx z) {
  if (!(std::abs(a) < 1.0)) throw DomainError("Blaschke parameter must satisfy |a| < 1");
  if (zeta == z) throw DomainError("identity is singular at zeta = z");
  const cplx lhs = (1.0 - std::conj(blaschke(a, zeta)) * blaschke(a, z)) / (1.0 - std::conj(zeta) * z);
  const cplx rhs = (1.0 - std::norm(a)) / ((1.0 - a * std::conj(zeta)) * (1.0 - std::conj(a) * z));
  return std::abs(lhs - rhs);
}

double wrap_angle(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

CircleKernel cauchy_matrix_circle(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (share_atom(mu, nu)) throw ValidationError("circle measures share a support point");
  CircleKernel k;
  k.source = mu;
  k.target = nu;
  k.entries.resize(nu.size() * mu.size());
  const double c = 0.5 * std::numbers::inv_pi;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    const cplx z = std::polar(1.0, nu.x(j));
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const cplx zeta = std::polar(1.0, mu.x(i));
      k.entries[j * mu.size() + i] = c / (1.0 - std::conj(zeta) * z);
    }
  }
  return k;
}

}  // namespace coronalab
