#pragma once

// Independent reference computations for the tests. Nothing here calls the library's
// numerical routines; only its data types are shared.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "coronalab/dyadic.hpp"
#include "coronalab/measure.hpp"
#include "coronalab/paraproduct.hpp"
#include "coronalab/rng.hpp"

namespace oracle {

using coronalab::DiscreteMeasure;
using coronalab::DyadicInterval;

inline double sq(double x) { return x * x; }

/// Largest eigenvalue of a symmetric row-major n x n matrix.
inline double top_eigenvalue(const std::vector<double>& m, std::size_t n) {
  if (n == 0) return 0.0;
  Eigen::MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

/// Largest singular value of a row-major rows x cols matrix.
inline double top_singular(const std::vector<double>& m, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) return 0.0;
  Eigen::MatrixXd a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = m[i * cols + j];
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

/// Hilbert kernel operator norm from the definition: sqrt(v_j) (1/pi)/(y_j - x_i) sqrt(w_i).
inline double hilbert_norm(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<double> m(nu.size() * mu.size());
  for (std::size_t j = 0; j < nu.size(); ++j)
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double d = nu.x(j) - mu.x(i);
      m[j * mu.size() + i] = d == 0.0 ? 0.0 : std::sqrt(nu.w(j) * mu.w(i)) / (std::numbers::pi * d);
    }
  return top_singular(m, nu.size(), mu.size());
}

/// (1/pi) sum over atoms of sigma in [lo, hi) minus [skip_lo, skip_hi) of w y / ((x - t)^2 + y^2).
inline double poisson_excluding(const DiscreteMeasure& sigma, double lo, double hi, double skip_lo,
                                double skip_hi, double x, double y) {
  double s = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const double t = sigma.x(i);
    if (t < lo || t >= hi) continue;
    if (t >= skip_lo && t < skip_hi) continue;
    s += sigma.w(i) * y / (sq(x - t) + y * y);
  }
  return s / std::numbers::pi;
}

inline double mass_half_open(const DiscreteMeasure& m, double lo, double hi) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.x(i) >= lo && m.x(i) < hi) s += m.w(i);
  return s;
}

struct PivotalValues {
  double pivotal = 0.0;
  double pivotal1 = 0.0;
};

/// Pivotal constants by listing every antichain of dyadic subintervals of every I below
/// `root` (absolute depth <= depth). Exponential; keep depth <= 4.
inline PivotalValues brute_pivotal(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const DyadicInterval& root,
                                   int depth) {
  PivotalValues out;
  std::vector<std::pair<DyadicInterval, int>> outers{{root, 0}};
  for (std::size_t k = 0; k < outers.size(); ++k) {
    if (outers[k].second < depth) {
      outers.push_back({outers[k].first.child(0), outers[k].second + 1});
      outers.push_back({outers[k].first.child(1), outers[k].second + 1});
    }
  }
  for (const auto& [I, d0] : outers) {
    const double mI = mass_half_open(mu, I.left(), I.right());
    if (mI <= 0.0) continue;
    // All antichain sums under J (both variants), including the empty antichain.
    std::function<std::vector<std::pair<double, double>>(const DyadicInterval&, int)> sums =
        [&](const DyadicInterval& J, int d) -> std::vector<std::pair<double, double>> {
      const double x = J.mid(), y = J.length();
      const double nuJ = mass_half_open(nu, J.left(), J.right());
      const double p = poisson_excluding(mu, I.left(), I.right(), J.left(), J.right(), x, y);
      const double p1 = poisson_excluding(mu, I.left(), I.right(), 0.0, 0.0, x, y);
      std::vector<std::pair<double, double>> out{{0.0, 0.0}, {p * p * nuJ, p1 * p1 * nuJ}};
      if (d < depth) {
        const auto L = sums(J.child(0), d + 1);
        const auto R = sums(J.child(1), d + 1);
        for (std::size_t a = 0; a < L.size(); ++a)
          for (std::size_t b = 0; b < R.size(); ++b) {
            if (a == 0 && b == 0) continue;
            out.push_back({L[a].first + R[b].first, L[a].second + R[b].second});
          }
      }
      return out;
    };
    for (const auto& [v, v1] : sums(I, d0)) {
      out.pivotal = std::max(out.pivotal, v / mI);
      out.pivotal1 = std::max(out.pivotal1, v1 / mI);
    }
  }
  return out;
}

/// sup over every dyadic I (scales from the finest weighted one up to top_scale) of
/// sum_{l inside I} a_l / mu(I), by scanning all lattice intervals that meet the support.
inline double brute_carleson(const coronalab::CarlesonSequence& seq, const DiscreteMeasure& mu, int top_scale) {
  if (seq.weights.empty()) return 0.0;
  int finest = top_scale;
  double shift = 0.0;
  for (const auto& [iv, w] : seq.weights) {
    finest = std::min(finest, iv.scale);
    shift = iv.shift;
  }
  double best = 0.0;
  for (int k = finest; k <= top_scale; ++k) {
    const double len = std::ldexp(1.0, k);
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double lo = shift + std::floor((mu.x(i) - shift) / len) * len;
      const double m = mass_half_open(mu, lo, lo + len);
      double s = 0.0;
      for (const auto& [iv, w] : seq.weights)
        if (iv.scale <= k && iv.left() >= lo && iv.right() <= lo + len) s += w;
      if (m > 0.0) best = std::max(best, s / m);
    }
  }
  return best;
}

/// Top eigenvalue of phi -> sum a_I <phi>_I^2 assembled densely in the sqrt(w) basis.
inline double dense_embedding(const coronalab::CarlesonSequence& seq, const DiscreteMeasure& mu) {
  const std::size_t n = mu.size();
  std::vector<double> m(n * n, 0.0);
  for (const auto& [iv, a] : seq.weights) {
    const double mI = mass_half_open(mu, iv.left(), iv.right());
    if (mI <= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!iv.contains(mu.x(i))) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!iv.contains(mu.x(j))) continue;
        m[i * n + j] += a * std::sqrt(mu.w(i) * mu.w(j)) / (mI * mI);
      }
    }
  }
  return top_eigenvalue(m, n);
}

/// A2 constant over all closed intervals with endpoints at support points.
inline double a2_pairs(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<double> pts;
  for (std::size_t i = 0; i < mu.size(); ++i) pts.push_back(mu.x(i));
  for (std::size_t i = 0; i < nu.size(); ++i) pts.push_back(nu.x(i));
  std::sort(pts.begin(), pts.end());
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a; b < pts.size(); ++b) {
      double m = 0.0, v = 0.0;
      for (std::size_t i = 0; i < mu.size(); ++i)
        if (mu.x(i) >= pts[a] && mu.x(i) <= pts[b]) m += mu.w(i);
      for (std::size_t i = 0; i < nu.size(); ++i)
        if (nu.x(i) >= pts[a] && nu.x(i) <= pts[b]) v += nu.w(i);
      if (m * v == 0.0) continue;
      if (pts[b] == pts[a]) return std::numeric_limits<double>::infinity();
      best = std::max(best, m * v / sq(pts[b] - pts[a]));
    }
  return best;
}

/// Lower bound for the A2 constant from `n` random closed intervals around the support.
inline double a2_random(const DiscreteMeasure& mu, const DiscreteMeasure& nu, coronalab::Rng& rng, std::size_t n) {
  double lo = std::min(mu.x(0), nu.x(0)), hi = std::max(mu.x(mu.size() - 1), nu.x(nu.size() - 1));
  const double pad = hi - lo;
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double a = rng.uniform(lo - pad, hi + pad), b = rng.uniform(lo - pad, hi + pad);
    if (a > b) std::swap(a, b);
    if (b == a) continue;
    double m = 0.0, v = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (mu.x(i) >= a && mu.x(i) <= b) m += mu.w(i);
    for (std::size_t i = 0; i < nu.size(); ++i)
      if (nu.x(i) >= a && nu.x(i) <= b) v += nu.w(i);
    best = std::max(best, m * v / sq(b - a));
  }
  return best;
}

/// Lower bound for M_mu(f)(x) from random closed intervals containing x.
inline double maximal_random(const DiscreteMeasure& mu, const std::vector<double>& f, double x, coronalab::Rng& rng,
                             std::size_t n) {
  const double span = mu.x(mu.size() - 1) - mu.x(0) + std::abs(x) + 1.0;
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = x - span * std::pow(rng.uniform(), 3.0), b = x + span * std::pow(rng.uniform(), 3.0);
    if (b <= a) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (mu.x(i) >= a && mu.x(i) <= b) s += std::abs(f[i]) * mu.w(i);
    best = std::max(best, s / (b - a));
  }
  return best;
}

/// Random measure with n atoms, positions uniform in [lo, hi), log-normal weights.
inline DiscreteMeasure random_measure(coronalab::Rng& rng, std::size_t n, double lo = 0.0, double hi = 1.0) {
  std::vector<coronalab::Atom> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back({rng.uniform(lo, hi), std::exp(rng.normal())});
  return DiscreteMeasure(std::move(atoms));
}

}  // namespace oracle
