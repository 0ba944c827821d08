#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "coronalab/measure.hpp"

namespace coronalab {

/// Dense kernel of H_mu from L^2(mu) to L^2(nu): rows follow nu's atoms, columns mu's.
struct KernelMatrix {
  DiscreteMeasure source;  // mu
  DiscreteMeasure target;  // nu
  double delta = 0.0;
  bool coincident = false;  // some entries were zeroed by the principal-value convention
  std::vector<double> entries;  // row-major, target.size() x source.size()

  std::size_t rows() const { return target.size(); }
  std::size_t cols() const { return source.size(); }
  double operator()(std::size_t j, std::size_t i) const { return entries[j * cols() + i]; }
};

/// entries[j][i] = (1/pi) (y_j - x_i) / ((y_j - x_i)^2 + delta^2); exactly 0 when delta = 0
/// and y_j = x_i.
KernelMatrix hilbert_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double delta);

/// (Hf)(y_j) = sum_i K[j][i] f(x_i) w_i. Throws ValidationError on a base mismatch.
WeightedFunction apply_hilbert(const KernelMatrix& k, const WeightedFunction& f);

/// (1/pi) sum_{i in [first,last)} w_i y / ((x - t_i)^2 + y^2)
double poisson_range(const DiscreteMeasure& sigma, std::size_t first, std::size_t last,
                     double x, double y);

struct HalfPlanePoint {
  double x = 0.0;
  double y = 1.0;
};

/// Poisson extension P_sigma(z). Throws DomainError unless z.y > 0.
double poisson_point(const DiscreteMeasure& sigma, HalfPlanePoint z);

/// P_I(sigma) = P_sigma(center(I), |I|). Throws DomainError unless b > a.
double poisson_interval(const DiscreteMeasure& sigma, double a, double b);

/// sup over closed intervals J containing x of (1/|J|) int_J |f| dmu, endpoints in
/// (atom positions) U {x}. +infinity when x is an atom where f != 0.
double maximal_value(const WeightedFunction& f, double x);

/// M_mu(chi_{atoms [first,last)})(x) by the same enumeration.
double maximal_indicator(const DiscreteMeasure& mu, std::size_t first, std::size_t last, double x);

// --- circle -----------------------------------------------------------------------------

using cplx = std::complex<double>;

/// b_a(z) = (z - a) / (1 - conj(a) z)
cplx blaschke(cplx a, cplx z);

/// |(1 - conj(b_a(zeta)) b_a(z)) / (1 - conj(zeta) z)
///   - (1 - |a|^2) / ((1 - a conj(zeta)) (1 - conj(a) z))|.
/// Throws DomainError when |a| >= 1 or zeta == z.
double blaschke_identity_residual(cplx a, cplx zeta, cplx z);

/// Measures on the circle are stored as DiscreteMeasure over angles in [0, 2 pi).
struct CircleKernel {
  DiscreteMeasure source;
  DiscreteMeasure target;
  std::vector<cplx> entries;  // row-major, rows = target atoms
  std::size_t rows() const { return target.size(); }
  std::size_t cols() const { return source.size(); }
};

/// entries[j][i] = (1/2pi) / (1 - conj(zeta_i) z_j), zeta_i = e^{i theta_i} (mu), z_j (nu).
/// Throws ValidationError on a common support angle.
CircleKernel cauchy_matrix_circle(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Angle in [0, 2 pi).
double wrap_angle(double theta);

}  // namespace coronalab
