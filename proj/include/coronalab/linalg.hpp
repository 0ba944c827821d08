#pragma once

#include <cstddef>
#include <vector>

namespace coronalab {

struct PowerResult {
  double value = 0.0;  // top singular value, or top eigenvalue for top_eigenvalue_psd
  bool converged = true;
  std::size_t iterations = 0;
  double residual = 0.0;     // last relative change of the Rayleigh quotient
  std::vector<double> vector;  // last right singular vector iterate
};

struct PowerOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 100000;
  /// top_singular_value switches to a dense symmetric eigensolve when the smaller dimension
  /// is at most this; power iteration stalls on nearly repeated top singular values.
  std::size_t dense_threshold = 128;
};

struct SymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column k (row-major n x n) belongs to values[k]
  std::size_t sweeps = 0;
  double off_norm = 0.0;        // final off-diagonal Frobenius norm
};

/// Cyclic Jacobi on a symmetric row-major n x n matrix.
SymmetricEigen symmetric_eigen(std::vector<double> s, std::size_t n);

/// Largest singular value of a dense row-major rows x cols matrix. Small problems use the
/// Gram matrix and symmetric_eigen; otherwise power iteration on A^T A, started from the
/// normalized all-ones vector. If the first Rayleigh quotient is below 1e-14 ||A||_F^2 the
/// start is replaced once by a ramp orthogonal to all-ones.
PowerResult top_singular_value(const std::vector<double>& a, std::size_t rows, std::size_t cols,
                               const PowerOptions& opt = {});

/// Largest eigenvalue of a symmetric positive semidefinite operator given as a callback
/// y = S x, same start and stopping rules.
template <class Apply>
PowerResult top_eigenvalue_psd(std::size_t n, Apply&& apply, const PowerOptions& opt = {});

}  // namespace coronalab

#include "coronalab/linalg_impl.hpp"
