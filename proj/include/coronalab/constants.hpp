#pragma once

#include <cstdint>
#include <vector>

#include "coronalab/dyadic.hpp"
#include "coronalab/linalg.hpp"
#include "coronalab/measure.hpp"
#include "coronalab/transform.hpp"

namespace coronalab {

enum class Direction { forward, backward };

/// ||H_mu||_{L^2(mu) -> L^2(nu)}: top singular value of sqrt(v_j) K[j][i] sqrt(w_i).
PowerResult operator_norm(const KernelMatrix& k, const PowerOptions& opt = {});

/// Operator norm of the weighted circle kernel (complex matrix, via its real embedding).
PowerResult operator_norm(const CircleKernel& k, const PowerOptions& opt = {});

struct SawyerHilbert {
  double global = 0.0;  // sup_I ||H chi_I||^2_{L^2(nu)} / mu(I)
  double local = 0.0;   // same with the nu-norm restricted to I
};

/// Hilbert testing constants over the subset-representative intervals. Forward tests H_mu
/// into L^2(nu); backward swaps the measures. Throws ValidationError when the source or the
/// target measure is empty.
SawyerHilbert sawyer_hilbert_constant(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                      Direction dir, double delta = 0.0);

/// sup_I ||M_mu chi_I||^2_{L^2(nu)} / mu(I); +infinity when the measures share an atom.
double sawyer_maximal_constant(const DiscreteMeasure& mu, const DiscreteMeasure& nu, Direction dir);

/// Q = sup over closed [u_i, u_j] of mu(I) nu(I) / |I|^2; +infinity on a common atom.
double a2_constant(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct PoissonA2Grid {
  int iterations = 8;
};

struct PoissonA2 {
  double value = 0.0;  // certified lower bound for sup P_mu(z) P_nu(z)
  HalfPlanePoint argmax{0.0, 1.0};
  std::size_t candidates = 0;
};

/// Max of P_mu(z) P_nu(z) over: z_I = (center(I), |I|) for every tight interval, a dyadic
/// ladder of heights (min gap / 4 up to 4 * diameter) over support points and gap
/// midpoints, then `iterations` rounds of 4-neighbour refinement with halving steps.
/// +infinity on a common atom.
PoissonA2 poisson_a2(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const PoissonA2Grid& grid = {});

struct Pivotal {
  double pivotal = 0.0;   // terms use chi_{I \ I_alpha}
  double pivotal1 = 0.0;  // terms use chi_I
};

/// Pivotal constant over dyadic I inside `root` with depth(I) <= depth and antichains of
/// dyadic subintervals of I at absolute depth <= depth, by tree dynamic programming.
/// Throws DomainError when mu(root) = 0.
Pivotal pivotal_constant(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                         const DyadicInterval& root, int depth);

struct ConstantsConfig {
  double delta = 0.0;
  int depth = 6;
  PoissonA2Grid grid;
  ShiftPair shifts;
};

struct ConstantsReport {
  double opnorm = 0.0;
  bool opnorm_converged = true;
  std::size_t opnorm_iterations = 0;
  double opnorm_residual = 0.0;
  double cchi_forward = 0.0, cchi_backward = 0.0;
  double cchi_local_forward = 0.0, cchi_local_backward = 0.0;
  double cm_forward = 0.0, cm_backward = 0.0;
  double q = 0.0;
  double pq = 0.0;
  HalfPlanePoint pq_argmax;
  std::size_t pq_candidates = 0;
  int pq_iterations = 0;
  double pivotal_forward = 0.0, pivotal_backward = 0.0;
  double pivotal1_forward = 0.0, pivotal1_backward = 0.0;
  int depth = 0;
  ShiftPair shifts;
  double delta = 0.0;
  bool common_atoms = false;
  bool kernel_flagged = false;
};

/// All constants for the pair. Lattice-based ones (pivotal) are computed after mapping the
/// combined support onto [1/4, 3/4]; the forward pivotal uses shift omega1, the backward
/// one omega2. Infinite constants are reported, never thrown.
ConstantsReport full_constants(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               const ConstantsConfig& cfg);

/// Root of the shifted lattice used for normalized supports: [omega, omega + 1).
inline DyadicInterval unit_root(double omega) { return {0, 0, omega}; }

}  // namespace coronalab
