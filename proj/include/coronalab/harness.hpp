#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coronalab/constants.hpp"
#include "coronalab/dyadic.hpp"
#include "coronalab/goodbad.hpp"
#include "coronalab/measure.hpp"

namespace coronalab {

/// x -> scale * x + offset with scale > 0; weights are multiplied by scale.
struct AffineMap {
  double scale = 1.0;
  double offset = 0.0;
  double operator()(double x) const { return scale * x + offset; }
  DiscreteMeasure apply(const DiscreteMeasure& m) const { return m.affine_image(scale, offset); }
};

/// A lemma ratio together with the same ratio built from absolute values of the summands,
/// which sets the rounding scale when the left side cancels.
struct Ratio {
  double value = 0.0;
  double scale = 0.0;
};

/// |r1 - r0| / max(r0.scale, r1.scale); 0 when both scales vanish.
double ratio_deviation(const Ratio& r0, const Ratio& r1);

struct CheckResult {
  std::string name;
  double ratio_max = 0.0;
  double frozen_bound = 0.0;
  bool pass = false;  // ratio_max <= frozen_bound and invariance_dev <= frozen::invariance
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t max_atoms = 0;
  double invariance_dev = 0.0;  // worst deviation under the affine test maps
  std::map<std::string, double> extra;
};

struct EnsembleConfig {
  std::size_t samples = 500;
  std::uint64_t seed = 20240611;
  int r = 8;  // below about 6 the distance test of good intervals is unsatisfiable
  std::size_t max_atoms = 8;  // per measure and per interval
};

/// Two maps every ensemble check re-evaluates its samples under.
std::vector<AffineMap> invariance_maps(std::uint64_t seed);

// Long-range pairs: |I| <= |J|, dist(I, J) >= |J|.
struct LongRangeSample {
  DiscreteMeasure mu, nu;
  Interval I, J;  // half-open, I of the mu-lattice, J of the nu-lattice
};
LongRangeSample sample_longrange(std::uint64_t seed, const EnsembleConfig& cfg);
/// |(H h_I, h_J)_nu| / (|I| / (dist + |I| + |J|)^2 * sqrt(mu(I) nu(J))); 0 for degenerate h.
Ratio longrange_ratio(const LongRangeSample& s, const AffineMap& map = {});
CheckResult check_longrange(const EnsembleConfig& cfg);

// Poisson operator K_y(t, s) = (1/pi) y / (y^2 + (t - s)^2) from L^2(mu) to L^2(nu).
double poisson_operator_norm(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double y);
/// diam * 2^k for k = -12..4, diam = diameter of the combined support (1 when it is a point).
std::vector<double> default_heights(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
/// Worst norm / sqrt(Q) over the heights. Throws DomainError when Q is infinite.
CheckResult check_poisson_operator(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                   std::span<const double> heights);
CheckResult check_poisson_operator_ensemble(const EnsembleConfig& cfg);

// Stopping term: good J inside a child I_i of I, I strictly inside I-hat.
struct StoppingTermSample {
  DiscreteMeasure mu, nu;
  Interval hat, I, child, J;
};
StoppingTermSample sample_stopping_term(std::uint64_t seed, const EnsembleConfig& cfg);
/// |(H chi_{hat \ I}, h_J)_nu| / (sqrt(nu(J)) (|J|/|I|)^{1/2} P_{I_i}(chi_{hat \ I} dmu)).
Ratio stopping_term_ratio(const StoppingTermSample& s, const AffineMap& map = {});
CheckResult check_stopping_term(const EnsembleConfig& cfg);

// Projection lemma: A' inside A strictly inside B, j = scale gap between A' and A.
struct ProjectionSample {
  DiscreteMeasure mu, nu;
  double omega_mu = 0.0, omega_nu = 0.0;
  DyadicInterval b, a, a_prime;
  int j = 0;
  int r = 4;
};
/// Redraws (up to 64 times) until the projected family is nonempty.
ProjectionSample sample_projection(std::uint64_t seed, int j, const EnsembleConfig& cfg);
/// nu-lattice J projected on: J inside A', |J| <= 2^{1-r} |A|, good_strong against D^mu.
std::vector<HaarNode> projection_family(const ProjectionSample& s);
/// ||P_{nu,A'} H chi_{B \ A}||^2 / (2^{-j} nu(A') (P_A chi_{B \ A} dmu)^2).
Ratio projection_ratio(const ProjectionSample& s, const AffineMap& map = {});
/// ratio_max over all j <= 8; per-j maxima in extra["ratio_max_j<j>"].
CheckResult check_projection_lemma(const EnsembleConfig& cfg);

// Maximal operator and the pivotal chain.
/// inf over x in [lo, hi] of M_mu chi(x), chi = indicator of the atoms [first, last).
double maximal_infimum(const DiscreteMeasure& mu, std::size_t first, std::size_t last, double lo, double hi);
/// sup over contiguous atom runs R of mu with mass > 0 of ||M_mu chi_R||^2_nu / mu(R).
double maximal_surrogate(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
/// Ratio is the larger of (pointwise P / inf M) / A* and pivotal1 / (4 A*^2 surrogate), so
/// the bound is 1. The pair is normalized and the lattice is rooted at unit_root(omega).
/// Throws ValidationError on a common atom.
CheckResult check_maxop_pivotal(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double omega,
                                int depth = 5);
CheckResult check_maxop_ensemble(const EnsembleConfig& cfg);

// Circle necessity. Positions are angles.
struct NecessityDetail {
  double full = 0.0;        // sqrt(P_mu(a) P_nu(a)) / ||H||
  double restricted = 0.0;  // sqrt(P_{mu|E}(a) P_{nu|F}(a)) / ||H||
  double imbalance = 0.0;   // |P_{mu|E1}(a) - P_mu(a)/2| / P_mu(a)
  bool balanced = false;    // imbalance <= 1%
};
/// Disc Poisson integral (1/2pi) sum w (1 - |a|^2) / |zeta - a|^2.
double circle_poisson(const DiscreteMeasure& sigma, std::complex<double> a);
NecessityDetail necessity_ratio(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::complex<double> a,
                                double h_norm);
/// Samples a in the disc of radius 0.9 (a = 0 first). Bound 4 when every cut was balanced,
/// else 8; the restricted product must stay <= 2 in either case.
CheckResult necessity_lower_bound(const DiscreteMeasure& mu, const DiscreteMeasure& nu, std::size_t samples,
                                  std::uint64_t seed);
CheckResult check_necessity_ensemble(const EnsembleConfig& cfg);

/// (H f, g)_nu against the double Haar sum plus the Lambda terms, relative to the sum of
/// absolute values of all terms. The pair is normalized first.
double diagonal_sum_residual(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const std::vector<double>& f,
                             const std::vector<double>& g, const ShiftPair& shifts);

/// Least-squares slope of ln(values[j]) against j over the positive entries; NaN with fewer
/// than two.
double log_slope(std::span<const double> values);

/// Decay of the a^j Carleson constants on seeded uniform-random pairs. Each instance
/// contributes C_j / C_0 (instances with C_0 = 0 are skipped); the slope is fitted to the
/// mean ratios over their positive entries and is -inf when only j = 0 is positive.
struct DecayConfig {
  std::size_t instances = 12;
  std::size_t atoms = 200;  // per measure
  int depth = 8;
  int r = 8;
  int j_max = 6;
  std::uint64_t seed = 1000;
};
struct DecayResult {
  std::vector<double> mean_ratio;  // j = 0..j_max
  std::size_t used = 0;
  double slope = 0.0;
  bool pass = false;  // slope <= -0.3
};
DecayResult a_decay_ensemble(const DecayConfig& cfg);

struct VerifyConfig {
  ConstantsConfig constants;
  GoodBadConfig goodness{8, 40};
  int j_max = 6;
  std::size_t necessity_samples = 64;
  std::uint64_t seed = 1;
  bool ensembles = true;
  EnsembleConfig ensemble;
};

struct CoronaSummary {
  double K = 0.0;  // 4 * pivotal_forward, 1 when that vanishes
  std::size_t nodes = 0;
  int generations = 0;
  double packing = 0.0;
  std::vector<double> generation_masses;
  bool packing_ok = false;     // packing <= 1/4 + 1e-12
  bool generations_ok = false; // generation g mass <= 2^-g mu(root) (1 + 1e-9)
};

struct ParaproductSummary {
  double b_carleson = 0.0;
  double b_embedding = 0.0;
  bool b_embedding_converged = true;
  double pi_o_identity_error = 0.0;  // relative
  double pi_o_bound_ratio = 0.0;     // ||pi^O f||^2 / (4 C*(b) ||f||^2)
  double b_chi_ratio = 0.0;          // max b_S / (C_chi mu(S))
  double first_norm_ratio = 0.0;     // max ||pi_{H chi_S}|| / sqrt(4 C*(a_I))
  double pi_q_ratio = 0.0;           // ||pi^Q f||^2 / (DP + ODP)
  std::vector<double> a_carleson;    // j = 0..j_max
  double a_slope = 0.0;              // -inf when only j = 0 is positive, NaN when none is
};

struct VerificationReport {
  ConstantsReport constants;
  std::vector<std::string> violated;  // hypotheses with an infinite constant
  std::optional<CoronaSummary> corona;
  std::optional<ParaproductSummary> paraproducts;
  std::vector<CheckResult> checks;  // sorted by name
  bool converged = true;
};

struct StoppingTree;
struct ParaproductContext;

/// Packing and generation-mass checks of a tree built with threshold K.
CoronaSummary corona_summary(const StoppingTree& tree, double K);
/// Paraproduct figures of one context; f for the pi^O and pi^Q tests is standard normal
/// from derive_seed(seed, 1).
ParaproductSummary paraproduct_summary(const ParaproductContext& ctx, double cchi_forward, int j_max,
                                       std::uint64_t seed);

VerificationReport full_report(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const VerifyConfig& cfg);

}  // namespace coronalab
