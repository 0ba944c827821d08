#pragma once

#include <map>
#include <utility>
#include <vector>

#include "coronalab/corona.hpp"
#include "coronalab/goodbad.hpp"
#include "coronalab/linalg.hpp"
#include "coronalab/measure.hpp"
#include "coronalab/transform.hpp"

namespace coronalab {

/// Nonnegative weights on dyadic intervals of one lattice.
struct CarlesonSequence {
  std::map<DyadicInterval, double> weights;
};

/// sup over dyadic I (scale <= top_scale) with mu(I) > 0 of sum_{l subset I} a_l / mu(I).
/// Only ancestors of weighted intervals can contribute, so those are enumerated.
double carleson_constant(const CarlesonSequence& seq, const DiscreteMeasure& mu, int top_scale = 0);

/// Top eigenvalue of phi -> sum_I a_I <phi>_{mu,I}^2 on L^2(mu) by power iteration
/// (relative tolerance 1e-10). Intervals with mu(I) = 0 are ignored.
PowerResult embedding_constant(const CarlesonSequence& seq, const DiscreteMeasure& mu);

/// Everything the paraproducts act on: the pair in the normalized frame, both lattices,
/// the stopping tree over the mu-lattice and its corona families.
struct ParaproductContext {
  DiscreteMeasure mu, nu;
  double omega_mu = 0.0, omega_nu = 0.0;
  GoodBadConfig goodness;
  StoppingTree tree;
  CoronaFamilies families;
  KernelMatrix kernel;                     // H_mu from mu to nu
  std::map<DyadicInterval, bool> nu_good;  // good_strong for nu-lattice members
  /// Per stopping node: nu-Haar coefficients of H chi_S and of H chi_{S-hat \ S} (empty for
  /// the root), and their projections onto the good members of O_S and Q_S.
  std::vector<std::map<DyadicInterval, double>> chi_coeffs, gap_coeffs;
  std::vector<std::vector<std::pair<DyadicInterval, double>>> proj_O, proj_Q;

  /// H_mu of the indicator of mu-atoms [first, last) minus [skip_first, skip_last).
  std::vector<double> hilbert_of(std::size_t first, std::size_t last, std::size_t skip_first = 0,
                                 std::size_t skip_last = 0) const;
  /// nu-Haar coefficients of g over the nu-lattice.
  std::map<DyadicInterval, double> nu_coefficients(const std::vector<double>& g) const;
  /// Atom range of mu inside a mu-lattice interval.
  std::pair<std::size_t, std::size_t> mu_range(const DyadicInterval& iv) const;
  /// <f>_{mu, I}; 0 when mu(I) = 0.
  double average(const WeightedFunction& f, const DyadicInterval& iv) const;
  /// Good nu-lattice member whose owner satisfies pred(owner).
  template <class Pred>
  bool in_family(const DyadicInterval& j, Pred&& pred) const {
    const int owner = families.nu_owner(j);
    if (owner < 0) return false;
    const auto it = nu_good.find(j);
    return it != nu_good.end() && it->second && pred(owner);
  }
};

/// Builds the context. mu and nu are mapped onto [1/4, 3/4] together; the stopping tree uses
/// threshold K and depth cap `depth` over the unit root of the mu-lattice.
ParaproductContext make_paraproduct_context(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                            const ShiftPair& shifts, double K, int depth,
                                            const GoodBadConfig& goodness);

/// nu-lattice intervals J in Phi(I): good members of O_S with J inside I and
/// |J| = 2^{1-r} |I|.
std::vector<DyadicInterval> phi_family(const ParaproductContext& ctx, int node, const DyadicInterval& I);

/// Members of O_S from the mu-lattice.
std::vector<DyadicInterval> mu_members(const ParaproductContext& ctx, int node);

/// pi_{H chi_S} phi on the nu-atoms (phi lives on ctx.mu). Throws DomainError for a
/// non-node index.
std::vector<double> first_paraproduct_apply(const ParaproductContext& ctx, int node,
                                            const WeightedFunction& phi);

/// a_I = sum_{J in Phi(I)} ||Delta_J H chi_S||^2 over I in O_S (mu-lattice).
CarlesonSequence carleson_sequence_aI(const ParaproductContext& ctx, int node);

/// Dense L^2(mu) -> L^2(nu) matrix of pi_{H chi_S} (weights folded in) and its norm.
PowerResult first_paraproduct_norm(const ParaproductContext& ctx, int node);

struct CoronaSequences {
  CarlesonSequence b;               // b_S = ||P_{nu,O_S} H chi_S||^2
  std::vector<CarlesonSequence> a;  // a[j][S], j = 0..j_max
};

CoronaSequences carleson_sequences_corona(const ParaproductContext& ctx, int j_max = 6);

std::vector<double> pi_O_apply(const ParaproductContext& ctx, const WeightedFunction& f);
std::vector<double> pi_Q_apply(const ParaproductContext& ctx, const WeightedFunction& f);

struct PiQSplit {
  double norm_sq = 0.0;    // ||pi^Q f||^2
  double dp = 0.0;         // diagonal part
  double odp = 0.0;        // sum over ordered nested pairs of |.||.||(v_S, v_S')|
  double signed_cross = 0.0;  // same with signs: norm_sq = dp + signed_cross
};
PiQSplit pi_Q_split(const ParaproductContext& ctx, const WeightedFunction& f);

/// ||nu-weighted||^2 of a function on ctx.nu.
double nu_norm_sq(const ParaproductContext& ctx, const std::vector<double>& g);

}  // namespace coronalab
