#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "coronalab/dyadic.hpp"
#include "coronalab/measure.hpp"

namespace coronalab {

/// h_I^mu: constant on each half of I, mean zero and unit norm in L^2(mu).
struct HaarFunction {
  DyadicInterval interval;
  double value_minus = 0.0;  // on the left half
  double value_plus = 0.0;   // on the right half
  bool degenerate = false;   // one half carries no mass; both values are 0
};

/// Throws DomainError when mu(I) = 0.
HaarFunction haar_function(const DiscreteMeasure& mu, const DyadicInterval& I);

/// Values from the two half masses directly (m_minus, m_plus > 0).
HaarFunction haar_from_masses(const DyadicInterval& I, double m_minus, double m_plus);

/// Expansion of f over {Lambda, Delta_I} for one lattice, stored sparsely.
struct HaarCoefficients {
  ShiftedLattice lattice;
  DyadicInterval root;
  double top = 0.0;                              // integral of f over root
  std::map<DyadicInterval, double> entries;      // (f, h_I)_mu for non-degenerate I
  std::size_t base_size = 0;                     // fingerprint of the measure
  double base_mass = 0.0;
};

/// Throws DomainError when an atom of f's base lies outside `root`.
HaarCoefficients decompose(const WeightedFunction& f, const ShiftedLattice& lattice,
                           const DyadicInterval& root);

/// Inverse of decompose. Throws ValidationError when mu is not the decomposed measure.
std::vector<double> reconstruct_values(const HaarCoefficients& c, const DiscreteMeasure& mu);
WeightedFunction reconstruct(const HaarCoefficients& c, const DiscreteMeasure& mu);

/// Synthesis keeping only entries of scale > k: on every atom of the root this equals the
/// mu-average of f over the scale-k interval containing the atom.
std::vector<double> partial_reconstruct(const HaarCoefficients& c, const DiscreteMeasure& mu, int k);

/// Adds sum_I c_I h_I^mu (atoms in the root only, no Lambda term) to `values`.
void add_haar_terms(const DiscreteMeasure& mu, const std::vector<std::pair<DyadicInterval, double>>& terms,
                    std::vector<double>& values);

/// Nodes of the lattice tree under `root` that contain at least two atoms of mu, together
/// with their atom ranges; visited top-down (preorder). Single-atom nodes are leaves and are
/// not reported.
struct HaarNode {
  DyadicInterval interval;
  std::size_t first = 0, mid = 0, last = 0;  // atoms [first, mid) left half, [mid, last) right
};
std::vector<HaarNode> haar_nodes(const DiscreteMeasure& mu, const DyadicInterval& root);

}  // namespace coronalab
