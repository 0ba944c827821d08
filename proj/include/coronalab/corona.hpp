#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "coronalab/dyadic.hpp"
#include "coronalab/measure.hpp"

namespace coronalab {

struct StoppingNode {
  DyadicInterval interval;
  int parent = -1;               // stopping father, -1 for the root
  std::vector<int> children;     // maximal stopping children, left to right
  int generation = 0;
  int depth = 0;                 // dyadic depth below the tree root
  double criterion = 0.0;        // [P_S(chi_{father \ S} dmu)]^2 nu(S); 0 for the root
  double mu_mass = 0.0;
  double nu_mass = 0.0;
};

/// Stopping tree over one lattice. Node 0 is the root.
struct StoppingTree {
  DyadicInterval root;
  double threshold = 1.0;
  int depth_cap = 0;
  std::vector<StoppingNode> nodes;

  /// Node index of a stopping interval, -1 when it is not one.
  int find(const DyadicInterval& iv) const;
  /// Node indices of the subtree of `node`, inclusive, preorder.
  std::vector<int> subtree(int node) const;
};

/// Top-down construction: inside each stopping interval S-hat, the maximal strict dyadic
/// descendants I (depth <= depth_cap below the root) with
///   [P_I(chi_{S-hat \ I} dmu)]^2 nu(I) >= K mu(I)
/// become its children (for mu(I) = 0: selected iff the left side is > 0). Intervals holding
/// at most one atom of mu + nu are not descended. Throws DomainError when mu(root) = 0 and
/// ValidationError unless K > 0.
StoppingTree build_stopping_tree(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                 const DyadicInterval& root, double K, int depth_cap);

/// max over nodes with mu > 0 of sum_{children} mu(S) / mu(S-hat); 0 for a root-only tree.
double packing_ratio(const StoppingTree& tree);

/// Total mu-mass of the stopping intervals of each generation (index = generation).
std::vector<double> generation_masses(const StoppingTree& tree);

/// Generation gap inside the stopping tree; DomainError unless `inner` lies in the subtree
/// of `outer`.
int stopping_distance(const StoppingTree& tree, int inner, int outer);

struct FamilyMember {
  DyadicInterval interval;
  bool mu_lattice = true;  // false: interval of the nu lattice
  int owner = 0;           // stopping node whose corona contains it
};

/// Assignment of every interval of both lattices (inside the root, charged by its own
/// measure, scale >= k_min) to the smallest stopping S containing it and contained in no
/// stopping child of S.
struct CoronaFamilies {
  std::vector<FamilyMember> members;
  std::vector<std::vector<int>> O;  // per stopping node: indices into members
  std::map<DyadicInterval, int> mu_index, nu_index;

  /// Indices of Q_S: members owned by S or by any stopping descendant.
  std::vector<int> Q(const StoppingTree& tree, int node) const;
  /// Owner of a nu-lattice interval, -1 when it is not a member.
  int nu_owner(const DyadicInterval& j) const;
  int mu_owner(const DyadicInterval& i) const;
};

/// Smallest stopping node containing [lo, hi) and contained in none of its children.
int owner_of(const StoppingTree& tree, double lo, double hi);

CoronaFamilies corona_families(const StoppingTree& tree, const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu, double nu_shift, int k_min);

}  // namespace coronalab
