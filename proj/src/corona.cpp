#include "coronalab/corona.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "coronalab/errors.hpp"
#include "coronalab/transform.hpp"

namespace coronalab {

int StoppingTree::find(const DyadicInterval& iv) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].interval == iv) return static_cast<int>(i);
  }
  return -1;
}

std::vector<int> StoppingTree::subtree(int node) const {
  std::vector<int> out, stack{node};
  while (!stack.empty()) {
    const int n = stack.back();
    stack.pop_back();
    out.push_back(n);
    const auto& ch = nodes[static_cast<std::size_t>(n)].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

StoppingTree build_stopping_tree(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                 const DyadicInterval& root, double K, int depth_cap) {
  if (!(K > 0.0)) throw ValidationError("stopping threshold must be > 0");
  const auto [r0, r1] = mu.range_half_open(root.left(), root.right());
  if (r0 == r1) throw DomainError("stopping tree needs mu(root) > 0");
  StoppingTree tree;
  tree.root = root;
  tree.threshold = K;
  tree.depth_cap = depth_cap;
  StoppingNode rn;
  rn.interval = root;
  rn.mu_mass = mu.mass(r0, r1);
  rn.nu_mass = nu.mass(Interval::half_open(root.left(), root.right()));
  tree.nodes.push_back(rn);

  struct Pending {
    DyadicInterval iv;
    int depth;
  };
  for (std::size_t s = 0; s < tree.nodes.size(); ++s) {
    const DyadicInterval father = tree.nodes[s].interval;
    const auto [f0, f1] = mu.range_half_open(father.left(), father.right());
    std::vector<Pending> stack;
    auto push_children = [&](const DyadicInterval& iv, int depth) {
      if (depth >= depth_cap) return;
      stack.push_back({iv.child(1), depth + 1});
      stack.push_back({iv.child(0), depth + 1});
    };
    push_children(father, tree.nodes[s].depth);
    std::vector<int> selected;
    while (!stack.empty()) {
      const Pending p = stack.back();
      stack.pop_back();
      const auto [m0, m1] = mu.range_half_open(p.iv.left(), p.iv.right());
      const auto [n0, n1] = nu.range_half_open(p.iv.left(), p.iv.right());
      const std::size_t atoms = (m1 - m0) + (n1 - n0);
      if (atoms == 0) continue;
      const double nu_mass = nu.mass(n0, n1);
      const double mu_mass = mu.mass(m0, m1);
      const double c = p.iv.mid(), y = p.iv.length();
      const double pv = poisson_range(mu, f0, m0, c, y) + poisson_range(mu, m1, f1, c, y);
      const double lhs = pv * pv * nu_mass;
      const bool hit = mu_mass > 0.0 ? lhs >= K * mu_mass : lhs > 0.0;
      if (hit) {
        StoppingNode n;
        n.interval = p.iv;
        n.parent = static_cast<int>(s);
        n.generation = tree.nodes[s].generation + 1;
        n.depth = p.depth;
        n.criterion = lhs;
        n.mu_mass = mu_mass;
        n.nu_mass = nu_mass;
        selected.push_back(static_cast<int>(tree.nodes.size()));
        tree.nodes.push_back(n);
      } else if (atoms > 1) {
        push_children(p.iv, p.depth);
      }
    }
    tree.nodes[s].children = std::move(selected);
  }
  return tree;
}

double packing_ratio(const StoppingTree& tree) {
  double best = 0.0;
  for (const auto& n : tree.nodes) {
    if (!(n.mu_mass > 0.0) || n.children.empty()) continue;
    double s = 0.0;
    for (int c : n.children) s += tree.nodes[static_cast<std::size_t>(c)].mu_mass;
    best = std::max(best, s / n.mu_mass);
  }
  return best;
}

std::vector<double> generation_masses(const StoppingTree& tree) {
  std::vector<double> g;
  for (const auto& n : tree.nodes) {
    if (static_cast<std::size_t>(n.generation) >= g.size()) g.resize(static_cast<std::size_t>(n.generation) + 1, 0.0);
    g[static_cast<std::size_t>(n.generation)] += n.mu_mass;
  }
  return g;
}

int stopping_distance(const StoppingTree& tree, int inner, int outer) {
  int gap = 0;
  for (int n = inner; n >= 0; n = tree.nodes[static_cast<std::size_t>(n)].parent, ++gap) {
    if (n == outer) return gap;
  }
  throw DomainError("stopping nodes are not nested");
}

int owner_of(const StoppingTree& tree, double lo, double hi) {
  int cur = 0;
  for (;;) {
    int next = -1;
    for (int c : tree.nodes[static_cast<std::size_t>(cur)].children) {
      const auto& iv = tree.nodes[static_cast<std::size_t>(c)].interval;
      if (iv.left() <= lo && hi <= iv.right()) {
        next = c;
        break;
      }
    }
    if (next < 0) return cur;
    cur = next;
  }
}

std::vector<int> CoronaFamilies::Q(const StoppingTree& tree, int node) const {
  std::vector<int> out;
  for (int s : tree.subtree(node)) {
    const auto& o = O[static_cast<std::size_t>(s)];
    out.insert(out.end(), o.begin(), o.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int CoronaFamilies::nu_owner(const DyadicInterval& j) const {
  auto it = nu_index.find(j);
  return it == nu_index.end() ? -1 : members[static_cast<std::size_t>(it->second)].owner;
}

int CoronaFamilies::mu_owner(const DyadicInterval& i) const {
  auto it = mu_index.find(i);
  return it == mu_index.end() ? -1 : members[static_cast<std::size_t>(it->second)].owner;
}

namespace {

// Intervals of the lattice through `top` charged by m, scale >= k_min, inside [lo, hi).
void collect(const DiscreteMeasure& m, const DyadicInterval& top, int k_min, double lo, double hi,
             std::vector<DyadicInterval>& out) {
  std::vector<DyadicInterval> stack{top};
  while (!stack.empty()) {
    const DyadicInterval iv = stack.back();
    stack.pop_back();
    const auto [a, b] = m.range_half_open(iv.left(), iv.right());
    if (a == b || iv.scale < k_min) continue;
    if (iv.left() >= lo && iv.right() <= hi) out.push_back(iv);
    stack.push_back(iv.child(1));
    stack.push_back(iv.child(0));
  }
}

}  // namespace

CoronaFamilies corona_families(const StoppingTree& tree, const DiscreteMeasure& mu,
                               const DiscreteMeasure& nu, double nu_shift, int k_min) {
  CoronaFamilies fam;
  fam.O.resize(tree.nodes.size());
  const double lo = tree.root.left(), hi = tree.root.right();
  std::vector<DyadicInterval> mus, nus;
  collect(mu, tree.root, k_min, lo, hi, mus);
  // Stopping intervals without mu-mass still head their own corona.
  const std::set<DyadicInterval> seen(mus.begin(), mus.end());
  for (const auto& n : tree.nodes) {
    if (!seen.count(n.interval)) mus.push_back(n.interval);
  }
  // nu-lattice intervals of the root's scale covering the root.
  const ShiftedLattice nl{nu_shift, k_min, tree.root.scale};
  const DyadicInterval a = nl.locate(lo, tree.root.scale);
  const DyadicInterval b = nl.locate(std::nextafter(hi, lo), tree.root.scale);
  for (std::int64_t idx = a.index; idx <= b.index; ++idx) {
    collect(nu, {tree.root.scale, idx, nu_shift}, k_min, lo, hi, nus);
  }
  auto add = [&](const DyadicInterval& iv, bool is_mu) {
    FamilyMember m{iv, is_mu, owner_of(tree, iv.left(), iv.right())};
    const int id = static_cast<int>(fam.members.size());
    fam.members.push_back(m);
    fam.O[static_cast<std::size_t>(m.owner)].push_back(id);
    (is_mu ? fam.mu_index : fam.nu_index).emplace(iv, id);
  };
  for (const auto& iv : mus) add(iv, true);
  for (const auto& iv : nus) add(iv, false);
  return fam;
}

}  // namespace coronalab
