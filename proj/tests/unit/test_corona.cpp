#include "coronalab/corona.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "coronalab/constants.hpp"
#include "coronalab/errors.hpp"
#include "coronalab/rng.hpp"
#include "oracles.hpp"

using namespace coronalab;

namespace {

struct Instance {
  DiscreteMeasure mu, nu;
  DyadicInterval root;
  int depth;
  double pivotal;
};

Instance random_instance(Rng& rng, std::size_t max_atoms, int depth) {
  Instance in;
  in.mu = oracle::random_measure(rng, 1 + rng.index(max_atoms), 0.25, 0.75);
  in.nu = oracle::random_measure(rng, 1 + rng.index(max_atoms), 0.25, 0.75);
  in.root = unit_root(rng.uniform(-0.25, 0.25));
  in.depth = depth;
  in.pivotal = pivotal_constant(in.mu, in.nu, in.root, depth).pivotal;
  return in;
}

double criterion(const Instance& in, const DyadicInterval& father, const DyadicInterval& I) {
  const double p = oracle::poisson_excluding(in.mu, father.left(), father.right(), I.left(), I.right(), I.mid(),
                                             I.length());
  return p * p * oracle::mass_half_open(in.nu, I.left(), I.right());
}

std::size_t atoms_in(const Instance& in, const DyadicInterval& I) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < in.mu.size(); ++i) n += I.contains(in.mu.x(i));
  for (std::size_t i = 0; i < in.nu.size(); ++i) n += I.contains(in.nu.x(i));
  return n;
}

bool hits(const Instance& in, const DyadicInterval& father, const DyadicInterval& I, double K) {
  const double m = oracle::mass_half_open(in.mu, I.left(), I.right());
  const double c = criterion(in, father, I);
  return m > 0.0 ? c >= K * m : c > 0.0;
}

// Children of `father` by scanning its descendants top-down.
std::set<DyadicInterval> expected_children(const Instance& in, const DyadicInterval& father, int father_depth,
                                           double K) {
  std::set<DyadicInterval> out;
  std::vector<std::pair<DyadicInterval, int>> todo{{father.child(0), father_depth + 1},
                                                   {father.child(1), father_depth + 1}};
  if (father_depth >= in.depth) return out;
  while (!todo.empty()) {
    const auto [I, d] = todo.back();
    todo.pop_back();
    const std::size_t n = atoms_in(in, I);
    if (n == 0) continue;
    if (hits(in, father, I, K)) {
      out.insert(I);
    } else if (n > 1 && d < in.depth) {
      todo.push_back({I.child(0), d + 1});
      todo.push_back({I.child(1), d + 1});
    }
  }
  return out;
}

}  // namespace

TEST(Corona, HugeThresholdRootOnly) {
  Rng rng(1);
  const auto in = random_instance(rng, 20, 8);
  const auto tree = build_stopping_tree(in.mu, in.nu, in.root, 1e300, in.depth);
  // Only intervals without mu-mass can still be selected.
  for (std::size_t s = 1; s < tree.nodes.size(); ++s) EXPECT_EQ(tree.nodes[s].mu_mass, 0.0);
  EXPECT_EQ(packing_ratio(tree), 0.0);
  EXPECT_EQ(tree.nodes[0].criterion, 0.0);
  EXPECT_EQ(build_stopping_tree(in.mu, in.nu, in.root, 1e300, 0).nodes.size(), 1u);
}

TEST(Corona, TinyFarMassRootOnly) {
  const DiscreteMeasure mu({{0.26, 1.0}, {0.3, 1.0}}), nu({{0.74, 1e-12}});
  const auto tree = build_stopping_tree(mu, nu, unit_root(0.0), 1.0, 10);
  // The nu atom ends up alone in a mu-free interval, which is selected; nothing else is.
  ASSERT_EQ(tree.nodes.size(), 2u);
  EXPECT_EQ(tree.nodes[1].mu_mass, 0.0);
  EXPECT_TRUE(tree.nodes[1].interval.contains(0.74));
  EXPECT_EQ(packing_ratio(tree), 0.0);
}

TEST(Corona, Errors) {
  const DiscreteMeasure mu({{0.3, 1.0}}), nu({{0.6, 1.0}});
  EXPECT_THROW(build_stopping_tree(mu, nu, unit_root(0.0), 0.0, 4), ValidationError);
  EXPECT_THROW(build_stopping_tree(DiscreteMeasure({{5.0, 1.0}}), nu, unit_root(0.0), 1.0, 4), DomainError);
}

TEST(Corona, ChildrenMatchTopDownScan) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto in = random_instance(rng, 15, 6);
    const double K = in.pivotal > 0.0 ? 4.0 * in.pivotal : 1.0;
    const auto tree = build_stopping_tree(in.mu, in.nu, in.root, K, in.depth);
    for (const auto& node : tree.nodes) {
      std::set<DyadicInterval> got;
      for (int c : node.children) {
        const auto& ch = tree.nodes[static_cast<std::size_t>(c)];
        got.insert(ch.interval);
        EXPECT_EQ(ch.generation, node.generation + 1);
        const double crit = criterion(in, node.interval, ch.interval);
        EXPECT_NEAR(ch.criterion, crit, 1e-12 * crit);
        if (ch.mu_mass > 0.0) EXPECT_GE(crit * (1 + 1e-12), K * ch.mu_mass);
        // Minimality: no strict ancestor below the father meets the criterion.
        for (auto a = ch.interval.parent(); a.scale < node.interval.scale; a = a.parent())
          EXPECT_FALSE(hits(in, node.interval, a, K));
      }
      EXPECT_EQ(got, expected_children(in, node.interval, node.depth, K));
    }
  }
}

TEST(Corona, PackingBoundedByPivotalOverK) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto in = random_instance(rng, 20, 6);
    if (in.pivotal <= 0.0) continue;
    for (double f : {1.5, 4.0, 10.0}) {
      const double K = f * in.pivotal;
      const auto tree = build_stopping_tree(in.mu, in.nu, in.root, K, in.depth);
      EXPECT_LE(packing_ratio(tree), in.pivotal / K * (1 + 1e-12));
      const auto g = generation_masses(tree);
      for (std::size_t k = 0; k < g.size(); ++k)
        EXPECT_LE(g[k], std::pow(in.pivotal / K, static_cast<double>(k)) * g[0] * (1 + 1e-12));
    }
  }
}

TEST(Corona, PackingNonincreasingInK) {
  Rng rng(4);
  const auto in = random_instance(rng, 30, 7);
  double last = std::numeric_limits<double>::infinity();
  for (double K = 1e-4; K < 1e4; K *= 3.0) {
    const double p = packing_ratio(build_stopping_tree(in.mu, in.nu, in.root, K, in.depth));
    EXPECT_LE(p, last);
    last = p;
  }
}

TEST(Corona, ChildrenDisjointAndInside) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto in = random_instance(rng, 25, 7);
    const auto tree = build_stopping_tree(in.mu, in.nu, in.root, 1e-3, in.depth);
    for (const auto& node : tree.nodes) {
      for (std::size_t a = 0; a < node.children.size(); ++a) {
        const auto& A = tree.nodes[static_cast<std::size_t>(node.children[a])].interval;
        EXPECT_TRUE(node.interval.contains(A));
        for (std::size_t b = a + 1; b < node.children.size(); ++b) {
          const auto& B = tree.nodes[static_cast<std::size_t>(node.children[b])].interval;
          EXPECT_TRUE(A.right() <= B.left() || B.right() <= A.left());
        }
      }
    }
  }
}

TEST(Corona, StoppingDistance) {
  Rng rng(6);
  const auto in = random_instance(rng, 30, 8);
  const auto tree = build_stopping_tree(in.mu, in.nu, in.root, 1e-3, in.depth);
  for (std::size_t s = 0; s < tree.nodes.size(); ++s) {
    const int si = static_cast<int>(s);
    EXPECT_EQ(stopping_distance(tree, si, si), 0);
    const int p = tree.nodes[s].parent;
    if (p < 0) continue;
    EXPECT_EQ(stopping_distance(tree, si, p), 1);
    // r <= t: the generation gap never exceeds the dyadic distance.
    for (int a = p; a >= 0; a = tree.nodes[static_cast<std::size_t>(a)].parent)
      EXPECT_LE(stopping_distance(tree, si, a), tree_distance(tree.nodes[static_cast<std::size_t>(a)].interval,
                                                               tree.nodes[s].interval));
  }
  if (tree.nodes.size() > 2 && !tree.nodes[0].children.empty()) {
    const int c = tree.nodes[0].children[0];
    EXPECT_THROW(stopping_distance(tree, 0, c), DomainError);
  }
}

TEST(Corona, FamiliesRootOnly) {
  Rng rng(7);
  const auto in = random_instance(rng, 10, 6);
  const auto tree = build_stopping_tree(in.mu, in.nu, in.root, 1e300, 0);
  const auto fam = corona_families(tree, in.mu, in.nu, 0.05, -12);
  ASSERT_EQ(fam.O.size(), 1u);
  EXPECT_EQ(fam.O[0].size(), fam.members.size());
  EXPECT_GT(fam.members.size(), 0u);
}

TEST(Corona, FamiliesPartitionAndOwnership) {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto in = random_instance(rng, 20, 7);
    const auto tree = build_stopping_tree(in.mu, in.nu, in.root, 1e-3, in.depth);
    const auto fam = corona_families(tree, in.mu, in.nu, rng.uniform(-0.25, 0.25), -14);
    std::size_t total = 0;
    for (const auto& o : fam.O) total += o.size();
    EXPECT_EQ(total, fam.members.size());
    for (std::size_t s = 0; s < tree.nodes.size(); ++s) {
      const auto& node = tree.nodes[s];
      const auto it = fam.mu_index.find(node.interval);
      ASSERT_NE(it, fam.mu_index.end());
      EXPECT_EQ(fam.members[static_cast<std::size_t>(it->second)].owner, static_cast<int>(s));
      for (int c : node.children) {
        const auto jt = fam.mu_index.find(tree.nodes[static_cast<std::size_t>(c)].interval);
        ASSERT_NE(jt, fam.mu_index.end());
        EXPECT_NE(fam.members[static_cast<std::size_t>(jt->second)].owner, static_cast<int>(s));
      }
    }
    // Owner: smallest stopping interval containing the member.
    for (const auto& m : fam.members) {
      int best = -1;
      for (std::size_t s = 0; s < tree.nodes.size(); ++s) {
        const auto& iv = tree.nodes[s].interval;
        if (iv.left() <= m.interval.left() && m.interval.right() <= iv.right() &&
            (best < 0 || iv.length() < tree.nodes[static_cast<std::size_t>(best)].interval.length()))
          best = static_cast<int>(s);
      }
      EXPECT_EQ(m.owner, best);
    }
    // Q_S is the union over the subtree.
    for (std::size_t s = 0; s < tree.nodes.size(); ++s) {
      std::size_t expect = 0;
      for (int u : tree.subtree(static_cast<int>(s))) expect += fam.O[static_cast<std::size_t>(u)].size();
      EXPECT_EQ(fam.Q(tree, static_cast<int>(s)).size(), expect);
    }
  }
}
