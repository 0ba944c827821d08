#include "coronalab/haar.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "coronalab/errors.hpp"
#include "coronalab/rng.hpp"
#include "oracles.hpp"

using namespace coronalab;

namespace {

const DyadicInterval unit{0, 0, 0.0};

double integral_h(const DiscreteMeasure& mu, const HaarFunction& h, double power) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double x = mu.x(i);
    if (!h.interval.contains(x)) continue;
    const double v = x < h.interval.mid() ? h.value_minus : h.value_plus;
    s += std::pow(v, power) * mu.w(i);
  }
  return s;
}

// Measure in [1/4, 3/4] with the lattice root [omega, omega + 1).
struct Setup {
  DiscreteMeasure mu;
  ShiftedLattice lattice;
  DyadicInterval root;
};

Setup random_setup(Rng& rng, std::size_t n) {
  Setup s;
  s.mu = oracle::random_measure(rng, n, 0.25, 0.75);
  const double omega = rng.uniform(-0.25, 0.25);
  s.lattice = ShiftedLattice{omega, -60, 0};
  s.root = s.lattice.locate(0.5, 0);
  return s;
}

}  // namespace

TEST(Haar, SymmetricMasses) {
  const DiscreteMeasure mu({{0.2, 1.0}, {0.7, 1.0}});
  const auto h = haar_function(mu, unit);
  EXPECT_NEAR(h.value_minus, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(h.value_plus, -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(h.degenerate);
}

TEST(Haar, DegenerateHalf) {
  const DiscreteMeasure mu({{0.2, 1.0}});
  const auto h = haar_function(mu, unit);
  EXPECT_TRUE(h.degenerate);
  EXPECT_EQ(h.value_minus, 0.0);
  EXPECT_EQ(h.value_plus, 0.0);
}

TEST(Haar, MeanZeroUnitNorm) {
  const DiscreteMeasure mu({{0.2, 1.0}, {0.7, 4.0}});
  const auto h = haar_function(mu, unit);
  EXPECT_NEAR(integral_h(mu, h, 1.0), 0.0, 1e-12);
  EXPECT_NEAR(integral_h(mu, h, 2.0), 1.0, 1e-12);
}

TEST(Haar, EmptyIntervalThrows) {
  const DiscreteMeasure mu({{2.0, 1.0}});
  EXPECT_THROW(haar_function(mu, unit), DomainError);
}

TEST(Haar, ConstantHasOnlyTop) {
  Rng rng(1);
  const auto s = random_setup(rng, 30);
  const auto f = WeightedFunction::constant(s.mu, 2.5);
  const auto c = decompose(f, s.lattice, s.root);
  for (const auto& [iv, v] : c.entries) EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_NEAR(c.top, 2.5 * s.mu.total_mass(), 1e-12 * s.mu.total_mass());
}

TEST(Haar, HaarFunctionHasSingleCoefficient) {
  Rng rng(2);
  const auto s = random_setup(rng, 25);
  const auto nodes = haar_nodes(s.mu, s.root);
  ASSERT_GT(nodes.size(), 3u);
  std::size_t pick = nodes.size() / 2;
  while (haar_function(s.mu, nodes[pick].interval).degenerate) ++pick;
  const auto& target = nodes[pick];
  const auto h = haar_function(s.mu, target.interval);
  std::vector<double> v(s.mu.size(), 0.0);
  for (std::size_t i = target.first; i < target.last; ++i) v[i] = i < target.mid ? h.value_minus : h.value_plus;
  const auto c = decompose(WeightedFunction(s.mu, v), s.lattice, s.root);
  for (const auto& [iv, coef] : c.entries) EXPECT_NEAR(coef, iv == target.interval ? 1.0 : 0.0, 1e-12);
  EXPECT_NEAR(c.top, 0.0, 1e-12);
}

TEST(Haar, ParsevalOnCantor) {
  const auto cantor = generate_measure(GeneratorSpec::parse("cantor:depth=4", 0));
  const auto np = normalize_pair(cantor, DiscreteMeasure{});
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const ShiftedLattice lat{rng.uniform(-0.25, 0.25), -60, 0};
    std::vector<double> v(np.mu.size());
    for (double& x : v) x = rng.normal();
    const WeightedFunction f(np.mu, v);
    const auto c = decompose(f, lat, lat.locate(0.5, 0));
    double energy = c.top * c.top / np.mu.total_mass();
    for (const auto& [iv, coef] : c.entries) energy += coef * coef;
    EXPECT_NEAR(energy, f.norm_sq(), 1e-10 * f.norm_sq());
  }
}

TEST(Haar, RoundTrip) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto s = random_setup(rng, 1 + rng.index(120));
    std::vector<double> v(s.mu.size());
    for (double& x : v) x = rng.normal() * std::exp(rng.normal());
    const WeightedFunction f(s.mu, v);
    const auto back = reconstruct_values(decompose(f, s.lattice, s.root), s.mu);
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(back[i] - v[i]));
    EXPECT_LE(err, 1e-10 * f.sup_abs());
  }
}

TEST(Haar, ZeroAndTopOnly) {
  Rng rng(5);
  const auto s = random_setup(rng, 12);
  auto c = decompose(WeightedFunction::zero(s.mu), s.lattice, s.root);
  for (double v : reconstruct_values(c, s.mu)) EXPECT_EQ(v, 0.0);
  c.top = 3.0;
  for (double v : reconstruct_values(c, s.mu)) EXPECT_NEAR(v, 3.0 / s.mu.total_mass(), 1e-14);
}

TEST(Haar, ReconstructRejectsOtherMeasure) {
  Rng rng(6);
  const auto s = random_setup(rng, 12);
  const auto c = decompose(WeightedFunction::zero(s.mu), s.lattice, s.root);
  const DiscreteMeasure other = oracle::random_measure(rng, 13, 0.25, 0.75);
  EXPECT_THROW(reconstruct_values(c, other), ValidationError);
}

TEST(Haar, AtomOutsideRootThrows) {
  const DiscreteMeasure mu({{0.5, 1.0}, {5.0, 1.0}});
  const ShiftedLattice lat{0.0, -60, 0};
  EXPECT_THROW(decompose(WeightedFunction::zero(mu), lat, lat.locate(0.5, 0)), DomainError);
}

TEST(Haar, PartialReconstructIsConditionalExpectation) {
  Rng rng(7);
  const auto s = random_setup(rng, 60);
  std::vector<double> v(s.mu.size());
  for (double& x : v) x = rng.normal();
  const auto c = decompose(WeightedFunction(s.mu, v), s.lattice, s.root);
  for (int k : {-1, -3, -5}) {
    const auto avg = partial_reconstruct(c, s.mu, k);
    for (std::size_t i = 0; i < s.mu.size(); ++i) {
      const auto iv = s.lattice.locate(s.mu.x(i), k);
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < s.mu.size(); ++j)
        if (iv.contains(s.mu.x(j))) {
          num += v[j] * s.mu.w(j);
          den += s.mu.w(j);
        }
      EXPECT_NEAR(avg[i], num / den, 1e-10);
    }
  }
}

TEST(Haar, OrthonormalSystem) {
  Rng rng(8);
  const auto s = random_setup(rng, 40);
  const auto nodes = haar_nodes(s.mu, s.root);
  std::vector<std::vector<double>> h;
  for (const auto& n : nodes) {
    const auto hf = haar_function(s.mu, n.interval);
    if (hf.degenerate) continue;
    std::vector<double> v(s.mu.size(), 0.0);
    for (std::size_t i = n.first; i < n.last; ++i) v[i] = i < n.mid ? hf.value_minus : hf.value_plus;
    h.push_back(v);
  }
  for (std::size_t a = 0; a < h.size(); ++a) {
    double mean = 0.0;
    for (std::size_t i = 0; i < s.mu.size(); ++i) mean += h[a][i] * s.mu.w(i);
    EXPECT_NEAR(mean, 0.0, 1e-12);
    for (std::size_t b = a; b < h.size(); ++b) {
      double ip = 0.0;
      for (std::size_t i = 0; i < s.mu.size(); ++i) ip += h[a][i] * h[b][i] * s.mu.w(i);
      EXPECT_NEAR(ip, a == b ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(Haar, NodesHoldAtLeastTwoAtoms) {
  Rng rng(9);
  const auto s = random_setup(rng, 50);
  const auto nodes = haar_nodes(s.mu, s.root);
  EXPECT_EQ(nodes.front().interval, s.root);
  for (const auto& n : nodes) {
    EXPECT_GE(n.last - n.first, 2u);
    for (std::size_t i = n.first; i < n.last; ++i) EXPECT_TRUE(n.interval.contains(s.mu.x(i)));
  }
}
