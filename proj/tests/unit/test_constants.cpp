#include "coronalab/constants.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "coronalab/errors.hpp"
#include "coronalab/frozen_bounds.hpp"
#include "coronalab/harness.hpp"
#include "coronalab/rng.hpp"
#include "oracles.hpp"

using namespace coronalab;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

const DiscreteMeasure one_at_zero({{0.0, 1.0}});
const DiscreteMeasure one_at_one({{1.0, 1.0}});

std::vector<double> support(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<double> p;
  for (std::size_t i = 0; i < a.size(); ++i) p.push_back(a.x(i));
  for (std::size_t i = 0; i < b.size(); ++i) p.push_back(b.x(i));
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return p;
}

// sup over closed [p_a, p_b] of ||H_src chi_I||^2 over dst (restricted to I when local) / src(I).
double sawyer_oracle(const DiscreteMeasure& src, const DiscreteMeasure& dst, bool local) {
  const auto p = support(src, dst);
  double best = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a; b < p.size(); ++b) {
      double m = 0.0, s = 0.0;
      for (std::size_t i = 0; i < src.size(); ++i)
        if (src.x(i) >= p[a] && src.x(i) <= p[b]) m += src.w(i);
      if (m <= 0.0) continue;
      for (std::size_t j = 0; j < dst.size(); ++j) {
        const double y = dst.x(j);
        if (local && (y < p[a] || y > p[b])) continue;
        double h = 0.0;
        for (std::size_t i = 0; i < src.size(); ++i)
          if (src.x(i) >= p[a] && src.x(i) <= p[b] && src.x(i) != y) h += src.w(i) / (pi * (y - src.x(i)));
        s += dst.w(j) * h * h;
      }
      best = std::max(best, s / m);
    }
  return best;
}

// M_src chi_I(y): every closed J containing y is dominated by the hull of y and a run of atoms.
double maximal_oracle(const DiscreteMeasure& src, double lo, double hi, double y) {
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < src.size(); ++i)
    if (src.x(i) >= lo && src.x(i) <= hi) in.push_back(i);
  double best = 0.0;
  for (std::size_t a = 0; a < in.size(); ++a) {
    double m = 0.0;
    for (std::size_t b = a; b < in.size(); ++b) {
      m += src.w(in[b]);
      const double l = std::min(src.x(in[a]), y), r = std::max(src.x(in[b]), y);
      best = std::max(best, r == l ? inf : m / (r - l));
    }
  }
  return best;
}

double sawyer_maximal_oracle(const DiscreteMeasure& src, const DiscreteMeasure& dst) {
  const auto p = support(src, dst);
  double best = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a; b < p.size(); ++b) {
      double m = 0.0, s = 0.0;
      for (std::size_t i = 0; i < src.size(); ++i)
        if (src.x(i) >= p[a] && src.x(i) <= p[b]) m += src.w(i);
      if (m <= 0.0) continue;
      for (std::size_t j = 0; j < dst.size(); ++j) s += dst.w(j) * oracle::sq(maximal_oracle(src, p[a], p[b], dst.x(j)));
      best = std::max(best, s / m);
    }
  return best;
}

double poisson(const DiscreteMeasure& s, double x, double y) {
  double v = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) v += s.w(i) * y / (oracle::sq(x - s.x(i)) + y * y);
  return v / pi;
}

std::pair<DiscreteMeasure, DiscreteMeasure> random_pair(Rng& rng, std::size_t max_atoms) {
  return {oracle::random_measure(rng, 1 + rng.index(max_atoms)), oracle::random_measure(rng, 1 + rng.index(max_atoms))};
}

bool rel_near(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST(Constants, OpnormSingleAtoms) {
  const auto r = operator_norm(hilbert_matrix(one_at_zero, one_at_one, 0.0));
  EXPECT_NEAR(r.value, 1.0 / pi, 1e-15);
  EXPECT_TRUE(r.converged);
}

TEST(Constants, OpnormMatchesOracle) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto mu = oracle::random_measure(rng, 30), nu = oracle::random_measure(rng, 30);
    const double v = operator_norm(hilbert_matrix(mu, nu, 0.0)).value;
    EXPECT_NEAR(v, oracle::hilbert_norm(mu, nu), 1e-10 * v);
  }
}

TEST(Constants, OpnormPowerMatchesOracle) {
  Rng rng(2);
  PowerOptions power;
  power.dense_threshold = 0;
  for (int t = 0; t < 10; ++t) {
    const auto mu = oracle::random_measure(rng, 30), nu = oracle::random_measure(rng, 30);
    const double v = operator_norm(hilbert_matrix(mu, nu, 0.0), power).value;
    EXPECT_NEAR(v, oracle::hilbert_norm(mu, nu), 1e-10 * v);
  }
}

TEST(Constants, OpnormLebesgueApproximation) {
  std::vector<Atom> a, b;
  const std::size_t n = 2000;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back({(i + 0.25) / n, 1.0 / n});
    b.push_back({(i + 0.75) / n, 1.0 / n});
  }
  const auto k = hilbert_matrix(DiscreteMeasure(a), DiscreteMeasure(b), 0.0);
  // The spectrum near the top is almost continuous; a short run gives a lower estimate and the
  // dense oracle the exact value.
  PowerOptions power;
  power.max_iterations = 500;
  const auto r = operator_norm(k, power);
  std::vector<double> w(k.entries.size());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) w[j * n + i] = k(j, i) / n;
  const double exact = oracle::top_singular(w, n, n);
  EXPECT_LE(exact, 1.2);
  EXPECT_LE(r.value, exact * (1 + 1e-12));
  EXPECT_GT(r.value, 0.99);
}

TEST(Constants, OpnormEmpty) {
  EXPECT_EQ(operator_norm(hilbert_matrix(one_at_zero, DiscreteMeasure{}, 0.0)).value, 0.0);
}

TEST(Constants, SawyerHilbertSingleAtoms) {
  const auto s = sawyer_hilbert_constant(one_at_zero, one_at_one, Direction::forward);
  EXPECT_NEAR(s.global, 1.0 / (pi * pi), 1e-15);
  EXPECT_THROW(sawyer_hilbert_constant(one_at_zero, DiscreteMeasure{}, Direction::forward), ValidationError);
  EXPECT_THROW(sawyer_hilbert_constant(DiscreteMeasure{}, one_at_zero, Direction::forward), ValidationError);
}

TEST(Constants, SawyerHilbertMatchesEnumeration) {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const auto [mu, nu] = random_pair(rng, 7);
    const auto f = sawyer_hilbert_constant(mu, nu, Direction::forward);
    const auto b = sawyer_hilbert_constant(mu, nu, Direction::backward);
    EXPECT_NEAR(f.global, sawyer_oracle(mu, nu, false), 1e-12 * f.global);
    EXPECT_NEAR(f.local, sawyer_oracle(mu, nu, true), 1e-12 * f.global + 1e-300);
    EXPECT_NEAR(b.global, sawyer_oracle(nu, mu, false), 1e-12 * b.global);
  }
}

TEST(Constants, SawyerBelowOpnormSquared) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto [mu, nu] = random_pair(rng, 12);
    const double op = operator_norm(hilbert_matrix(mu, nu, 0.0)).value;
    EXPECT_LE(sawyer_hilbert_constant(mu, nu, Direction::forward).global, op * op * (1 + 1e-12));
    EXPECT_LE(sawyer_hilbert_constant(mu, nu, Direction::backward).global, op * op * (1 + 1e-12));
  }
}

TEST(Constants, SawyerMaximalExamples) {
  EXPECT_TRUE(std::isinf(sawyer_maximal_constant(one_at_zero, one_at_zero, Direction::forward)));
  EXPECT_NEAR(sawyer_maximal_constant(one_at_zero, one_at_one, Direction::forward), 1.0, 1e-15);
}

TEST(Constants, SawyerMaximalMatchesEnumeration) {
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    const auto [mu, nu] = random_pair(rng, 6);
    const double f = sawyer_maximal_constant(mu, nu, Direction::forward);
    const double b = sawyer_maximal_constant(mu, nu, Direction::backward);
    EXPECT_NEAR(f, sawyer_maximal_oracle(mu, nu), 1e-12 * f);
    EXPECT_NEAR(b, sawyer_maximal_oracle(nu, mu), 1e-12 * b);
  }
}

TEST(Constants, SawyerMaximalTranslation) {
  Rng rng(6);
  const auto [mu, nu] = random_pair(rng, 8);
  const double a = sawyer_maximal_constant(mu, nu, Direction::forward);
  const double b = sawyer_maximal_constant(mu.affine_image(1.0, 0.375), nu.affine_image(1.0, 0.375), Direction::forward);
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(Constants, A2Examples) {
  EXPECT_NEAR(a2_constant(one_at_zero, one_at_one), 1.0, 1e-15);
  EXPECT_TRUE(std::isinf(a2_constant(one_at_zero, one_at_zero)));
}

TEST(Constants, A2MatchesOracles) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto [mu, nu] = random_pair(rng, 10);
    const double q = a2_constant(mu, nu);
    EXPECT_NEAR(q, oracle::a2_pairs(mu, nu), 1e-12 * q);
    EXPECT_LE(oracle::a2_random(mu, nu, rng, 2000), q * (1 + 1e-12));
  }
}

TEST(Constants, A2Dilation) {
  Rng rng(8);
  const auto [mu, nu] = random_pair(rng, 10);
  const double q = a2_constant(mu, nu);
  EXPECT_NEAR(a2_constant(mu.affine_image(2.0, 0.0), nu.affine_image(2.0, 0.0)), q, 1e-12 * q);
}

TEST(Constants, PoissonA2Examples) {
  const auto p = poisson_a2(one_at_zero, one_at_one);
  EXPECT_GE(p.value, oracle::sq(4.0 / (5.0 * pi)) * (1 - 1e-15));
  EXPECT_NEAR(poisson(one_at_zero, p.argmax.x, p.argmax.y) * poisson(one_at_one, p.argmax.x, p.argmax.y), p.value,
              1e-14 * p.value);
  EXPECT_TRUE(std::isinf(poisson_a2(one_at_zero, one_at_zero).value));
}

TEST(Constants, QBoundedByPoissonA2) {
  Rng rng(9);
  const double a = oracle::sq(5.0 * pi / 4.0);
  for (int t = 0; t < 200; ++t) {
    const auto [mu, nu] = random_pair(rng, 10);
    const auto p = poisson_a2(mu, nu);
    EXPECT_LE(a2_constant(mu, nu), a * p.value);
    const auto pts = support(mu, nu);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const double x = 0.5 * (pts[i] + pts[j]), y = pts[j] - pts[i];
        EXPECT_GE(p.value * (1 + 1e-14), poisson(mu, x, y) * poisson(nu, x, y));
      }
  }
}

TEST(Constants, PivotalMatchesBruteForce) {
  Rng rng(10);
  for (int t = 0; t < 100; ++t) {
    const auto mu = oracle::random_measure(rng, 1 + rng.index(8), 0.25, 0.75);
    const auto nu = oracle::random_measure(rng, 1 + rng.index(8), 0.25, 0.75);
    const auto root = unit_root(rng.uniform(-0.25, 0.25));
    const int depth = 1 + static_cast<int>(rng.index(4));
    const auto p = pivotal_constant(mu, nu, root, depth);
    const auto b = oracle::brute_pivotal(mu, nu, root, depth);
    EXPECT_NEAR(p.pivotal, b.pivotal, 1e-12 * std::max(b.pivotal, 1e-300));
    EXPECT_NEAR(p.pivotal1, b.pivotal1, 1e-12 * std::max(b.pivotal1, 1e-300));
    EXPECT_GE(p.pivotal1, p.pivotal * (1 - 1e-15));
  }
}

TEST(Constants, PivotalAllMassInOneInterval) {
  const DiscreteMeasure mu({{0.3, 1.0}}), nu({{0.3 + 1e-3, 1.0}});
  const auto p = pivotal_constant(mu, nu, unit_root(0.0), 0);
  EXPECT_EQ(p.pivotal, 0.0);
  EXPECT_GT(p.pivotal1, 0.0);
}

TEST(Constants, PivotalMonotoneInDepth) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto mu = oracle::random_measure(rng, 20, 0.25, 0.75), nu = oracle::random_measure(rng, 20, 0.25, 0.75);
    const auto root = unit_root(rng.uniform(-0.25, 0.25));
    double last = 0.0;
    for (int d = 0; d <= 8; ++d) {
      const double v = pivotal_constant(mu, nu, root, d).pivotal;
      EXPECT_GE(v, last);
      last = v;
    }
  }
}

TEST(Constants, PivotalEmptyRootThrows) {
  EXPECT_THROW(pivotal_constant(DiscreteMeasure({{5.0, 1.0}}), one_at_one, unit_root(0.0), 3), DomainError);
}

TEST(Constants, PivotalBelowMaximalChain) {
  Rng rng(12);
  const double a = frozen::maxop_a_star();
  for (int t = 0; t < 100; ++t) {
    const auto mu = oracle::random_measure(rng, 1 + rng.index(12), 0.25, 0.75);
    const auto nu = oracle::random_measure(rng, 1 + rng.index(12), 0.25, 0.75);
    const auto p = pivotal_constant(mu, nu, unit_root(rng.uniform(-0.25, 0.25)), 6);
    const double m = maximal_surrogate(mu, nu);
    EXPECT_LE(p.pivotal1, frozen::maxop_embedding * a * a * m * (1 + 1e-12));
  }
}

TEST(Constants, FullReportSingleAtoms) {
  const auto r = full_constants(one_at_zero, one_at_one, ConstantsConfig{});
  EXPECT_NEAR(r.opnorm, 1.0 / pi, 1e-15);
  EXPECT_NEAR(r.q, 1.0, 1e-15);
  EXPECT_NEAR(r.cchi_forward, 1.0 / (pi * pi), 1e-15);
  EXPECT_NEAR(r.cm_forward, 1.0, 1e-15);
  EXPECT_GE(r.pq, 0.064846);
  EXPECT_FALSE(r.common_atoms);
}

TEST(Constants, FullReportCommonAtom) {
  const auto r = full_constants(one_at_zero, DiscreteMeasure({{0.0, 2.0}, {1.0, 1.0}}), ConstantsConfig{});
  EXPECT_TRUE(r.common_atoms);
  EXPECT_TRUE(std::isinf(r.q));
  EXPECT_TRUE(std::isinf(r.cm_forward));
  EXPECT_TRUE(std::isinf(r.pq));
}

TEST(Constants, SwapExchangesDirections) {
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    const auto [mu, nu] = random_pair(rng, 10);
    ConstantsConfig cfg;
    cfg.shifts = {0.1, 0.1, 0};
    const auto a = full_constants(mu, nu, cfg), b = full_constants(nu, mu, cfg);
    EXPECT_NEAR(a.opnorm, b.opnorm, 1e-12 * a.opnorm);
    EXPECT_NEAR(a.cchi_forward, b.cchi_backward, 1e-12 * a.cchi_forward);
    EXPECT_NEAR(a.cm_forward, b.cm_backward, 1e-12 * a.cm_forward);
    EXPECT_NEAR(a.pivotal_forward, b.pivotal_backward, 1e-12 * std::max(a.pivotal_forward, 1e-300));
    EXPECT_EQ(a.q, b.q);
  }
}

TEST(Constants, DimensionlessInvariance) {
  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    const auto [mu, nu] = random_pair(rng, 8);
    ConstantsConfig cfg;
    cfg.depth = 5;
    cfg.shifts = sample_shift_pair(derive_seed(14, t));
    const auto base = full_constants(mu, nu, cfg);
    for (int k = 0; k < 5; ++k) {
      const double lambda = std::pow(10.0, rng.uniform(-3.0, 3.0)), shift = lambda * rng.uniform(-2.0, 2.0);
      const auto im = full_constants(mu.affine_image(lambda, shift), nu.affine_image(lambda, shift), cfg);
      EXPECT_TRUE(rel_near(base.opnorm * base.opnorm, im.opnorm * im.opnorm, 1e-10));
      EXPECT_TRUE(rel_near(base.cchi_forward, im.cchi_forward, 1e-10));
      EXPECT_TRUE(rel_near(base.cchi_backward, im.cchi_backward, 1e-10));
      EXPECT_TRUE(rel_near(base.cm_forward, im.cm_forward, 1e-10));
      EXPECT_TRUE(rel_near(base.cm_backward, im.cm_backward, 1e-10));
      EXPECT_TRUE(rel_near(base.q, im.q, 1e-10));
      EXPECT_TRUE(rel_near(base.pq, im.pq, 1e-10));
      EXPECT_TRUE(rel_near(base.pivotal_forward, im.pivotal_forward, 1e-10));
      EXPECT_TRUE(rel_near(base.pivotal_backward, im.pivotal_backward, 1e-10));
    }
  }
}
