#include "coronalab/goodbad.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "coronalab/errors.hpp"
#include "coronalab/parallel.hpp"
#include "coronalab/rng.hpp"

namespace coronalab {

namespace {

// Calls visit(J, t) for the three lattice intervals nearest to I at each relative scale t in
// [t_lo, t_hi); stops when visit returns true.
template <class Visit>
void scan_candidates(const DyadicInterval& I, const ShiftedLattice& other, int t_lo, int t_hi,
                     Visit&& visit) {
  const int top = std::min(I.scale + t_hi - 1, other.k_max);
  for (int s = std::max(I.scale + t_lo, I.scale); s <= top; ++s) {
    const DyadicInterval c = other.locate(I.mid(), s);
    for (int d : {0, -1, 1}) {
      const DyadicInterval j{s, c.index + d, c.shift};
      if (visit(j, s - I.scale)) return;
    }
  }
}

double dist_points(const std::array<double, 3>& e, const DyadicInterval& I) {
  double d = INFINITY;
  for (double p : e) d = std::min(d, dist_to_interval(p, I.left(), I.right()));
  return d;
}

double threshold(const DyadicInterval& J, const DyadicInterval& I) {
  return std::pow(J.length(), 0.75) * std::pow(I.length(), 0.25);
}

}  // namespace

BadnessVerdict classify(const DyadicInterval& I, const ShiftedLattice& other, const GoodBadConfig& cfg) {
  if (cfg.r < 1 || cfg.scale_cap < 1) throw ValidationError("need r >= 1 and scale_cap >= 1");
  BadnessVerdict v;
  scan_candidates(I, other, 0, cfg.scale_cap, [&](const DyadicInterval& J, int t) {
    if (dist_points(special_points(J), I) < threshold(J, I)) {
      if (!v.bad) v.witness = J;
      v.bad = true;
      if (t >= cfg.r) {
        v.essentially_bad = true;
        return true;
      }
    }
    return false;
  });
  return v;
}

bool good_weak(const DyadicInterval& I, const ShiftedLattice& other, const GoodBadConfig& cfg) {
  return !classify(I, other, cfg).essentially_bad;
}

bool good_strong(const DyadicInterval& I, const ShiftedLattice& other, const GoodBadConfig& cfg) {
  bool good = true;
  scan_candidates(I, other, std::max(cfg.r - 1, 0), cfg.scale_cap,
                  [&](const DyadicInterval& K, int) {
    const double d = std::min(dist_to_interval(K.left(), I.left(), I.right()),
                              dist_to_interval(K.right(), I.left(), I.right()));
    if (d < threshold(K, I)) good = false;
    return !good;
  });
  return good;
}

std::pair<HaarCoefficients, HaarCoefficients> split_good_bad(const HaarCoefficients& coeffs,
                                                             const ShiftedLattice& other,
                                                             const GoodBadConfig& cfg) {
  if (coeffs.lattice.shift == other.shift) {
    throw ValidationError("good/bad split needs two distinct lattices");
  }
  HaarCoefficients good = coeffs, bad = coeffs;
  good.entries.clear();
  bad.entries.clear();
  bad.top = 0.0;
  for (const auto& [iv, c] : coeffs.entries) {
    (classify(iv, other, cfg).essentially_bad ? bad : good).entries.emplace(iv, c);
  }
  return {std::move(good), std::move(bad)};
}

namespace {

Estimate summarize(const std::vector<double>& xs, std::uint64_t seed) {
  Estimate e;
  e.samples = xs.size();
  e.seed = seed;
  if (xs.empty()) return e;
  double s = 0.0;
  for (double x : xs) s += x;
  const double mean = s / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  e.value = mean;
  if (xs.size() > 1) {
    e.stderr_ = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return e;
}

}  // namespace

Estimate estimate_bad_probability(const BadGeometry& geometry, const GoodBadConfig& cfg,
                                  std::size_t samples, std::uint64_t seed) {
  if (samples < 100) throw ValidationError("need at least 100 samples");
  std::vector<double> hit(samples);
  parallel_for(samples, [&](std::size_t s) {
    const ShiftPair p = sample_shift_pair(derive_seed(seed, s));
    const ShiftedLattice mu_lattice{p.omega1, geometry.level, 0};
    const DyadicInterval I = mu_lattice.locate(geometry.point, geometry.level);
    hit[s] = classify(I, other_lattice(p.omega2), cfg).essentially_bad ? 1.0 : 0.0;
  }, 256);
  return summarize(hit, seed);
}

Estimate estimate_epsilon_r(const WeightedFunction& f, const GoodBadConfig& cfg,
                            std::size_t samples, std::uint64_t seed) {
  const DiscreteMeasure& base = f.base();
  const PairNormalization np = normalize_pair(base, DiscreteMeasure{});
  const double mean = f.integral() / base.total_mass();
  std::vector<double> centered(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) centered[i] = f[i] - mean;
  const WeightedFunction g(np.mu, centered);
  const double norm = std::sqrt(g.norm_sq());
  if (!(norm > 0.0)) throw ValidationError("epsilon(r) needs a nonconstant function");
  std::vector<double> ratio(samples);
  parallel_for(samples, [&](std::size_t s) {
    const ShiftPair p = sample_shift_pair(derive_seed(seed, s));
    const DyadicInterval root{0, 0, p.omega1};
    const HaarCoefficients c = decompose(g, {p.omega1, -1000, 0}, root);
    const ShiftedLattice other = other_lattice(p.omega2);
    double bad = 0.0;
    for (const auto& [iv, coeff] : c.entries) {
      if (classify(iv, other, cfg).essentially_bad) bad += coeff * coeff;
    }
    ratio[s] = std::sqrt(bad) / norm;
  }, 16);
  return summarize(ratio, seed);
}

}  // namespace coronalab
