#include "coronalab/dyadic.hpp"

#include <cmath>
#include <string>

#include "coronalab/errors.hpp"
#include "coronalab/rng.hpp"

namespace coronalab {

double DyadicInterval::length() const { return std::ldexp(1.0, scale); }
double DyadicInterval::left() const { return shift + std::ldexp(static_cast<double>(index), scale); }
double DyadicInterval::right() const {
  return shift + std::ldexp(static_cast<double>(index + 1), scale);
}
double DyadicInterval::mid() const {
  return shift + std::ldexp(static_cast<double>(2 * index + 1), scale - 1);
}

bool DyadicInterval::contains(const DyadicInterval& other) const {
  if (other.shift != shift || other.scale > scale) return false;
  return (other.index >> (scale - other.scale)) == index;
}

DyadicInterval DyadicInterval::ancestor(int at_scale) const {
  if (at_scale < scale) throw DomainError("ancestor scale below interval scale");
  const int gap = at_scale - scale;
  return {at_scale, gap >= 63 ? (index < 0 ? -1 : 0) : (index >> gap), shift};
}

DyadicInterval ShiftedLattice::locate(double x, int k) const {
  if (k < k_min || k > k_max) {
    throw DomainError("scale " + std::to_string(k) + " outside lattice range");
  }
  DyadicInterval iv{k, static_cast<std::int64_t>(std::floor(std::ldexp(x - shift, -k))), shift};
  // The subtraction above rounds; settle against the exactly computed endpoints.
  while (iv.left() > x) --iv.index;
  while (iv.right() <= x) ++iv.index;
  return iv;
}

ShiftPair sample_shift_pair(std::uint64_t seed) {
  Rng rng(seed);
  ShiftPair p;
  p.seed = seed;
  p.omega1 = 0.25 - 0.5 * rng.uniform();
  p.omega2 = 0.25 - 0.5 * rng.uniform();
  return p;
}

std::array<double, 3> special_points(const DyadicInterval& j) {
  return {j.left(), j.mid(), j.right()};
}

int tree_distance(const DyadicInterval& a, const DyadicInterval& b) {
  if (a.contains(b)) return a.scale - b.scale;
  if (b.contains(a)) return b.scale - a.scale;
  throw DomainError("tree distance of incomparable intervals");
}

int finest_scale(std::span<const double> pts) {
  double gap = INFINITY;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double g = pts[i] - pts[i - 1];
    if (g > 0.0 && g < gap) gap = g;
  }
  if (!std::isfinite(gap)) return -2;
  return static_cast<int>(std::ceil(std::log2(gap))) - 2;
}

}  // namespace coronalab
