#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>

namespace coronalab {

/// I = [shift + index * 2^scale, shift + (index + 1) * 2^scale).
struct DyadicInterval {
  int scale = 0;
  std::int64_t index = 0;
  double shift = 0.0;

  double length() const;
  double left() const;
  double right() const;
  double mid() const;
  bool contains(double x) const { return x >= left() && x < right(); }

  DyadicInterval parent() const { return {scale + 1, index >> 1, shift}; }
  /// which = 0 for the left half, 1 for the right half.
  DyadicInterval child(int which) const { return {scale - 1, 2 * index + which, shift}; }
  bool is_left_child() const { return (index & 1) == 0; }

  /// Dyadic containment (same lattice, *this is an ancestor-or-self of `other`).
  bool contains(const DyadicInterval& other) const;
  /// Ancestor at the given (coarser or equal) scale.
  DyadicInterval ancestor(int at_scale) const;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  /// Orders coarse to fine, then left to right (shift last).
  friend std::strong_ordering operator<=>(const DyadicInterval& a, const DyadicInterval& b) {
    if (a.scale != b.scale) return b.scale <=> a.scale;
    if (a.index != b.index) return a.index <=> b.index;
    if (a.shift < b.shift) return std::strong_ordering::less;
    if (b.shift < a.shift) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// D + shift restricted to scales [k_min, k_max].
struct ShiftedLattice {
  double shift = 0.0;
  int k_min = -60;
  int k_max = 0;

  /// Unique interval of scale k containing x. Throws DomainError when k is out of range.
  DyadicInterval locate(double x, int k) const;
  /// The scale-k_max interval through [1/4, 3/4] when shift is in [-1/4, 1/4].
  DyadicInterval root() const { return locate(0.5, k_max); }
};

struct ShiftPair {
  double omega1 = 0.0;
  double omega2 = 0.0;
  std::uint64_t seed = 0;
};

/// Uniform draw from (-1/4, 1/4]^2, deterministic per seed.
ShiftPair sample_shift_pair(std::uint64_t seed);

/// e(J): left endpoint, midpoint, right endpoint.
std::array<double, 3> special_points(const DyadicInterval& j);

/// Generation gap between nested intervals of the same lattice; DomainError otherwise.
int tree_distance(const DyadicInterval& a, const DyadicInterval& b);

/// Finest useful scale for a point set: ceil(log2(smallest positive gap)) - 2; -2 when
/// there is no gap. Intervals below it carry at most one point.
int finest_scale(std::span<const double> sorted_points);

/// Distance from x to the closed interval [lo, hi].
inline double dist_to_interval(double x, double lo, double hi) {
  return x < lo ? lo - x : (x > hi ? x - hi : 0.0);
}

}  // namespace coronalab
