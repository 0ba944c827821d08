#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace coronalab {

struct Atom {
  double x;
  double w;
};

/// Real interval with explicit endpoint flags. lo > hi (or lo == hi with an open flag) is empty.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(double a, double b) { return {a, b, true, true}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }
  static Interval half_open(double a, double b) { return {a, b, true, false}; }

  double length() const { return hi > lo ? hi - lo : 0.0; }
  bool contains(double x) const {
    return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
  }
  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
};

/// Finite positive atomic measure. Atoms are kept sorted by strictly increasing position,
/// stored as two parallel arrays so kernels can stream over them.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;

  /// Sorts, merges equal positions by summing weights, validates (finite x, finite w > 0).
  /// Throws ValidationError.
  explicit DiscreteMeasure(std::vector<Atom> atoms, std::string label = {});

  std::size_t size() const { return x_.size(); }
  bool empty() const { return x_.empty(); }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  double x(std::size_t i) const { return x_[i]; }
  double w(std::size_t i) const { return w_[i]; }
  std::span<const double> positions() const { return x_; }
  std::span<const double> weights() const { return w_; }
  std::vector<Atom> atoms() const;

  double total_mass() const { return total_; }

  /// Index range [first, last) of atoms lying in `iv`.
  std::pair<std::size_t, std::size_t> range(const Interval& iv) const;

  /// Atoms with x in [lo, hi).
  std::pair<std::size_t, std::size_t> range_half_open(double lo, double hi) const;

  double mass(const Interval& iv) const;
  /// Sum of weights with indices in [first, last), summed left to right.
  double mass(std::size_t first, std::size_t last) const;

  /// Image under x -> scale * x + offset with weights multiplied by scale (scale > 0), i.e.
  /// the push-forward of the density. Every dimensionless constant is invariant under it.
  DiscreteMeasure affine_image(double scale, double offset) const;

  /// Same atoms, weights multiplied by c > 0.
  DiscreteMeasure scaled(double c) const;

  /// Atoms inside `iv` only.
  DiscreteMeasure restricted(const Interval& iv) const;

  bool has_atom_at(double x) const;

  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    return a.x_ == b.x_ && a.w_ == b.w_;
  }

 private:
  std::vector<double> x_;
  std::vector<double> w_;
  double total_ = 0.0;
  std::string label_;
};

/// True when the two measures charge a common point.
bool share_atom(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Sorted union of the two supports (duplicates removed).
std::vector<double> combined_support(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Function on the atoms of a measure. Holds a non-owning pointer to its base; the base
/// must outlive it.
class WeightedFunction {
 public:
  WeightedFunction(const DiscreteMeasure& base, std::vector<double> values);
  static WeightedFunction zero(const DiscreteMeasure& base);
  static WeightedFunction constant(const DiscreteMeasure& base, double c);

  const DiscreteMeasure& base() const { return *base_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// sum values[i]^2 * w[i]
  double norm_sq() const;
  /// sum values[i] * w[i]
  double integral() const;
  double sup_abs() const;

  /// Throws ValidationError unless `m` has the same atoms as the base.
  void require_base(const DiscreteMeasure& m) const;

 private:
  const DiscreteMeasure* base_;
  std::vector<double> values_;
};

/// Interval families over the combined support u_0 < ... < u_{m-1} of two measures.
struct CanonicalIntervals {
  std::vector<double> support;
  /// One interval per contiguous run u_i..u_j (i <= j), delimited at gap midpoints;
  /// m(m+1)/2 members, ordered by (i, j).
  std::vector<Interval> subset;
  /// Closed [u_i, u_j], i < j; m(m-1)/2 members, ordered by (i, j).
  std::vector<Interval> tight;
};

/// Throws ValidationError when both measures are empty.
CanonicalIntervals canonical_intervals(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Generator request: id plus named numeric parameters. Text form: "id:key=value,key=value".
struct GeneratorSpec {
  std::string id;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  static GeneratorSpec parse(const std::string& text, std::uint64_t seed);
  std::string to_string() const;
};

/// Deterministic measure generators:
///   uniform-random        n, lo=0, hi=1, sigma=1 (log-normal weight spread)
///   lacunary              n, w=1                 atoms at 2^-k, k = 1..n
///   cantor                depth, lo=0, hi=1      2^depth left endpoints, weight 2^-depth
///   single-atom           x=0, w=1
///   adversarial-clustered clusters=3, per=8, lo=0, hi=1, spread=0.05, levels=4
/// Throws ValidationError on unknown ids or out-of-range parameters.
DiscreteMeasure generate_measure(const GeneratorSpec& spec);

/// Reads the JSON measure format {"label": ..., "atoms": [{"x": .., "w": ..}, ...]}.
/// ParseError on malformed text, ValidationError on nonpositive weights.
DiscreteMeasure load_measure(const std::string& path);
DiscreteMeasure parse_measure(const std::string& text);
std::string serialize_measure(const DiscreteMeasure& m);
void save_measure(const DiscreteMeasure& m, const std::string& path);

/// Affine map that sends the combined support hull [a, b] of a pair onto [1/4, 3/4]
/// (weights rescaled by the same factor). A single common point goes to 1/2 unscaled.
struct PairNormalization {
  double scale = 1.0;
  double offset = 0.0;
  DiscreteMeasure mu;
  DiscreteMeasure nu;
};
PairNormalization normalize_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace coronalab
