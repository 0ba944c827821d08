#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "coronalab/dyadic.hpp"
#include "coronalab/haar.hpp"
#include "coronalab/measure.hpp"

namespace coronalab {

struct GoodBadConfig {
  int r = 4;
  /// Candidate J have |J| = 2^t |I| with 0 <= t < scale_cap (and never above the other
  /// lattice's k_max).
  int scale_cap = 40;
};

struct BadnessVerdict {
  bool bad = false;
  bool essentially_bad = false;
  std::optional<DyadicInterval> witness;  // first J found violating the distance test
};

/// dist(e(J), I) < |J|^{3/4} |I|^{1/4} for some J of the other lattice with |J| >= |I|
/// (bad), with |J| >= 2^r |I| (essentially bad). Only the three lattice intervals nearest
/// to I are examined at each scale.
BadnessVerdict classify(const DyadicInterval& I, const ShiftedLattice& other, const GoodBadConfig& cfg);

/// Not essentially bad.
bool good_weak(const DyadicInterval& I, const ShiftedLattice& other, const GoodBadConfig& cfg);

/// dist(I, dK) >= |K|^{3/4} |I|^{1/4} for every K of the other lattice with
/// |K| >= 2^{r-1} |I|: the separation required of the small intervals paired with a larger
/// one at ratio 2^{r-1}.
bool good_strong(const DyadicInterval& I, const ShiftedLattice& other, const GoodBadConfig& cfg);

/// Entries on essentially bad intervals go to `second`, the rest to `first`; both keep the
/// top coefficient of the input in `first` only. Throws ValidationError when the two lattices
/// have the same shift.
std::pair<HaarCoefficients, HaarCoefficients> split_good_bad(const HaarCoefficients& coeffs,
                                                             const ShiftedLattice& other,
                                                             const GoodBadConfig& cfg);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Placement of the tested interval: the D^mu interval of scale `level` containing `point`.
struct BadGeometry {
  int level = -12;
  double point = 0.5;
};

/// Monte-Carlo frequency of essential badness over (omega1, omega2) uniform on
/// (-1/4, 1/4]^2; sample s uses sample_shift_pair(derive_seed(seed, s)). N >= 100.
Estimate estimate_bad_probability(const BadGeometry& geometry, const GoodBadConfig& cfg,
                                  std::size_t samples, std::uint64_t seed);

/// Monte-Carlo mean of ||f_bad|| / ||f|| after removing the mean of f. The measure is first
/// mapped onto [1/4, 3/4]. Throws ValidationError when f is constant.
Estimate estimate_epsilon_r(const WeightedFunction& f, const GoodBadConfig& cfg,
                            std::size_t samples, std::uint64_t seed);

/// Lattice for the second measure under shift omega: scales up to the unit root.
inline ShiftedLattice other_lattice(double omega) { return {omega, -1000, 0}; }

}  // namespace coronalab
