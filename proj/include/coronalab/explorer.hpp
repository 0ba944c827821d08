#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coronalab/constants.hpp"
#include "coronalab/measure.hpp"

namespace coronalab {

struct Candidate {
  DiscreteMeasure mu, nu;
  double score = 0.0;
  ConstantsReport constants;
  std::uint64_t seed = 0;            // seed of the initial ancestor
  std::vector<std::string> lineage;  // mutations applied since, oldest first
};

/// max(pivotal_forward, pivotal_backward) / (1 + opnorm^2 + pq + cchi_forward + cchi_backward);
/// 0 when any denominator term (or the numerator) is infinite or NaN.
double candidate_score(const ConstantsReport& c);

/// Full constants at the configured depth plus the score. Throws ValidationError when the
/// supports share an atom or either measure is empty.
Candidate score(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const ConstantsConfig& cfg);

struct MutationRates {
  double jitter = 0.4;
  double rescale = 0.3;
  double split_merge = 0.2;
  double cantor = 0.1;
};

struct ExplorerConfig {
  ConstantsConfig constants;
  std::size_t population = 16;
  std::size_t generations = 8;
  std::size_t top_k = 5;
  std::size_t initial_atoms = 6;  // per measure
  std::size_t max_atoms = 32;     // per measure
  int max_depth = 10;
  MutationRates rates;
  std::uint64_t seed = 1;
};

struct SearchResult {
  std::vector<Candidate> ranked;   // best first, at most top_k
  std::vector<double> best_score;  // per generation, index 0 = initial population
};

/// Elitist evolutionary search: each generation mutates tournament-selected parents, scores
/// the children in parallel and keeps the best `population` of parents and children. The
/// output depends only on the configuration. Throws ValidationError on empty population,
/// zero caps or constants.depth outside [1, max_depth].
SearchResult search(const ExplorerConfig& cfg);

}  // namespace coronalab
