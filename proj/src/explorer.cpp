#include "coronalab/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "coronalab/errors.hpp"
#include "coronalab/parallel.hpp"
#include "coronalab/rng.hpp"

namespace coronalab {

double candidate_score(const ConstantsReport& c) {
  const double num = std::max(c.pivotal_forward, c.pivotal_backward);
  const double den = 1.0 + c.opnorm * c.opnorm + c.pq + c.cchi_forward + c.cchi_backward;
  if (!std::isfinite(num) || !std::isfinite(den)) return 0.0;
  return num / den;
}

Candidate score(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const ConstantsConfig& cfg) {
  if (mu.empty() || nu.empty()) throw ValidationError("explorer candidates need two nonempty measures");
  if (share_atom(mu, nu)) throw ValidationError("explorer candidates need disjoint supports");
  Candidate c;
  c.mu = mu;
  c.nu = nu;
  c.constants = full_constants(mu, nu, cfg);
  c.score = candidate_score(c.constants);
  return c;
}

namespace {

// Distance from x to its nearest neighbour among `pts` (sorted); 1 when x is alone.
double local_gap(const std::vector<double>& pts, double x) {
  double best = std::numeric_limits<double>::infinity();
  const auto it = std::lower_bound(pts.begin(), pts.end(), x);
  if (it != pts.end() && *it != x) best = std::min(best, *it - x);
  if (it != pts.end() && it + 1 != pts.end()) best = std::min(best, *(it + 1) - x);
  if (it != pts.begin()) best = std::min(best, x - *(it - 1));
  return std::isfinite(best) && best > 0.0 ? best : 1.0;
}

std::vector<Atom> cantor_block(double x, double w, double half, int levels) {
  std::vector<std::pair<double, double>> iv{{x - half, x + half}};
  for (int l = 0; l < levels; ++l) {
    std::vector<std::pair<double, double>> next;
    for (const auto& [a, b] : iv) {
      const double third = (b - a) / 3.0;
      next.emplace_back(a, a + third);
      next.emplace_back(b - third, b);
    }
    iv = std::move(next);
  }
  std::vector<Atom> out;
  const double piece = std::ldexp(w, -levels);
  for (const auto& [a, b] : iv) out.push_back({0.5 * (a + b), piece});
  return out;
}

struct Mutant {
  DiscreteMeasure mu, nu;
  std::string name;
};

Mutant mutate_once(const Candidate& parent, Rng& rng, const ExplorerConfig& cfg) {
  const bool on_mu = rng.index(2) == 0;
  const DiscreteMeasure& target = on_mu ? parent.mu : parent.nu;
  std::vector<Atom> atoms = target.atoms();
  const std::vector<double> pts = combined_support(parent.mu, parent.nu);
  const std::size_t i = rng.index(atoms.size());
  const double gap = local_gap(pts, atoms[i].x);

  const MutationRates& r = cfg.rates;
  const double total = r.jitter + r.rescale + r.split_merge + r.cantor;
  double u = rng.uniform() * total;
  std::string kind;
  if ((u -= r.jitter) < 0.0) {
    kind = "jitter";
  } else if ((u -= r.rescale) < 0.0) {
    kind = "rescale";
  } else if ((u -= r.split_merge) < 0.0) {
    kind = "split_merge";
  } else {
    kind = "cantor";
  }

  if (kind == "cantor") {
    int levels = 2 + static_cast<int>(rng.index(2));
    while (levels > 0 && atoms.size() - 1 + (std::size_t{1} << levels) > cfg.max_atoms) --levels;
    if (levels == 0) {
      kind = "jitter";
    } else {
      const std::vector<Atom> block = cantor_block(atoms[i].x, atoms[i].w, gap * rng.uniform(0.05, 0.45), levels);
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
      atoms.insert(atoms.end(), block.begin(), block.end());
    }
  }
  if (kind == "split_merge") {
    const bool split = atoms.size() == 1 || (atoms.size() < cfg.max_atoms && rng.uniform() < 0.5);
    if (split && atoms.size() < cfg.max_atoms) {
      const double d = gap * rng.uniform(0.01, 0.25);
      const Atom a = atoms[i];
      atoms[i] = {a.x - d, 0.5 * a.w};
      atoms.push_back({a.x + d, 0.5 * a.w});
      kind = "split";
    } else if (atoms.size() > 1) {
      const std::size_t k = std::min(i, atoms.size() - 2);
      const Atom a = atoms[k], b = atoms[k + 1];
      const double w = a.w + b.w;
      atoms[k] = {(a.x * a.w + b.x * b.w) / w, w};
      atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(k) + 1);
      kind = "merge";
    } else {
      kind = "jitter";
    }
  }
  if (kind == "jitter") {
    const double step = gap * std::exp(rng.uniform(std::log(1e-3), std::log(0.5)));
    atoms[i].x += rng.index(2) == 0 ? -step : step;
  } else if (kind == "rescale") {
    atoms[i].w *= std::exp(std::clamp(1.5 * rng.normal(), -6.0, 6.0));
  }

  DiscreteMeasure changed(std::move(atoms), target.label());
  Mutant m{on_mu ? changed : parent.mu, on_mu ? parent.nu : changed, kind + (on_mu ? ":mu" : ":nu")};
  return m;
}

Candidate child_of(const Candidate& parent, std::uint64_t seed, const ExplorerConfig& cfg) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Mutant m = mutate_once(parent, rng, cfg);
    if (share_atom(m.mu, m.nu) || m.mu.size() > cfg.max_atoms || m.nu.size() > cfg.max_atoms) continue;
    Candidate c = score(m.mu, m.nu, cfg.constants);
    c.seed = parent.seed;
    c.lineage = parent.lineage;
    c.lineage.push_back(std::move(m.name));
    return c;
  }
  Candidate c = parent;
  c.lineage.push_back("none");
  return c;
}

Candidate initial_candidate(std::size_t index, const ExplorerConfig& cfg) {
  const std::uint64_t seed = derive_seed(cfg.seed, index);
  const std::string n = std::to_string(cfg.initial_atoms);
  const std::string per = std::to_string((cfg.initial_atoms + 1) / 2);
  std::string mu_spec = "uniform-random:n=" + n, nu_spec = "uniform-random:n=" + n;
  switch (index % 3) {
    case 1:
      mu_spec = "adversarial-clustered:clusters=2,per=" + per + ",levels=3";
      break;
    case 2:
      nu_spec = "adversarial-clustered:clusters=2,per=" + per + ",levels=3";
      break;
    default:
      break;
  }
  for (std::uint64_t attempt = 0;; ++attempt) {
    const DiscreteMeasure mu = generate_measure(GeneratorSpec::parse(mu_spec, derive_seed(seed, 2 * attempt)));
    const DiscreteMeasure nu = generate_measure(GeneratorSpec::parse(nu_spec, derive_seed(seed, 2 * attempt + 1)));
    if (share_atom(mu, nu) || mu.size() > cfg.max_atoms || nu.size() > cfg.max_atoms) {
      if (attempt >= 16) throw ValidationError("explorer could not draw an initial pair within the caps");
      continue;
    }
    Candidate c = score(mu, nu, cfg.constants);
    c.seed = seed;
    return c;
  }
}

// Best first; ties keep the earlier candidate first.
void rank(std::vector<Candidate>& pop) {
  std::stable_sort(pop.begin(), pop.end(), [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
}

}  // namespace

SearchResult search(const ExplorerConfig& cfg) {
  if (cfg.population == 0) throw ValidationError("explorer population must be positive");
  if (cfg.initial_atoms == 0 || cfg.max_atoms == 0 || cfg.initial_atoms > cfg.max_atoms) {
    throw ValidationError("explorer needs 0 < initial_atoms <= max_atoms");
  }
  if (cfg.constants.depth < 1 || cfg.constants.depth > cfg.max_depth) {
    throw ValidationError("explorer depth must lie in [1, max_depth]");
  }
  const MutationRates& r = cfg.rates;
  if (!(r.jitter >= 0 && r.rescale >= 0 && r.split_merge >= 0 && r.cantor >= 0) ||
      !(r.jitter + r.rescale + r.split_merge + r.cantor > 0.0)) {
    throw ValidationError("mutation rates must be nonnegative with a positive sum");
  }

  std::vector<Candidate> pop(cfg.population);
  parallel_for(cfg.population, [&](std::size_t i) { pop[i] = initial_candidate(i, cfg); });
  rank(pop);
  SearchResult out;
  out.best_score.push_back(pop.front().score);

  for (std::size_t g = 0; g < cfg.generations; ++g) {
    std::vector<Candidate> children(cfg.population);
    parallel_for(cfg.population, [&](std::size_t i) {
      const std::uint64_t seed = derive_seed(cfg.seed, ((g + 1) << 32) | i);
      Rng pick(derive_seed(seed, 0));
      const std::size_t a = pick.index(pop.size()), b = pick.index(pop.size());
      children[i] = child_of(pop[std::min(a, b)], derive_seed(seed, 1), cfg);
    });
    for (Candidate& c : children) pop.push_back(std::move(c));
    rank(pop);
    pop.resize(cfg.population);
    out.best_score.push_back(pop.front().score);
  }
  const std::size_t k = std::min(cfg.top_k, pop.size());
  out.ranked.assign(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

}  // namespace coronalab
