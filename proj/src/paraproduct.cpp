#include "coronalab/paraproduct.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "coronalab/constants.hpp"
#include "coronalab/errors.hpp"
#include "coronalab/haar.hpp"

namespace coronalab {

namespace {

bool inside(const DyadicInterval& j, const DyadicInterval& i) {
  return j.left() >= i.left() && j.right() <= i.right();
}

// Generation gap from outer down to inner, -1 when inner is not below outer.
int gap_below(const StoppingTree& tree, int inner, int outer) {
  int g = 0;
  for (int n = inner; n >= 0; n = tree.nodes[static_cast<std::size_t>(n)].parent, ++g) {
    if (n == outer) return g;
  }
  return -1;
}

void check_node(const ParaproductContext& ctx, int node) {
  if (node < 0 || static_cast<std::size_t>(node) >= ctx.tree.nodes.size()) {
    throw DomainError("no stopping node " + std::to_string(node));
  }
}

std::vector<double> from_terms(const ParaproductContext& ctx,
                               const std::vector<std::pair<DyadicInterval, double>>& terms) {
  std::vector<double> out(ctx.nu.size(), 0.0);
  add_haar_terms(ctx.nu, terms, out);
  return out;
}

}  // namespace

double carleson_constant(const CarlesonSequence& seq, const DiscreteMeasure& mu, int top_scale) {
  std::map<DyadicInterval, double> sums;
  for (const auto& [iv, a] : seq.weights) {
    if (iv.scale > top_scale) continue;
    DyadicInterval up = iv;
    for (;;) {
      sums[up] += a;
      if (up.scale >= top_scale) break;
      up = up.parent();
    }
  }
  double best = 0.0;
  for (const auto& [iv, s] : sums) {
    const double m = mu.mass(Interval::half_open(iv.left(), iv.right()));
    if (m > 0.0) best = std::max(best, s / m);
  }
  return best;
}

PowerResult embedding_constant(const CarlesonSequence& seq, const DiscreteMeasure& mu) {
  struct Term {
    std::size_t first, last;
    double coef;  // a_I / mu(I)^2
  };
  std::vector<Term> terms;
  for (const auto& [iv, a] : seq.weights) {
    if (a == 0.0) continue;
    const auto [first, last] = mu.range_half_open(iv.left(), iv.right());
    const double m = mu.mass(first, last);
    if (m > 0.0) terms.push_back({first, last, a / (m * m)});
  }
  std::vector<double> sw(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) sw[i] = std::sqrt(mu.w(i));
  PowerOptions opt;
  opt.tolerance = 1e-10;
  return top_eigenvalue_psd(
      mu.size(),
      [&](const std::vector<double>& x, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (const Term& t : terms) {
          double d = 0.0;
          for (std::size_t i = t.first; i < t.last; ++i) d += sw[i] * x[i];
          d *= t.coef;
          for (std::size_t i = t.first; i < t.last; ++i) out[i] += d * sw[i];
        }
      },
      opt);
}

std::vector<double> ParaproductContext::hilbert_of(std::size_t first, std::size_t last,
                                                   std::size_t skip_first, std::size_t skip_last) const {
  std::vector<double> g(nu.size(), 0.0);
  for (std::size_t j = 0; j < nu.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = first; i < last; ++i) {
      if (i >= skip_first && i < skip_last) continue;
      s += kernel(j, i) * mu.w(i);
    }
    g[j] = s;
  }
  return g;
}

std::map<DyadicInterval, double> ParaproductContext::nu_coefficients(const std::vector<double>& g) const {
  if (nu.empty()) return {};
  return decompose(WeightedFunction(nu, g), ShiftedLattice{omega_nu, -60, 0}, unit_root(omega_nu)).entries;
}

std::pair<std::size_t, std::size_t> ParaproductContext::mu_range(const DyadicInterval& iv) const {
  return mu.range_half_open(iv.left(), iv.right());
}

double ParaproductContext::average(const WeightedFunction& f, const DyadicInterval& iv) const {
  const auto [first, last] = mu_range(iv);
  const double m = mu.mass(first, last);
  if (m <= 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = first; i < last; ++i) s += f[i] * mu.w(i);
  return s / m;
}

ParaproductContext make_paraproduct_context(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                            const ShiftPair& shifts, double K, int depth,
                                            const GoodBadConfig& goodness) {
  if (mu.empty()) throw DomainError("paraproducts need a nonempty first measure");
  ParaproductContext ctx;
  const PairNormalization np = normalize_pair(mu, nu);
  ctx.mu = np.mu;
  ctx.nu = np.nu;
  ctx.omega_mu = shifts.omega1;
  ctx.omega_nu = shifts.omega2;
  ctx.goodness = goodness;
  ctx.tree = build_stopping_tree(ctx.mu, ctx.nu, unit_root(ctx.omega_mu), K, depth);
  std::vector<double> pts;
  for (double x : ctx.mu.positions()) pts.push_back(x);
  for (double y : ctx.nu.positions()) pts.push_back(y);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int k_min = std::max(-60, finest_scale(pts));
  ctx.families = corona_families(ctx.tree, ctx.mu, ctx.nu, ctx.omega_nu, k_min);
  ctx.kernel = hilbert_matrix(ctx.mu, ctx.nu, 0.0);
  const ShiftedLattice mu_lattice = other_lattice(ctx.omega_mu);
  for (const auto& [j, id] : ctx.families.nu_index) {
    ctx.nu_good.emplace(j, good_strong(j, mu_lattice, goodness));
  }

  const std::size_t n = ctx.tree.nodes.size();
  ctx.chi_coeffs.resize(n);
  ctx.gap_coeffs.resize(n);
  ctx.proj_O.resize(n);
  ctx.proj_Q.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const StoppingNode& node = ctx.tree.nodes[s];
    const auto [first, last] = ctx.mu_range(node.interval);
    ctx.chi_coeffs[s] = ctx.nu_coefficients(ctx.hilbert_of(first, last));
    const int self = static_cast<int>(s);
    for (const auto& [j, c] : ctx.chi_coeffs[s]) {
      if (ctx.in_family(j, [&](int o) { return o == self; })) ctx.proj_O[s].emplace_back(j, c);
    }
    if (node.parent < 0) continue;
    const auto [pf, pl] = ctx.mu_range(ctx.tree.nodes[static_cast<std::size_t>(node.parent)].interval);
    ctx.gap_coeffs[s] = ctx.nu_coefficients(ctx.hilbert_of(pf, pl, first, last));
    for (const auto& [j, c] : ctx.gap_coeffs[s]) {
      if (ctx.in_family(j, [&](int o) { return gap_below(ctx.tree, o, self) >= 0; })) {
        ctx.proj_Q[s].emplace_back(j, c);
      }
    }
  }
  return ctx;
}

std::vector<DyadicInterval> mu_members(const ParaproductContext& ctx, int node) {
  check_node(ctx, node);
  std::vector<DyadicInterval> out;
  for (int id : ctx.families.O[static_cast<std::size_t>(node)]) {
    const FamilyMember& m = ctx.families.members[static_cast<std::size_t>(id)];
    if (m.mu_lattice) out.push_back(m.interval);
  }
  return out;
}

std::vector<DyadicInterval> phi_family(const ParaproductContext& ctx, int node, const DyadicInterval& I) {
  check_node(ctx, node);
  const int scale = I.scale - (ctx.goodness.r - 1);
  std::vector<DyadicInterval> out;
  for (int id : ctx.families.O[static_cast<std::size_t>(node)]) {
    const FamilyMember& m = ctx.families.members[static_cast<std::size_t>(id)];
    if (m.mu_lattice || m.interval.scale != scale || !inside(m.interval, I)) continue;
    if (ctx.nu_good.at(m.interval)) out.push_back(m.interval);
  }
  return out;
}

namespace {

// (I, terms of sum_{J in Phi(I)} Delta_J H chi_S) for every I of O_S with mu(I) > 0.
std::vector<std::pair<DyadicInterval, std::vector<std::pair<DyadicInterval, double>>>> first_blocks(
    const ParaproductContext& ctx, int node) {
  std::vector<std::pair<DyadicInterval, std::vector<std::pair<DyadicInterval, double>>>> out;
  const auto& coeffs = ctx.chi_coeffs[static_cast<std::size_t>(node)];
  for (const DyadicInterval& I : mu_members(ctx, node)) {
    const auto [first, last] = ctx.mu_range(I);
    if (ctx.mu.mass(first, last) <= 0.0) continue;
    std::vector<std::pair<DyadicInterval, double>> terms;
    for (const DyadicInterval& j : phi_family(ctx, node, I)) {
      const auto it = coeffs.find(j);
      if (it != coeffs.end()) terms.emplace_back(j, it->second);
    }
    if (!terms.empty()) out.emplace_back(I, std::move(terms));
  }
  return out;
}

}  // namespace

std::vector<double> first_paraproduct_apply(const ParaproductContext& ctx, int node,
                                            const WeightedFunction& phi) {
  check_node(ctx, node);
  phi.require_base(ctx.mu);
  std::vector<std::pair<DyadicInterval, double>> terms;
  for (const auto& [I, block] : first_blocks(ctx, node)) {
    const double avg = ctx.average(phi, I);
    for (const auto& [j, c] : block) terms.emplace_back(j, avg * c);
  }
  return from_terms(ctx, terms);
}

CarlesonSequence carleson_sequence_aI(const ParaproductContext& ctx, int node) {
  check_node(ctx, node);
  CarlesonSequence seq;
  for (const auto& [I, block] : first_blocks(ctx, node)) {
    double a = 0.0;
    for (const auto& [j, c] : block) a += c * c;
    seq.weights[I] = a;
  }
  return seq;
}

PowerResult first_paraproduct_norm(const ParaproductContext& ctx, int node) {
  check_node(ctx, node);
  const std::size_t rows = ctx.nu.size(), cols = ctx.mu.size();
  std::vector<double> a(rows * cols, 0.0);
  for (const auto& [I, block] : first_blocks(ctx, node)) {
    const auto [first, last] = ctx.mu_range(I);
    const double m = ctx.mu.mass(first, last);
    const std::vector<double> g = from_terms(ctx, block);
    for (std::size_t k = 0; k < rows; ++k) {
      if (g[k] == 0.0) continue;
      const double gk = g[k] * std::sqrt(ctx.nu.w(k)) / m;
      for (std::size_t i = first; i < last; ++i) a[k * cols + i] += gk * std::sqrt(ctx.mu.w(i));
    }
  }
  return top_singular_value(a, rows, cols, PowerOptions{});
}

CoronaSequences carleson_sequences_corona(const ParaproductContext& ctx, int j_max) {
  if (j_max < 0) throw ValidationError("j_max must be >= 0");
  CoronaSequences out;
  out.a.resize(static_cast<std::size_t>(j_max) + 1);
  for (std::size_t s = 0; s < ctx.tree.nodes.size(); ++s) {
    const DyadicInterval& iv = ctx.tree.nodes[s].interval;
    double b = 0.0;
    for (const auto& [j, c] : ctx.proj_O[s]) b += c * c;
    if (b > 0.0) out.b.weights[iv] = b;
    std::vector<double> acc(out.a.size(), 0.0);
    for (const auto& [j, c] : ctx.proj_Q[s]) {
      const int d = gap_below(ctx.tree, ctx.families.nu_owner(j), static_cast<int>(s));
      for (int k = 0; k <= std::min(d, j_max); ++k) acc[static_cast<std::size_t>(k)] += c * c;
    }
    for (std::size_t k = 0; k < acc.size(); ++k) {
      if (acc[k] > 0.0) out.a[k].weights[iv] = acc[k];
    }
  }
  return out;
}

std::vector<double> pi_O_apply(const ParaproductContext& ctx, const WeightedFunction& f) {
  f.require_base(ctx.mu);
  std::vector<std::pair<DyadicInterval, double>> terms;
  for (std::size_t s = 0; s < ctx.tree.nodes.size(); ++s) {
    const double avg = ctx.average(f, ctx.tree.nodes[s].interval);
    for (const auto& [j, c] : ctx.proj_O[s]) terms.emplace_back(j, avg * c);
  }
  return from_terms(ctx, terms);
}

namespace {

std::vector<double> father_averages(const ParaproductContext& ctx, const WeightedFunction& f) {
  std::vector<double> alpha(ctx.tree.nodes.size(), 0.0);
  for (std::size_t s = 0; s < ctx.tree.nodes.size(); ++s) {
    const StoppingNode& node = ctx.tree.nodes[s];
    if (node.parent >= 0) alpha[s] = ctx.average(f, node.interval.parent());
  }
  return alpha;
}

}  // namespace

std::vector<double> pi_Q_apply(const ParaproductContext& ctx, const WeightedFunction& f) {
  f.require_base(ctx.mu);
  const std::vector<double> alpha = father_averages(ctx, f);
  std::vector<std::pair<DyadicInterval, double>> terms;
  for (std::size_t s = 0; s < ctx.tree.nodes.size(); ++s) {
    for (const auto& [j, c] : ctx.proj_Q[s]) terms.emplace_back(j, alpha[s] * c);
  }
  return from_terms(ctx, terms);
}

PiQSplit pi_Q_split(const ParaproductContext& ctx, const WeightedFunction& f) {
  f.require_base(ctx.mu);
  PiQSplit r;
  r.norm_sq = nu_norm_sq(ctx, pi_Q_apply(ctx, f));
  const std::vector<double> alpha = father_averages(ctx, f);
  const std::size_t n = ctx.tree.nodes.size();
  std::vector<std::map<DyadicInterval, double>> v(n);
  for (std::size_t s = 0; s < n; ++s) {
    double sq = 0.0;
    for (const auto& [j, c] : ctx.proj_Q[s]) {
      v[s].emplace(j, c);
      sq += c * c;
    }
    r.dp += alpha[s] * alpha[s] * sq;
  }
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t || gap_below(ctx.tree, static_cast<int>(t), static_cast<int>(s)) < 0) continue;
      double ip = 0.0;
      for (const auto& [j, c] : v[t]) {
        const auto it = v[s].find(j);
        if (it != v[s].end()) ip += c * it->second;
      }
      // Each nested pair appears once here; the ordered sum counts it twice.
      r.odp += 2.0 * std::abs(alpha[s] * alpha[t] * ip);
      r.signed_cross += 2.0 * alpha[s] * alpha[t] * ip;
    }
  }
  return r;
}

double nu_norm_sq(const ParaproductContext& ctx, const std::vector<double>& g) {
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) s += g[k] * g[k] * ctx.nu.w(k);
  return s;
}

}  // namespace coronalab
