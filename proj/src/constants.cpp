#include "coronalab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "coronalab/errors.hpp"
#include "coronalab/kernels.hpp"
#include "coronalab/parallel.hpp"

namespace coronalab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PowerResult operator_norm(const KernelMatrix& k, const PowerOptions& opt) {
  const std::size_t n = k.rows(), m = k.cols();
  std::vector<double> a(n * m);
  std::vector<double> sw(m);
  for (std::size_t i = 0; i < m; ++i) sw[i] = std::sqrt(k.source.w(i));
  for (std::size_t j = 0; j < n; ++j) {
    const double sv = std::sqrt(k.target.w(j));
    for (std::size_t i = 0; i < m; ++i) a[j * m + i] = sv * k(j, i) * sw[i];
  }
  return top_singular_value(a, n, m, opt);
}

PowerResult operator_norm(const CircleKernel& k, const PowerOptions& opt) {
  const std::size_t n = k.rows(), m = k.cols();
  // [[X, -Y], [Y, X]] has the singular values of X + iY, each twice.
  std::vector<double> a(4 * n * m);
  const std::size_t cols = 2 * m;
  for (std::size_t j = 0; j < n; ++j) {
    const double sv = std::sqrt(k.target.w(j));
    for (std::size_t i = 0; i < m; ++i) {
      const cplx c = sv * k.entries[j * m + i] * std::sqrt(k.source.w(i));
      a[j * cols + i] = c.real();
      a[j * cols + m + i] = -c.imag();
      a[(n + j) * cols + i] = c.imag();
      a[(n + j) * cols + m + i] = c.real();
    }
  }
  return top_singular_value(a, 2 * n, cols, opt);
}

SawyerHilbert sawyer_hilbert_constant(const DiscreteMeasure& mu_in, const DiscreteMeasure& nu_in,
                                      Direction dir, double delta) {
  const DiscreteMeasure& mu = dir == Direction::forward ? mu_in : nu_in;
  const DiscreteMeasure& nu = dir == Direction::forward ? nu_in : mu_in;
  if (mu.empty() || nu.empty()) throw ValidationError("testing constant needs two nonempty measures");
  const KernelMatrix k = hilbert_matrix(mu, nu, delta);
  const auto u = combined_support(mu, nu);
  const std::size_t m = u.size(), n = nu.size();
  // For every run start i the runs i..j are swept incrementally; rows are independent.
  std::vector<SawyerHilbert> best(m);
  parallel_for(m, [&](std::size_t i) {
    std::vector<double> h(n, 0.0);
    std::vector<double> col(n);
    double mass = 0.0;
    std::size_t mu_idx = static_cast<std::size_t>(
        std::lower_bound(mu.positions().begin(), mu.positions().end(), u[i]) - mu.positions().begin());
    const std::size_t nu_first = static_cast<std::size_t>(
        std::lower_bound(nu.positions().begin(), nu.positions().end(), u[i]) - nu.positions().begin());
    std::size_t nu_last = nu_first;
    SawyerHilbert b;
    for (std::size_t j = i; j < m; ++j) {
      if (mu_idx < mu.size() && mu.x(mu_idx) == u[j]) {
        const double w = mu.w(mu_idx);
        for (std::size_t r = 0; r < n; ++r) h[r] += k(r, mu_idx) * w;
        mass += w;
        ++mu_idx;
      }
      if (nu_last < n && nu.x(nu_last) == u[j]) ++nu_last;
      if (!(mass > 0.0)) continue;
      const double global = kernels::weighted_sq_sum(h, nu.weights());
      const double local = kernels::active().weighted_sq_sum(
          h.data() + nu_first, nu.weights().data() + nu_first, nu_last - nu_first);
      b.global = std::max(b.global, global / mass);
      b.local = std::max(b.local, local / mass);
    }
    best[i] = b;
  });
  SawyerHilbert out;
  for (const auto& b : best) {
    out.global = std::max(out.global, b.global);
    out.local = std::max(out.local, b.local);
  }
  return out;
}

double sawyer_maximal_constant(const DiscreteMeasure& mu_in, const DiscreteMeasure& nu_in,
                               Direction dir) {
  const DiscreteMeasure& mu = dir == Direction::forward ? mu_in : nu_in;
  const DiscreteMeasure& nu = dir == Direction::forward ? nu_in : mu_in;
  if (share_atom(mu, nu)) return kInf;
  const std::size_t m = mu.size(), n = nu.size();
  if (m == 0 || n == 0) return 0.0;
  // first[k]: first mu atom to the right of nu atom k.
  std::vector<std::size_t> first(n);
  for (std::size_t k = 0; k < n; ++k) {
    first[k] = static_cast<std::size_t>(
        std::upper_bound(mu.positions().begin(), mu.positions().end(), nu.x(k)) - mu.positions().begin());
  }
  std::vector<double> best(m, 0.0);
  parallel_for(m, [&](std::size_t i) {
    std::vector<double> s(m, 0.0);    // s[l] = mass of atoms l..j, l in [i, j]
    std::vector<double> mk(n, 0.0);   // M_mu chi_{i..j} at nu atom k
    double b = 0.0;
    for (std::size_t j = i; j < m; ++j) {
      const double wj = mu.w(j), xj = mu.x(j);
      for (std::size_t l = i; l < j; ++l) s[l] += wj;
      s[j] = wj;
      for (std::size_t k = 0; k < n; ++k) {
        const double y = nu.x(k);
        if (xj < y) {
          // All atoms so far lie left of y: J = [x_l, y].
          double v = 0.0;
          for (std::size_t l = i; l <= j; ++l) v = std::max(v, s[l] / (y - mu.x(l)));
          mk[k] = v;
        } else {
          // New right endpoint x_j: J = [y, x_j] or [x_l, x_j] with x_l < y.
          const std::size_t p = std::max(first[k], i);
          double v = mk[k];
          if (p <= j) v = std::max(v, s[p] / (xj - y));
          for (std::size_t l = i; l < p && l <= j; ++l) v = std::max(v, s[l] / (xj - mu.x(l)));
          mk[k] = v;
        }
      }
      b = std::max(b, kernels::weighted_sq_sum(mk, nu.weights()) / s[i]);
    }
    best[i] = b;
  });
  return *std::max_element(best.begin(), best.end());
}

double a2_constant(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (share_atom(mu, nu)) return kInf;
  const auto u = combined_support(mu, nu);
  const std::size_t m = u.size();
  std::vector<double> wm(m, 0.0), wn(m, 0.0);
  for (std::size_t i = 0, a = 0, b = 0; i < m; ++i) {
    if (a < mu.size() && mu.x(a) == u[i]) wm[i] = mu.w(a++);
    if (b < nu.size() && nu.x(b) == u[i]) wn[i] = nu.w(b++);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double sm = wm[i], sn = wn[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      sm += wm[j];
      sn += wn[j];
      const double len = u[j] - u[i];
      best = std::max(best, (sm / len) * (sn / len));
    }
  }
  return best;
}

PoissonA2 poisson_a2(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const PoissonA2Grid& grid) {
  PoissonA2 out;
  if (share_atom(mu, nu)) {
    out.value = kInf;
    if (!mu.empty()) {
      for (std::size_t i = 0; i < mu.size(); ++i) {
        if (nu.has_atom_at(mu.x(i))) {
          out.argmax = {mu.x(i), 0.0};
          break;
        }
      }
    }
    return out;
  }
  if (mu.empty() || nu.empty()) return out;
  const auto u = combined_support(mu, nu);
  const std::size_t m = u.size();
  auto eval = [&](double x, double y) {
    return poisson_point(mu, {x, y}) * poisson_point(nu, {x, y});
  };
  std::vector<HalfPlanePoint> cand;
  cand.reserve(m * (m - 1) / 2 + 64 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) cand.push_back({0.5 * (u[i] + u[j]), u[j] - u[i]});
  }
  double gap = kInf;
  for (std::size_t i = 1; i < m; ++i) gap = std::min(gap, u[i] - u[i - 1]);
  const double diam = u.back() - u.front();
  std::vector<double> xs(u.begin(), u.end());
  for (std::size_t i = 1; i < m; ++i) xs.push_back(u[i - 1] + 0.5 * (u[i] - u[i - 1]));
  for (double y = gap / 4.0; y <= 4.0 * diam; y *= 2.0) {
    for (double x : xs) cand.push_back({x, y});
  }
  std::vector<double> vals(cand.size());
  parallel_for(cand.size(), [&](std::size_t c) { vals[c] = eval(cand[c].x, cand[c].y); }, 256);
  std::size_t arg = 0;
  for (std::size_t c = 1; c < cand.size(); ++c) {
    if (vals[c] > vals[arg]) arg = c;
  }
  double best = vals[arg];
  HalfPlanePoint z = cand[arg];
  std::size_t count = cand.size();
  double hx = 0.5 * z.y, hl = 0.5 * std::numbers::ln2;
  for (int it = 0; it < grid.iterations; ++it) {
    const HalfPlanePoint nb[4] = {{z.x - hx, z.y}, {z.x + hx, z.y}, {z.x, z.y * std::exp(-hl)},
                                  {z.x, z.y * std::exp(hl)}};
    HalfPlanePoint next = z;
    double next_val = best;
    for (const auto& p : nb) {
      const double v = eval(p.x, p.y);
      ++count;
      if (v > next_val) {
        next_val = v;
        next = p;
      }
    }
    z = next;
    best = next_val;
    hx *= 0.5;
    hl *= 0.5;
  }
  out.value = best;
  out.argmax = z;
  out.candidates = count;
  return out;
}

// --- pivotal ----------------------------------------------------------------------------

namespace {

struct PivNode {
  DyadicInterval iv;
  int depth = 0;
  std::size_t mu_first = 0, mu_last = 0;
  std::size_t nu_first = 0, nu_last = 0;
  int child[2] = {-1, -1};
};

// Lattice tree under root, pruned to nodes charged by nu, down to the given depth.
std::vector<PivNode> nu_tree(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const DyadicInterval& root, int depth) {
  std::vector<PivNode> nodes;
  auto make = [&](const DyadicInterval& iv, int d) {
    PivNode n;
    n.iv = iv;
    n.depth = d;
    std::tie(n.mu_first, n.mu_last) = mu.range_half_open(iv.left(), iv.right());
    std::tie(n.nu_first, n.nu_last) = nu.range_half_open(iv.left(), iv.right());
    return n;
  };
  nodes.push_back(make(root, 0));
  if (nodes[0].nu_first == nodes[0].nu_last) return nodes;
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
    if (nodes[idx].depth >= depth) continue;
    for (int c = 0; c < 2; ++c) {
      PivNode ch = make(nodes[idx].iv.child(c), nodes[idx].depth + 1);
      if (ch.nu_first == ch.nu_last) continue;
      nodes[idx].child[c] = static_cast<int>(nodes.size());
      nodes.push_back(ch);
    }
  }
  return nodes;
}

double sq(double x) { return x * x; }

// value(J) = max(term(J), sum of children) for the outer interval `outer`.
std::pair<double, double> antichain_dp(const std::vector<PivNode>& nodes, int j, const PivNode& outer,
                                       const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const PivNode& n = nodes[static_cast<std::size_t>(j)];
  const double len = n.iv.length();
  const double c = n.iv.mid();
  const double nu_mass = nu.mass(n.nu_first, n.nu_last);
  const double p_out = poisson_range(mu, outer.mu_first, n.mu_first, c, len) +
                       poisson_range(mu, n.mu_last, outer.mu_last, c, len);
  const double p_all = poisson_range(mu, outer.mu_first, outer.mu_last, c, len);
  const double term = sq(p_out) * nu_mass;
  const double term1 = sq(p_all) * nu_mass;
  double sum = 0.0, sum1 = 0.0;
  for (int ch : n.child) {
    if (ch < 0) continue;
    const auto [v, v1] = antichain_dp(nodes, ch, outer, mu, nu);
    sum += v;
    sum1 += v1;
  }
  return {std::max(term, sum), std::max(term1, sum1)};
}

}  // namespace

Pivotal pivotal_constant(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                         const DyadicInterval& root, int depth) {
  const auto [r0, r1] = mu.range_half_open(root.left(), root.right());
  if (r0 == r1) throw DomainError("pivotal constant needs mu(root) > 0");
  if (depth < 0) throw ValidationError("depth must be >= 0");
  const auto nodes = nu_tree(mu, nu, root, depth);
  if (nodes[0].nu_first == nodes[0].nu_last) return {};
  std::vector<Pivotal> per(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t idx) {
    const PivNode& outer = nodes[idx];
    if (outer.mu_first == outer.mu_last) return;
    const double mass = mu.mass(outer.mu_first, outer.mu_last);
    const auto [v, v1] = antichain_dp(nodes, static_cast<int>(idx), outer, mu, nu);
    per[idx] = {v / mass, v1 / mass};
  });
  Pivotal out;
  for (const auto& p : per) {
    out.pivotal = std::max(out.pivotal, p.pivotal);
    out.pivotal1 = std::max(out.pivotal1, p.pivotal1);
  }
  return out;
}

ConstantsReport full_constants(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               const ConstantsConfig& cfg) {
  ConstantsReport r;
  r.depth = cfg.depth;
  r.shifts = cfg.shifts;
  r.delta = cfg.delta;
  r.pq_iterations = cfg.grid.iterations;
  r.common_atoms = share_atom(mu, nu);
  const KernelMatrix k = hilbert_matrix(mu, nu, cfg.delta);
  r.kernel_flagged = k.coincident;
  const PowerResult norm = operator_norm(k);
  r.opnorm = norm.value;
  r.opnorm_converged = norm.converged;
  r.opnorm_iterations = norm.iterations;
  r.opnorm_residual = norm.residual;
  if (!mu.empty() && !nu.empty()) {
    const auto f = sawyer_hilbert_constant(mu, nu, Direction::forward, cfg.delta);
    const auto b = sawyer_hilbert_constant(mu, nu, Direction::backward, cfg.delta);
    r.cchi_forward = f.global;
    r.cchi_local_forward = f.local;
    r.cchi_backward = b.global;
    r.cchi_local_backward = b.local;
  }
  r.cm_forward = sawyer_maximal_constant(mu, nu, Direction::forward);
  r.cm_backward = sawyer_maximal_constant(mu, nu, Direction::backward);
  r.q = a2_constant(mu, nu);
  const PoissonA2 pq = poisson_a2(mu, nu, cfg.grid);
  r.pq = pq.value;
  r.pq_argmax = pq.argmax;
  r.pq_candidates = pq.candidates;
  if (!mu.empty() || !nu.empty()) {
    const PairNormalization np = normalize_pair(mu, nu);
    if (!np.mu.empty()) {
      const Pivotal pf = pivotal_constant(np.mu, np.nu, unit_root(cfg.shifts.omega1), cfg.depth);
      r.pivotal_forward = pf.pivotal;
      r.pivotal1_forward = pf.pivotal1;
    }
    if (!np.nu.empty()) {
      const Pivotal pb = pivotal_constant(np.nu, np.mu, unit_root(cfg.shifts.omega2), cfg.depth);
      r.pivotal_backward = pb.pivotal;
      r.pivotal1_backward = pb.pivotal1;
    }
  }
  return r;
}

}  // namespace coronalab
