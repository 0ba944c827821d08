#include "coronalab/haar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coronalab/errors.hpp"

namespace coronalab {

HaarFunction haar_from_masses(const DyadicInterval& I, double m_minus, double m_plus) {
  HaarFunction h;
  h.interval = I;
  if (!(m_minus > 0.0) || !(m_plus > 0.0)) {
    h.degenerate = true;
    return h;
  }
  const double m = m_minus + m_plus;
  h.value_minus = std::sqrt(m_plus / (m * m_minus));
  h.value_plus = -std::sqrt(m_minus / (m * m_plus));
  return h;
}

HaarFunction haar_function(const DiscreteMeasure& mu, const DyadicInterval& I) {
  const auto [a, b] = mu.range_half_open(I.left(), I.right());
  if (a == b) throw DomainError("Haar function on an interval of zero mass");
  const auto split = mu.range_half_open(I.left(), I.mid()).second;
  return haar_from_masses(I, mu.mass(a, split), mu.mass(split, b));
}

std::vector<HaarNode> haar_nodes(const DiscreteMeasure& mu, const DyadicInterval& root) {
  std::vector<HaarNode> out;
  const auto [a, b] = mu.range_half_open(root.left(), root.right());
  std::vector<HaarNode> stack;
  auto push = [&](const DyadicInterval& iv, std::size_t first, std::size_t last) {
    if (last - first < 2) return;
    const double mid = iv.mid();
    const auto split = static_cast<std::size_t>(
        std::lower_bound(mu.positions().begin() + static_cast<std::ptrdiff_t>(first),
                         mu.positions().begin() + static_cast<std::ptrdiff_t>(last), mid) -
        mu.positions().begin());
    stack.push_back({iv, first, split, last});
  };
  push(root, a, b);
  while (!stack.empty()) {
    const HaarNode node = stack.back();
    stack.pop_back();
    out.push_back(node);
    // Right first so the left subtree is emitted first.
    push(node.interval.child(1), node.mid, node.last);
    push(node.interval.child(0), node.first, node.mid);
  }
  return out;
}

HaarCoefficients decompose(const WeightedFunction& f, const ShiftedLattice& lattice,
                           const DyadicInterval& root) {
  const DiscreteMeasure& mu = f.base();
  const auto [a, b] = mu.range_half_open(root.left(), root.right());
  if (a != 0 || b != mu.size()) throw DomainError("support escapes the root interval");
  HaarCoefficients c;
  c.lattice = lattice;
  c.root = root;
  c.base_size = mu.size();
  c.base_mass = mu.total_mass();
  c.top = f.integral();
  for (const HaarNode& n : haar_nodes(mu, root)) {
    if (n.mid == n.first || n.mid == n.last) continue;  // degenerate
    double m_minus = 0.0, s_minus = 0.0, m_plus = 0.0, s_plus = 0.0;
    for (std::size_t i = n.first; i < n.mid; ++i) {
      m_minus += mu.w(i);
      s_minus += f[i] * mu.w(i);
    }
    for (std::size_t i = n.mid; i < n.last; ++i) {
      m_plus += mu.w(i);
      s_plus += f[i] * mu.w(i);
    }
    const HaarFunction h = haar_from_masses(n.interval, m_minus, m_plus);
    c.entries.emplace(n.interval, h.value_minus * s_minus + h.value_plus * s_plus);
  }
  return c;
}

namespace {

void require_same(const HaarCoefficients& c, const DiscreteMeasure& mu) {
  if (c.base_size != mu.size() || c.base_mass != mu.total_mass()) {
    throw ValidationError("Haar coefficients were computed over a different measure");
  }
}

}  // namespace

void add_haar_terms(const DiscreteMeasure& mu,
                    const std::vector<std::pair<DyadicInterval, double>>& terms,
                    std::vector<double>& values) {
  for (const auto& [iv, coeff] : terms) {
    if (coeff == 0.0) continue;
    const auto [a, b] = mu.range_half_open(iv.left(), iv.right());
    const auto split = mu.range_half_open(iv.left(), iv.mid()).second;
    const HaarFunction h = haar_from_masses(iv, mu.mass(a, split), mu.mass(split, b));
    if (h.degenerate) continue;
    for (std::size_t i = a; i < split; ++i) values[i] += coeff * h.value_minus;
    for (std::size_t i = split; i < b; ++i) values[i] += coeff * h.value_plus;
  }
}

std::vector<double> partial_reconstruct(const HaarCoefficients& c, const DiscreteMeasure& mu,
                                        int k) {
  require_same(c, mu);
  std::vector<double> values(mu.size(), 0.0);
  const auto [a, b] = mu.range_half_open(c.root.left(), c.root.right());
  const double root_mass = mu.mass(a, b);
  if (root_mass > 0.0) {
    for (std::size_t i = a; i < b; ++i) values[i] = c.top / root_mass;
  }
  std::vector<std::pair<DyadicInterval, double>> terms;
  for (const auto& [iv, coeff] : c.entries) {
    if (iv.scale > k) terms.emplace_back(iv, coeff);
  }
  add_haar_terms(mu, terms, values);
  return values;
}

std::vector<double> reconstruct_values(const HaarCoefficients& c, const DiscreteMeasure& mu) {
  return partial_reconstruct(c, mu, std::numeric_limits<int>::min());
}

WeightedFunction reconstruct(const HaarCoefficients& c, const DiscreteMeasure& mu) {
  return WeightedFunction(mu, reconstruct_values(c, mu));
}

}  // namespace coronalab
