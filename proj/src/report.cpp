#include "coronalab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "coronalab/errors.hpp"

namespace coronalab {

Json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json to_json(const DiscreteMeasure& m) {
  Json atoms = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) atoms.push_back({{"x", json_number(m.x(i))}, {"w", json_number(m.w(i))}});
  return {{"label", m.label()}, {"atoms", std::move(atoms)}};
}

Json to_json(const ShiftPair& s) {
  return {{"omega1", json_number(s.omega1)}, {"omega2", json_number(s.omega2)}, {"seed", s.seed}};
}

Json to_json(const DyadicInterval& iv) {
  return {{"scale", iv.scale},
          {"index", iv.index},
          {"shift", json_number(iv.shift)},
          {"left", json_number(iv.left())},
          {"right", json_number(iv.right())}};
}

Json to_json(const ConstantsConfig& c) {
  return {{"delta", json_number(c.delta)},
          {"depth", c.depth},
          {"pq_iterations", c.grid.iterations},
          {"shifts", to_json(c.shifts)}};
}

Json to_json(const ConstantsReport& c) {
  return {{"opnorm", json_number(c.opnorm)},
          {"opnorm_converged", c.opnorm_converged},
          {"opnorm_iterations", c.opnorm_iterations},
          {"opnorm_residual", json_number(c.opnorm_residual)},
          {"cchi_forward", json_number(c.cchi_forward)},
          {"cchi_backward", json_number(c.cchi_backward)},
          {"cchi_local_forward", json_number(c.cchi_local_forward)},
          {"cchi_local_backward", json_number(c.cchi_local_backward)},
          {"cm_forward", json_number(c.cm_forward)},
          {"cm_backward", json_number(c.cm_backward)},
          {"q", json_number(c.q)},
          {"pq", json_number(c.pq)},
          {"pq_argmax", {{"x", json_number(c.pq_argmax.x)}, {"y", json_number(c.pq_argmax.y)}}},
          {"pq_candidates", c.pq_candidates},
          {"pq_iterations", c.pq_iterations},
          {"pivotal_forward", json_number(c.pivotal_forward)},
          {"pivotal_backward", json_number(c.pivotal_backward)},
          {"pivotal1_forward", json_number(c.pivotal1_forward)},
          {"pivotal1_backward", json_number(c.pivotal1_backward)},
          {"depth", c.depth},
          {"shifts", to_json(c.shifts)},
          {"delta", json_number(c.delta)},
          {"common_atoms", c.common_atoms},
          {"kernel_flagged", c.kernel_flagged}};
}

Json to_json(const StoppingTree& tree) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const StoppingNode& n = tree.nodes[i];
    nodes.push_back({{"id", i},
                     {"interval", to_json(n.interval)},
                     {"parent", n.parent},
                     {"children", n.children},
                     {"generation", n.generation},
                     {"depth", n.depth},
                     {"criterion", json_number(n.criterion)},
                     {"mu_mass", json_number(n.mu_mass)},
                     {"nu_mass", json_number(n.nu_mass)}});
  }
  return {{"root", to_json(tree.root)},
          {"threshold", json_number(tree.threshold)},
          {"depth_cap", tree.depth_cap},
          {"packing", json_number(packing_ratio(tree))},
          {"generation_masses", [&] {
             Json g = Json::array();
             for (double m : generation_masses(tree)) g.push_back(json_number(m));
             return g;
           }()},
          {"nodes", std::move(nodes)}};
}

Json to_json(const CheckResult& c) {
  Json extra = Json::object();
  for (const auto& [k, v] : c.extra) extra[k] = json_number(v);
  return {{"name", c.name},
          {"ratio_max", json_number(c.ratio_max)},
          {"frozen_bound", json_number(c.frozen_bound)},
          {"pass", c.pass},
          {"samples", c.samples},
          {"seed", c.seed},
          {"max_atoms", c.max_atoms},
          {"invariance_dev", json_number(c.invariance_dev)},
          {"extra", std::move(extra)}};
}

Json to_json(const CoronaSummary& c) {
  Json g = Json::array();
  for (double m : c.generation_masses) g.push_back(json_number(m));
  return {{"K", json_number(c.K)},
          {"nodes", c.nodes},
          {"generations", c.generations},
          {"packing", json_number(c.packing)},
          {"generation_masses", std::move(g)},
          {"packing_ok", c.packing_ok},
          {"generations_ok", c.generations_ok}};
}

Json to_json(const ParaproductSummary& p) {
  Json a = Json::array();
  for (double v : p.a_carleson) a.push_back(json_number(v));
  return {{"b_carleson", json_number(p.b_carleson)},
          {"b_embedding", json_number(p.b_embedding)},
          {"b_embedding_converged", p.b_embedding_converged},
          {"pi_o_identity_error", json_number(p.pi_o_identity_error)},
          {"pi_o_bound_ratio", json_number(p.pi_o_bound_ratio)},
          {"b_chi_ratio", json_number(p.b_chi_ratio)},
          {"first_norm_ratio", json_number(p.first_norm_ratio)},
          {"pi_q_ratio", json_number(p.pi_q_ratio)},
          {"a_carleson", std::move(a)},
          {"a_slope", json_number(p.a_slope)}};
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const CheckResult& c : r.checks) checks.push_back(to_json(c));
  return {{"constants", to_json(r.constants)},
          {"violated", r.violated},
          {"corona", r.corona ? to_json(*r.corona) : Json(nullptr)},
          {"paraproducts", r.paraproducts ? to_json(*r.paraproducts) : Json(nullptr)},
          {"checks", std::move(checks)},
          {"converged", r.converged}};
}

Json to_json(const Candidate& c) {
  return {{"score", json_number(c.score)},
          {"seed", c.seed},
          {"lineage", c.lineage},
          {"constants", to_json(c.constants)},
          {"mu", to_json(c.mu)},
          {"nu", to_json(c.nu)}};
}

Json instance_json(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  return {{"mu", to_json(mu)}, {"nu", to_json(nu)}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Csv::Csv(std::vector<std::string> header) : width_(header.size()) { row(std::move(header)); }

Csv& Csv::row(std::vector<std::string> cells) {
  if (cells.size() != width_) throw ValidationError("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].find_first_of(",\r\n") != std::string::npos) throw ValidationError("csv cell needs quoting");
    if (i > 0) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
  return *this;
}

std::string Csv::str() const { return text_; }

std::string carleson_csv(const CarlesonSequence& seq) {
  Csv csv({"scale", "index", "shift", "left", "right", "weight"});
  for (const auto& [iv, w] : seq.weights) {
    csv.row({std::to_string(iv.scale), std::to_string(iv.index), format_number(iv.shift), format_number(iv.left()),
             format_number(iv.right()), format_number(w)});
  }
  return csv.str();
}

std::string sweep_csv(const std::vector<std::pair<int, Estimate>>& rows) {
  Csv csv({"r", "estimate", "stderr", "N", "seed"});
  for (const auto& [r, e] : rows) {
    csv.row({std::to_string(r), format_number(e.value), format_number(e.stderr_), std::to_string(e.samples),
             std::to_string(e.seed)});
  }
  return csv.str();
}

std::string explorer_csv(const std::vector<Candidate>& ranked) {
  Csv csv({"rank", "score", "opnorm", "pq", "cchi_forward", "cchi_backward", "pivotal_forward", "pivotal_backward",
           "mu_atoms", "nu_atoms", "seed", "lineage"});
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const Candidate& c = ranked[i];
    std::string lineage;
    for (const std::string& step : c.lineage) lineage += (lineage.empty() ? "" : "|") + step;
    const ConstantsReport& k = c.constants;
    csv.row({std::to_string(i + 1), format_number(c.score), format_number(k.opnorm), format_number(k.pq),
             format_number(k.cchi_forward), format_number(k.cchi_backward), format_number(k.pivotal_forward),
             format_number(k.pivotal_backward), std::to_string(c.mu.size()), std::to_string(c.nu.size()),
             std::to_string(c.seed), lineage});
  }
  return csv.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
  if (!out) throw ValidationError("failed writing " + path);
}

}  // namespace coronalab
