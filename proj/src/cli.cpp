#include "coronalab/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "coronalab/constants.hpp"
#include "coronalab/corona.hpp"
#include "coronalab/errors.hpp"
#include "coronalab/explorer.hpp"
#include "coronalab/goodbad.hpp"
#include "coronalab/harness.hpp"
#include "coronalab/measure.hpp"
#include "coronalab/paraproduct.hpp"
#include "coronalab/report.hpp"
#include "coronalab/rng.hpp"

namespace coronalab::cli {

namespace {

struct PairArgs {
  std::string mu_path, nu_path;
  int depth = 6;
  double delta = 0.0;
  int pq_iterations = 8;
  std::uint64_t seed = 1;

  void add(CLI::App* cmd) {
    cmd->add_option("--mu", mu_path, "first measure (JSON)")->required();
    cmd->add_option("--nu", nu_path, "second measure (JSON)")->required();
    cmd->add_option("--depth", depth, "dyadic depth for lattice constants")->capture_default_str();
    cmd->add_option("--delta", delta, "kernel truncation")->capture_default_str();
    cmd->add_option("--pq-iterations", pq_iterations, "Poisson A2 refinement rounds")->capture_default_str();
    cmd->add_option("--seed", seed, "seed of the lattice shifts")->capture_default_str();
  }

  ConstantsConfig constants() const {
    if (depth < 1 || depth > 20) throw ValidationError("--depth must lie in 1..20");
    if (pq_iterations < 0) throw ValidationError("--pq-iterations must be >= 0");
    ConstantsConfig c;
    c.depth = depth;
    c.delta = delta;
    c.grid.iterations = pq_iterations;
    c.shifts = sample_shift_pair(seed);
    return c;
  }
};

struct Loaded {
  DiscreteMeasure mu, nu;
};

Loaded load_pair(const PairArgs& a) { return {load_measure(a.mu_path), load_measure(a.nu_path)}; }

Json header(const std::string& command) { return {{"version", report_version}, {"command", command}}; }

double stopping_threshold(double pivotal) { return pivotal > 0.0 ? 4.0 * pivotal : 1.0; }

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
    const int a = std::stoi(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(text);
    const int b = std::stoi(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(text);
    if (a > b) throw ValidationError("empty range " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw ValidationError("expected an integer or a range a..b, got '" + text + "'");
  }
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw ValidationError("cannot create directory " + dir);
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

// ---- commands --------------------------------------------------------------------------------

int cmd_analyze(const PairArgs& args, const std::string& out) {
  const ConstantsConfig cfg = args.constants();
  const Loaded p = load_pair(args);
  const ConstantsReport rep = full_constants(p.mu, p.nu, cfg);
  Json doc = header("analyze");
  doc["instance"] = instance_json(p.mu, p.nu);
  doc["config"] = to_json(cfg);
  doc["constants"] = to_json(rep);
  doc["seeds"] = {{"shifts", args.seed}};
  write_file(out, dump(doc));
  return rep.opnorm_converged ? 0 : 2;
}

int cmd_corona(const PairArgs& args, std::optional<double> K_override, const std::string& out) {
  const ConstantsConfig cfg = args.constants();
  const Loaded p = load_pair(args);
  if (p.mu.empty()) throw ValidationError("corona needs a nonempty first measure");
  if (share_atom(p.mu, p.nu)) throw ValidationError("corona needs disjoint supports");
  const PairNormalization np = normalize_pair(p.mu, p.nu);
  const DyadicInterval root = unit_root(cfg.shifts.omega1);
  const Pivotal piv = pivotal_constant(np.mu, np.nu, root, cfg.depth);
  const double K = K_override ? *K_override : stopping_threshold(piv.pivotal);
  if (!(K > 0.0) || !std::isfinite(K)) throw ValidationError("--K must be positive and finite");
  const StoppingTree tree = build_stopping_tree(np.mu, np.nu, root, K, cfg.depth);
  Json doc = header("corona");
  doc["instance"] = instance_json(p.mu, p.nu);
  doc["config"] = to_json(cfg);
  doc["config"]["K"] = json_number(K);
  doc["config"]["K_policy"] = K_override ? "given" : "4 * pivotal";
  doc["normalization"] = {{"scale", json_number(np.scale)}, {"offset", json_number(np.offset)}};
  doc["pivotal"] = json_number(piv.pivotal);
  doc["corona"] = to_json(corona_summary(tree, K));
  doc["corona"]["tree"] = to_json(tree);
  doc["seeds"] = {{"shifts", args.seed}};
  write_file(out, dump(doc));
  return 0;
}

struct GoodBadArgs {
  std::string r = "2..10";
  std::size_t samples = 20000;
  std::uint64_t seed = 7;
  std::string mode = "probability";
  int level = -12;
  double point = 0.5;
  int scale_cap = 40;
  std::string measure = "cantor:depth=5";
};

int cmd_goodbad(const GoodBadArgs& a, const std::string& out) {
  const auto [r_lo, r_hi] = parse_range(a.r);
  if (r_lo < 1) throw ValidationError("--r must be >= 1");
  std::vector<std::pair<int, Estimate>> rows;
  Json meta = header("goodbad");
  meta["config"] = {{"r", a.r}, {"samples", a.samples}, {"mode", a.mode}, {"scale_cap", a.scale_cap}};
  if (a.mode == "probability") {
    const BadGeometry geo{a.level, a.point};
    meta["config"]["level"] = a.level;
    meta["config"]["point"] = json_number(a.point);
    for (int r = r_lo; r <= r_hi; ++r) {
      rows.emplace_back(r, estimate_bad_probability(geo, GoodBadConfig{r, a.scale_cap}, a.samples, a.seed));
    }
  } else if (a.mode == "epsilon") {
    const DiscreteMeasure mu = generate_measure(GeneratorSpec::parse(a.measure, derive_seed(a.seed, 0)));
    Rng rng(derive_seed(a.seed, 1));
    std::vector<double> values(mu.size());
    for (double& v : values) v = rng.normal();
    const WeightedFunction f(mu, std::move(values));
    meta["config"]["measure"] = a.measure;
    for (int r = r_lo; r <= r_hi; ++r) {
      rows.emplace_back(r, estimate_epsilon_r(f, GoodBadConfig{r, a.scale_cap}, a.samples, a.seed));
    }
  } else {
    throw ValidationError("--mode must be probability or epsilon");
  }
  meta["seeds"] = {{"sweep", a.seed}};
  write_file(out, sweep_csv(rows));
  write_file(out + ".json", dump(meta));
  return 0;
}

int cmd_paraproducts(const PairArgs& args, int r, int j_max, const std::string& out_dir) {
  const ConstantsConfig cfg = args.constants();
  if (r < 1) throw ValidationError("--r must be >= 1");
  if (j_max < 0) throw ValidationError("--j-max must be >= 0");
  const Loaded p = load_pair(args);
  if (p.mu.empty() || p.nu.empty()) throw ValidationError("paraproducts need two nonempty measures");
  if (share_atom(p.mu, p.nu)) throw ValidationError("paraproducts need disjoint supports");
  ensure_directory(out_dir);
  const PairNormalization np = normalize_pair(p.mu, p.nu);
  const double K = stopping_threshold(pivotal_constant(np.mu, np.nu, unit_root(cfg.shifts.omega1), cfg.depth).pivotal);
  const ParaproductContext ctx = make_paraproduct_context(p.mu, p.nu, cfg.shifts, K, cfg.depth, GoodBadConfig{r, 40});
  const double cchi = sawyer_hilbert_constant(p.mu, p.nu, Direction::forward, cfg.delta).global;
  const ParaproductSummary ps = paraproduct_summary(ctx, cchi, j_max, args.seed);
  const CoronaSequences seq = carleson_sequences_corona(ctx, j_max);

  Json doc = header("paraproducts");
  doc["instance"] = instance_json(p.mu, p.nu);
  doc["config"] = to_json(cfg);
  doc["config"]["r"] = r;
  doc["config"]["j_max"] = j_max;
  doc["config"]["K"] = json_number(K);
  doc["cchi_forward"] = json_number(cchi);
  doc["corona"] = to_json(corona_summary(ctx.tree, K));
  doc["paraproducts"] = to_json(ps);
  Json files = Json::array({"b.csv"});
  write_file(join(out_dir, "b.csv"), carleson_csv(seq.b));
  for (std::size_t j = 0; j < seq.a.size(); ++j) {
    const std::string name = "a_" + std::to_string(j) + ".csv";
    write_file(join(out_dir, name), carleson_csv(seq.a[j]));
    files.push_back(name);
  }
  doc["files"] = std::move(files);
  doc["seeds"] = {{"shifts", args.seed}, {"test_function", args.seed}};
  write_file(join(out_dir, "paraproducts.json"), dump(doc));
  return ps.b_embedding_converged ? 0 : 2;
}

struct VerifyArgs {
  int r = 8;
  int j_max = 6;
  std::size_t necessity_samples = 64;
  bool no_ensembles = false;
  std::size_t ensemble_samples = 500;
  std::uint64_t ensemble_seed = 20240611;
};

int cmd_verify(const PairArgs& args, const VerifyArgs& v, const std::string& out) {
  VerifyConfig cfg;
  cfg.constants = args.constants();
  if (v.r < 1) throw ValidationError("--r must be >= 1");
  if (v.j_max < 0) throw ValidationError("--j-max must be >= 0");
  if (v.ensemble_samples == 0) throw ValidationError("--samples must be positive");
  cfg.goodness = GoodBadConfig{v.r, 40};
  cfg.j_max = v.j_max;
  cfg.necessity_samples = v.necessity_samples;
  cfg.seed = args.seed;
  cfg.ensembles = !v.no_ensembles;
  cfg.ensemble.samples = v.ensemble_samples;
  cfg.ensemble.seed = v.ensemble_seed;
  cfg.ensemble.r = v.r;
  const Loaded p = load_pair(args);
  const VerificationReport rep = full_report(p.mu, p.nu, cfg);
  const Json body = to_json(rep);

  Json doc = header("verify");
  doc["instance"] = instance_json(p.mu, p.nu);
  doc["config"] = to_json(cfg.constants);
  doc["config"]["r"] = v.r;
  doc["config"]["j_max"] = v.j_max;
  doc["config"]["necessity_samples"] = v.necessity_samples;
  doc["config"]["ensembles"] = cfg.ensembles;
  doc["config"]["ensemble_samples"] = v.ensemble_samples;
  doc["constants"] = body["constants"];
  doc["violated"] = body["violated"];
  doc["corona"] = body["corona"];
  doc["paraproducts"] = body["paraproducts"];
  doc["checks"] = body["checks"];
  doc["converged"] = rep.converged;
  doc["seeds"] = {{"shifts", args.seed}, {"report", cfg.seed}, {"ensemble", cfg.ensemble.seed}};
  write_file(out, dump(doc));
  return rep.converged ? 0 : 2;
}

int cmd_search(const ExplorerConfig& cfg, std::uint64_t shift_seed, const std::string& out_dir) {
  ensure_directory(out_dir);
  const SearchResult res = search(cfg);
  Json doc = header("search");
  doc["config"] = {{"constants", to_json(cfg.constants)},
                   {"population", cfg.population},
                   {"generations", cfg.generations},
                   {"top_k", cfg.top_k},
                   {"initial_atoms", cfg.initial_atoms},
                   {"max_atoms", cfg.max_atoms},
                   {"max_depth", cfg.max_depth},
                   {"rates",
                    {{"jitter", json_number(cfg.rates.jitter)},
                     {"rescale", json_number(cfg.rates.rescale)},
                     {"split_merge", json_number(cfg.rates.split_merge)},
                     {"cantor", json_number(cfg.rates.cantor)}}}};
  doc["note"] = "search output is numerical evidence only";
  Json best = Json::array();
  for (double b : res.best_score) best.push_back(json_number(b));
  doc["best_score"] = std::move(best);
  Json ranked = Json::array();
  for (std::size_t i = 0; i < res.ranked.size(); ++i) {
    const Candidate& c = res.ranked[i];
    const std::string stem = "candidate_" + std::to_string(i + 1);
    DiscreteMeasure mu = c.mu, nu = c.nu;
    mu.set_label(stem + "_mu");
    nu.set_label(stem + "_nu");
    write_file(join(out_dir, stem + "_mu.json"), serialize_measure(mu));
    write_file(join(out_dir, stem + "_nu.json"), serialize_measure(nu));
    Json entry = to_json(c);
    entry["rank"] = i + 1;
    ranked.push_back(std::move(entry));
  }
  doc["ranked"] = std::move(ranked);
  doc["seeds"] = {{"search", cfg.seed}, {"shifts", shift_seed}};
  write_file(join(out_dir, "summary.csv"), explorer_csv(res.ranked));
  write_file(join(out_dir, "search.json"), dump(doc));
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Two-weight Hilbert transform constants, corona decompositions and lemma checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::to_string(report_version));

  std::string out;
  PairArgs pair;

  CLI::App* analyze = app.add_subcommand("analyze", "constants report for a measure pair");
  pair.add(analyze);
  analyze->add_option("--out", out, "report path (JSON)")->required();

  CLI::App* corona = app.add_subcommand("corona", "stopping tree and packing");
  PairArgs corona_pair;
  corona_pair.add(corona);
  std::optional<double> K;
  corona->add_option("--K", K, "stopping threshold (default 4 * pivotal, 1 if that is 0)");
  corona->add_option("--out", out, "report path (JSON)")->required();

  CLI::App* goodbad = app.add_subcommand("goodbad", "bad-interval probability or bad-part sweeps");
  GoodBadArgs gb;
  goodbad->add_option("--r", gb.r, "r value or range a..b")->capture_default_str();
  goodbad->add_option("--samples", gb.samples, "Monte-Carlo samples per r")->capture_default_str();
  goodbad->add_option("--seed", gb.seed, "sweep seed")->capture_default_str();
  goodbad->add_option("--mode", gb.mode, "probability | epsilon")->capture_default_str();
  goodbad->add_option("--level", gb.level, "scale of the tested interval (probability)")->capture_default_str();
  goodbad->add_option("--point", gb.point, "point inside the tested interval (probability)")->capture_default_str();
  goodbad->add_option("--scale-cap", gb.scale_cap, "largest scale ratio examined")->capture_default_str();
  goodbad->add_option("--measure", gb.measure, "generator for the epsilon mode")->capture_default_str();
  goodbad->add_option("--out", out, "CSV path; configuration goes to <out>.json")->required();

  CLI::App* para = app.add_subcommand("paraproducts", "Carleson sequences and embedding constants");
  PairArgs para_pair;
  para_pair.add(para);
  int para_r = 8, para_j = 6;
  para->add_option("--r", para_r, "goodness parameter")->capture_default_str();
  para->add_option("--j-max", para_j, "largest generation gap")->capture_default_str();
  para->add_option("--out", out, "output directory")->required();

  CLI::App* verify = app.add_subcommand("verify", "full verification report");
  PairArgs verify_pair;
  verify_pair.add(verify);
  VerifyArgs va;
  verify->add_option("--r", va.r, "goodness parameter")->capture_default_str();
  verify->add_option("--j-max", va.j_max, "largest generation gap")->capture_default_str();
  verify->add_option("--necessity-samples", va.necessity_samples, "disc points per pair")->capture_default_str();
  verify->add_flag("--no-ensembles", va.no_ensembles, "skip the seeded lemma ensembles");
  verify->add_option("--samples", va.ensemble_samples, "samples per lemma ensemble")->capture_default_str();
  verify->add_option("--ensemble-seed", va.ensemble_seed, "seed of the lemma ensembles")->capture_default_str();
  verify->add_option("--out", out, "report path (JSON)")->required();

  CLI::App* srch = app.add_subcommand("search", "evolutionary search for large pivotal constants");
  ExplorerConfig ec;
  std::uint64_t shift_seed = 1;
  srch->add_option("--population", ec.population)->capture_default_str();
  srch->add_option("--generations", ec.generations)->capture_default_str();
  srch->add_option("--top-k", ec.top_k)->capture_default_str();
  srch->add_option("--initial-atoms", ec.initial_atoms)->capture_default_str();
  srch->add_option("--max-atoms", ec.max_atoms)->capture_default_str();
  srch->add_option("--max-depth", ec.max_depth)->capture_default_str();
  srch->add_option("--depth", ec.constants.depth)->capture_default_str();
  srch->add_option("--jitter", ec.rates.jitter)->capture_default_str();
  srch->add_option("--rescale", ec.rates.rescale)->capture_default_str();
  srch->add_option("--split-merge", ec.rates.split_merge)->capture_default_str();
  srch->add_option("--cantor", ec.rates.cantor)->capture_default_str();
  srch->add_option("--seed", ec.seed, "search seed")->capture_default_str();
  srch->add_option("--shift-seed", shift_seed, "seed of the lattice shifts")->capture_default_str();
  srch->add_option("--out", out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analyze) return cmd_analyze(pair, out);
    if (*corona) return cmd_corona(corona_pair, K, out);
    if (*goodbad) return cmd_goodbad(gb, out);
    if (*para) return cmd_paraproducts(para_pair, para_r, para_j, out);
    if (*verify) return cmd_verify(verify_pair, va, out);
    if (*srch) {
      ec.constants.shifts = sample_shift_pair(shift_seed);
      return cmd_search(ec, shift_seed, out);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace coronalab::cli
