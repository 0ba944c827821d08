#include "coronalab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coronalab/errors.hpp"
#include "coronalab/rng.hpp"

namespace coronalab {

using json = nlohmann::ordered_json;

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, std::string label)
    : label_(std::move(label)) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.x)) throw ValidationError("atom position is not finite");
    if (!std::isfinite(a.w) || !(a.w > 0.0)) {
      throw ValidationError("atom weight must be finite and > 0");
    }
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.x < b.x; });
  x_.reserve(atoms.size());
  w_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!x_.empty() && x_.back() == a.x) {
      w_.back() += a.w;
    } else {
      x_.push_back(a.x);
      w_.push_back(a.w);
    }
  }
  total_ = mass(0, w_.size());
}

std::vector<Atom> DiscreteMeasure::atoms() const {
  std::vector<Atom> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = {x_[i], w_[i]};
  return out;
}

std::pair<std::size_t, std::size_t> DiscreteMeasure::range(const Interval& iv) const {
  if (iv.empty()) return {0, 0};
  auto first = iv.lo_closed ? std::lower_bound(x_.begin(), x_.end(), iv.lo)
                            : std::upper_bound(x_.begin(), x_.end(), iv.lo);
  auto last = iv.hi_closed ? std::upper_bound(x_.begin(), x_.end(), iv.hi)
                           : std::lower_bound(x_.begin(), x_.end(), iv.hi);
  if (last < first) last = first;
  return {static_cast<std::size_t>(first - x_.begin()),
          static_cast<std::size_t>(last - x_.begin())};
}

std::pair<std::size_t, std::size_t> DiscreteMeasure::range_half_open(double lo, double hi) const {
  return range(Interval::half_open(lo, hi));
}

double DiscreteMeasure::mass(const Interval& iv) const {
  const auto [a, b] = range(iv);
  return mass(a, b);
}

double DiscreteMeasure::mass(std::size_t first, std::size_t last) const {
  double s = 0.0;
  for (std::size_t i = first; i < last; ++i) s += w_[i];
  return s;
}

DiscreteMeasure DiscreteMeasure::affine_image(double scale, double offset) const {
  if (!(scale > 0.0)) throw ValidationError("affine scale must be > 0");
  DiscreteMeasure out;
  out.label_ = label_;
  out.x_.resize(size());
  out.w_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.x_[i] = scale * x_[i] + offset;
    out.w_[i] = scale * w_[i];
  }
  // Rounding cannot reorder (monotone map) but may merge neighbours; rebuild if so.
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out.x_[i] == out.x_[i - 1]) return DiscreteMeasure(out.atoms(), label_);
  }
  out.total_ = out.mass(0, out.size());
  return out;
}

DiscreteMeasure DiscreteMeasure::scaled(double c) const {
  if (!(c > 0.0)) throw ValidationError("weight factor must be > 0");
  DiscreteMeasure out = *this;
  for (double& w : out.w_) w *= c;
  out.total_ = out.mass(0, out.size());
  return out;
}

DiscreteMeasure DiscreteMeasure::restricted(const Interval& iv) const {
  const auto [a, b] = range(iv);
  DiscreteMeasure out;
  out.label_ = label_;
  out.x_.assign(x_.begin() + a, x_.begin() + b);
  out.w_.assign(w_.begin() + a, w_.begin() + b);
  out.total_ = out.mass(0, out.size());
  return out;
}

bool DiscreteMeasure::has_atom_at(double x) const {
  return std::binary_search(x_.begin(), x_.end(), x);
}

bool share_atom(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::size_t i = 0, j = 0;
  while (i < mu.size() && j < nu.size()) {
    if (mu.x(i) == nu.x(j)) return true;
    if (mu.x(i) < nu.x(j)) ++i; else ++j;
  }
  return false;
}

std::vector<double> combined_support(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<double> u;
  u.reserve(mu.size() + nu.size());
  std::merge(mu.positions().begin(), mu.positions().end(), nu.positions().begin(),
             nu.positions().end(), std::back_inserter(u));
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

// --- WeightedFunction -------------------------------------------------------------------

WeightedFunction::WeightedFunction(const DiscreteMeasure& base, std::vector<double> values)
    : base_(&base), values_(std::move(values)) {
  if (values_.size() != base.size()) {
    throw ValidationError("function length does not match atom count");
  }
}

WeightedFunction WeightedFunction::zero(const DiscreteMeasure& base) {
  return WeightedFunction(base, std::vector<double>(base.size(), 0.0));
}

WeightedFunction WeightedFunction::constant(const DiscreteMeasure& base, double c) {
  return WeightedFunction(base, std::vector<double>(base.size(), c));
}

double WeightedFunction::norm_sq() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * values_[i] * base_->w(i);
  return s;
}

double WeightedFunction::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * base_->w(i);
  return s;
}

double WeightedFunction::sup_abs() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

void WeightedFunction::require_base(const DiscreteMeasure& m) const {
  if (&m != base_ && !(m == *base_)) throw ValidationError("function lives on a different measure");
}

// --- canonical intervals ----------------------------------------------------------------

CanonicalIntervals canonical_intervals(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  CanonicalIntervals out;
  out.support = combined_support(mu, nu);
  const auto& u = out.support;
  const std::size_t m = u.size();
  if (m == 0) throw ValidationError("canonical intervals need at least one atom");
  // Delimiters d_0 < u_0 < d_1 < ... < u_{m-1} < d_m.
  std::vector<double> d(m + 1);
  double pad = 0.5;
  if (m > 1) {
    pad = u[1] - u[0];
    for (std::size_t i = 1; i + 1 < m; ++i) pad = std::min(pad, u[i + 1] - u[i]);
    pad *= 0.5;
  }
  d[0] = u[0] - pad;
  d[m] = u[m - 1] + pad;
  for (std::size_t i = 1; i < m; ++i) d[i] = u[i - 1] + 0.5 * (u[i] - u[i - 1]);
  out.subset.reserve(m * (m + 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) out.subset.push_back(Interval::open(d[i], d[j + 1]));
  }
  out.tight.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) out.tight.push_back(Interval::closed(u[i], u[j]));
  }
  return out;
}

// --- generators -------------------------------------------------------------------------

namespace {

double param(const GeneratorSpec& s, const std::string& key, double fallback) {
  auto it = s.params.find(key);
  return it == s.params.end() ? fallback : it->second;
}

long count_param(const GeneratorSpec& s, const std::string& key, double fallback, long lo,
                 long hi) {
  const double v = param(s, key, fallback);
  if (!(v >= static_cast<double>(lo) && v <= static_cast<double>(hi)) || v != std::floor(v)) {
    throw ValidationError(s.id + ": parameter '" + key + "' out of range");
  }
  return static_cast<long>(v);
}

void require_order(const GeneratorSpec& s, double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ValidationError(s.id + ": need lo < hi");
  }
}

}  // namespace

GeneratorSpec GeneratorSpec::parse(const std::string& text, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.seed = seed;
  const auto colon = text.find(':');
  spec.id = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("generator parameter without '=': " + item);
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
      throw ValidationError("generator parameter is not a number: " + item);
    }
    spec.params[key] = v;
  }
  return spec;
}

std::string GeneratorSpec::to_string() const {
  std::string s = id;
  char sep = ':';
  for (const auto& [k, v] : params) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    s += sep + k + "=" + os.str();
    sep = ',';
  }
  return s;
}

DiscreteMeasure generate_measure(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  std::vector<Atom> atoms;
  if (spec.id == "uniform-random") {
    const long n = count_param(spec, "n", 16, 1, 1 << 22);
    const double lo = param(spec, "lo", 0.0), hi = param(spec, "hi", 1.0);
    const double sigma = param(spec, "sigma", 1.0);
    require_order(spec, lo, hi);
    if (!(sigma >= 0.0)) throw ValidationError("uniform-random: sigma must be >= 0");
    for (long i = 0; i < n; ++i) {
      const double x = rng.uniform(lo, hi);
      atoms.push_back({x, std::exp(sigma * rng.normal())});
    }
  } else if (spec.id == "lacunary") {
    const long n = count_param(spec, "n", 8, 1, 1000);
    const double w = param(spec, "w", 1.0);
    for (long k = 1; k <= n; ++k) atoms.push_back({std::ldexp(1.0, static_cast<int>(-k)), w});
  } else if (spec.id == "cantor") {
    const long depth = count_param(spec, "depth", 4, 0, 24);
    const double lo = param(spec, "lo", 0.0), hi = param(spec, "hi", 1.0);
    require_order(spec, lo, hi);
    // Left endpoints of the depth-d construction: sums of 2*3^-k over chosen digits.
    const std::size_t count = std::size_t{1} << depth;
    const double w = std::ldexp(1.0, static_cast<int>(-depth));
    for (std::size_t code = 0; code < count; ++code) {
      double x = 0.0, third = 1.0;
      for (long k = depth - 1; k >= 0; --k) {
        third /= 3.0;
        if ((code >> k) & 1U) x += 2.0 * third;
      }
      atoms.push_back({lo + (hi - lo) * x, w});
    }
  } else if (spec.id == "single-atom") {
    atoms.push_back({param(spec, "x", 0.0), param(spec, "w", 1.0)});
  } else if (spec.id == "adversarial-clustered") {
    // Clusters whose atoms sit at geometrically shrinking offsets: many scales at once,
    // with heavy and light atoms interleaved.
    const long clusters = count_param(spec, "clusters", 3, 1, 10000);
    const long per = count_param(spec, "per", 8, 1, 10000);
    const long levels = count_param(spec, "levels", 4, 1, 40);
    const double lo = param(spec, "lo", 0.0), hi = param(spec, "hi", 1.0);
    const double spread = param(spec, "spread", 0.05);
    require_order(spec, lo, hi);
    if (!(spread > 0.0)) throw ValidationError("adversarial-clustered: spread must be > 0");
    for (long c = 0; c < clusters; ++c) {
      const double center = rng.uniform(lo, hi);
      const double heavy = std::exp(2.0 * rng.normal());
      for (long i = 0; i < per; ++i) {
        const double level = static_cast<double>(rng.index(static_cast<std::size_t>(levels)));
        const double offset = spread * (hi - lo) * std::pow(0.1, level) * rng.uniform(-1.0, 1.0);
        const double w = (i % 2 == 0 ? heavy : 1.0) * std::exp(0.5 * rng.normal());
        atoms.push_back({center + offset, w});
      }
    }
  } else {
    throw ValidationError("unknown generator id: " + spec.id);
  }
  return DiscreteMeasure(std::move(atoms), spec.to_string());
}

// --- file format ------------------------------------------------------------------------

namespace {

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Byte offset of the k-th element of the "atoms" array; a small scan that skips strings.
std::size_t atom_offset(const std::string& text, std::size_t k) {
  const auto key = text.find("\"atoms\"");
  if (key == std::string::npos) return 0;
  std::size_t pos = text.find('[', key);
  if (pos == std::string::npos) return key;
  int depth = 0;
  std::size_t element = 0;
  bool in_string = false;
  for (std::size_t i = pos + 1; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') { in_string = true; continue; }
    if (depth == 0 && c == '{' && element == k) return i;
    if (c == '{' || c == '[') ++depth;
    else if (c == '}' || c == ']') {
      if (depth == 0) return i;
      --depth;
    } else if (c == ',' && depth == 0) {
      ++element;
    }
  }
  return pos;
}

}  // namespace

DiscreteMeasure parse_measure(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("measure file: ") + e.what(), line_of_offset(text, e.byte));
  }
  if (!doc.is_object()) throw ParseError("measure file: top level must be an object", 1);
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) {
      throw ParseError("measure file: label must be a string",
                       line_of_offset(text, text.find("\"label\"")));
    }
    label = doc["label"].get<std::string>();
  }
  if (!doc.contains("atoms") || !doc["atoms"].is_array()) {
    throw ParseError("measure file: missing atoms array", line_of_offset(text, text.find("\"atoms\"")));
  }
  std::vector<Atom> atoms;
  const auto& arr = doc["atoms"];
  atoms.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto& a = arr[k];
    if (!a.is_object() || !a.contains("x") || !a.contains("w") || !a["x"].is_number() ||
        !a["w"].is_number()) {
      throw ParseError("measure file: atom " + std::to_string(k) + " needs numeric x and w",
                       line_of_offset(text, atom_offset(text, k)));
    }
    const double w = a["w"].get<double>();
    if (!(w > 0.0)) {
      throw ValidationError("measure file: atom " + std::to_string(k) + " (line " +
                            std::to_string(line_of_offset(text, atom_offset(text, k))) +
                            ") has nonpositive weight");
    }
    atoms.push_back({a["x"].get<double>(), w});
  }
  return DiscreteMeasure(std::move(atoms), std::move(label));
}

DiscreteMeasure load_measure(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open measure file: " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_measure(ss.str());
}

std::string serialize_measure(const DiscreteMeasure& m) {
  json doc;
  doc["label"] = m.label();
  json atoms = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) atoms.push_back({{"x", m.x(i)}, {"w", m.w(i)}});
  doc["atoms"] = std::move(atoms);
  return doc.dump(1) + "\n";
}

void save_measure(const DiscreteMeasure& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << serialize_measure(m);
}

PairNormalization normalize_pair(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const auto u = combined_support(mu, nu);
  if (u.empty()) throw ValidationError("cannot normalize two empty measures");
  PairNormalization out;
  const double a = u.front(), b = u.back();
  auto map = [&](const DiscreteMeasure& m) {
    std::vector<Atom> atoms = m.atoms();
    for (Atom& t : atoms) {
      if (a == b) {
        t.x = 0.5;
      } else {
        t.x = 0.25 + 0.5 * ((t.x - a) / (b - a));
        t.w *= 0.5 / (b - a);
      }
    }
    return DiscreteMeasure(std::move(atoms), m.label());
  };
  out.mu = map(mu);
  out.nu = map(nu);
  out.scale = a == b ? 1.0 : 0.5 / (b - a);
  out.offset = a == b ? 0.5 - a : 0.25 - out.scale * a;
  return out;
}

}  // namespace coronalab
