#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "coronalab/constants.hpp"
#include "coronalab/corona.hpp"
#include "coronalab/explorer.hpp"
#include "coronalab/goodbad.hpp"
#include "coronalab/harness.hpp"
#include "coronalab/measure.hpp"
#include "coronalab/paraproduct.hpp"

namespace coronalab {

using Json = nlohmann::ordered_json;

inline constexpr int report_version = 1;

/// Finite values as numbers, +-infinity as "inf" / "-inf", NaN as "nan".
Json json_number(double v);

/// Shortest decimal that reads back to the same binary64 (std::to_chars), with inf/nan
/// spelled as in json_number.
std::string format_number(double v);

Json to_json(const DiscreteMeasure& m);
Json to_json(const ShiftPair& s);
Json to_json(const DyadicInterval& iv);
Json to_json(const ConstantsConfig& c);
Json to_json(const ConstantsReport& c);
Json to_json(const StoppingTree& tree);
Json to_json(const CheckResult& c);
Json to_json(const CoronaSummary& c);
Json to_json(const ParaproductSummary& p);
Json to_json(const VerificationReport& r);
Json to_json(const Candidate& c);

/// {"mu": ..., "nu": ...} with both measures in full.
Json instance_json(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& doc);

/// Comma-separated rows under a header row, LF line endings, no quoting (cells must not
/// contain commas or newlines; ValidationError otherwise).
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  Csv& row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::size_t width_;
  std::string text_;
};

/// Columns scale, index, shift, left, right, weight; rows in interval order.
std::string carleson_csv(const CarlesonSequence& seq);

/// Columns r, estimate, stderr, N, seed.
std::string sweep_csv(const std::vector<std::pair<int, Estimate>>& rows);

/// Columns rank, score, opnorm, pq, cchi_forward, cchi_backward, pivotal_forward,
/// pivotal_backward, mu_atoms, nu_atoms, seed, lineage (mutations joined by '|').
std::string explorer_csv(const std::vector<Candidate>& ranked);

/// Writes bytes as given (binary mode). ValidationError when the file cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace coronalab
