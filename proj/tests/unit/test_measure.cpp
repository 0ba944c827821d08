#include "coronalab/measure.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "coronalab/errors.hpp"
#include "coronalab/rng.hpp"
#include "oracles.hpp"

using namespace coronalab;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("coronalab_" + name);
  std::ofstream(path, std::ios::binary) << body;
  return path.string();
}

}  // namespace

TEST(Measure, LoadSumsMass) {
  const auto m = load_measure(temp_file("m1.json", R"({"label":"a","atoms":[{"x":0,"w":1},{"x":1,"w":2}]})"));
  EXPECT_EQ(m.size(), 2u);
  EXPECT_DOUBLE_EQ(m.total_mass(), 3.0);
  EXPECT_EQ(m.label(), "a");
}

TEST(Measure, LoadSortsAscending) {
  const auto m = load_measure(temp_file("m2.json", R"({"label":"b","atoms":[{"x":1,"w":1},{"x":0,"w":1}]})"));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.x(0), 0.0);
  EXPECT_EQ(m.x(1), 1.0);
}

TEST(Measure, LoadMergesDuplicates) {
  const auto m = load_measure(temp_file("m3.json", R"({"label":"c","atoms":[{"x":0,"w":1},{"x":0,"w":2}]})"));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.x(0), 0.0);
  EXPECT_DOUBLE_EQ(m.w(0), 3.0);
}

TEST(Measure, MalformedFileReportsLine) {
  const std::string body = "{\n  \"label\": \"x\",\n  \"atoms\": [\n    {\"x\": 0, \"w\": }\n  ]\n}\n";
  try {
    parse_measure(body);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Measure, NonpositiveWeightRejected) {
  EXPECT_THROW(parse_measure(R"({"label":"x","atoms":[{"x":0,"w":0}]})"), ValidationError);
  EXPECT_THROW(parse_measure(R"({"label":"x","atoms":[{"x":0,"w":-1}]})"), ValidationError);
  EXPECT_THROW(DiscreteMeasure({{0.0, std::nan("")}}), ValidationError);
}

TEST(Measure, SerializeRoundTrip) {
  Rng rng(3);
  DiscreteMeasure m = oracle::random_measure(rng, 17);
  m.set_label("rt");
  const DiscreteMeasure back = parse_measure(serialize_measure(m));
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.label(), "rt");
}

TEST(Measure, GeneratorSingleAtom) {
  const auto m = generate_measure(GeneratorSpec::parse("single-atom:x=0,w=1", 0));
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.x(0), 0.0);
  EXPECT_EQ(m.w(0), 1.0);
}

TEST(Measure, GeneratorLacunary) {
  const auto m = generate_measure(GeneratorSpec::parse("lacunary:n=3", 0));
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m.x(0), 0.125);
  EXPECT_EQ(m.x(1), 0.25);
  EXPECT_EQ(m.x(2), 0.5);
}

TEST(Measure, GeneratorCantorDepthTwo) {
  const auto m = generate_measure(GeneratorSpec::parse("cantor:depth=2", 0));
  ASSERT_EQ(m.size(), 4u);
  const double expect[] = {0.0, 2.0 / 9.0, 2.0 / 3.0, 8.0 / 9.0};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(m.x(i), expect[i], 1e-15);
    EXPECT_DOUBLE_EQ(m.w(i), 0.25);
  }
}

TEST(Measure, GeneratorsReproducible) {
  for (const char* spec : {"uniform-random:n=40", "adversarial-clustered:clusters=3,per=5", "cantor:depth=4"}) {
    EXPECT_EQ(generate_measure(GeneratorSpec::parse(spec, 99)), generate_measure(GeneratorSpec::parse(spec, 99)))
        << spec;
  }
  EXPECT_FALSE(generate_measure(GeneratorSpec::parse("uniform-random:n=40", 1)) ==
               generate_measure(GeneratorSpec::parse("uniform-random:n=40", 2)));
}

TEST(Measure, GeneratorRejectsUnknown) {
  EXPECT_THROW(generate_measure(GeneratorSpec::parse("nope:n=3", 0)), ValidationError);
  EXPECT_THROW(generate_measure(GeneratorSpec::parse("lacunary:n=0", 0)), ValidationError);
}

TEST(Measure, MassWithEndpointFlags) {
  const DiscreteMeasure m({{0.0, 1.0}, {1.0, 2.0}});
  EXPECT_EQ(m.mass(Interval::closed(0.0, 0.5)), 1.0);
  EXPECT_EQ(m.mass(Interval::open(0.0, 1.0)), 0.0);
  EXPECT_EQ(m.mass(Interval::closed(2.0, 1.0)), 0.0);
  EXPECT_EQ(m.mass(Interval::half_open(0.0, 1.0)), 1.0);
  EXPECT_EQ(m.mass(Interval::closed(0.0, 1.0)), 3.0);
}

TEST(Measure, MassMatchesDirectSum) {
  Rng rng(11);
  const DiscreteMeasure m = oracle::random_measure(rng, 50);
  for (int k = 0; k < 200; ++k) {
    double a = rng.uniform(-0.1, 1.1), b = rng.uniform(-0.1, 1.1);
    if (a > b) std::swap(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m.x(i) >= a && m.x(i) <= b) s += m.w(i);
    EXPECT_NEAR(m.mass(Interval::closed(a, b)), s, 1e-12 * m.total_mass());
  }
}

TEST(Measure, CanonicalIntervalCounts) {
  const DiscreteMeasure mu({{0.0, 1.0}}), nu({{1.0, 1.0}});
  const auto c = canonical_intervals(mu, nu);
  ASSERT_EQ(c.tight.size(), 1u);
  EXPECT_EQ(c.tight[0].lo, 0.0);
  EXPECT_EQ(c.tight[0].hi, 1.0);
  Rng rng(5);
  for (std::size_t n : {1u, 4u, 9u}) {
    const auto a = oracle::random_measure(rng, n), b = oracle::random_measure(rng, n + 2);
    const std::size_t m = combined_support(a, b).size();
    const auto ci = canonical_intervals(a, b);
    EXPECT_EQ(ci.subset.size(), m * (m + 1) / 2);
    EXPECT_EQ(ci.tight.size(), m * (m - 1) / 2);
  }
}

TEST(Measure, SubsetIntervalsHoldTheirRuns) {
  Rng rng(8);
  const auto a = oracle::random_measure(rng, 5), b = oracle::random_measure(rng, 6);
  const auto ci = canonical_intervals(a, b);
  const std::size_t m = ci.support.size();
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j, ++k) {
      for (std::size_t t = 0; t < m; ++t) EXPECT_EQ(ci.subset[k].contains(ci.support[t]), t >= i && t <= j);
    }
}

TEST(Measure, AffineImageScalesDensity) {
  const DiscreteMeasure m({{0.0, 1.0}, {2.0, 3.0}});
  const DiscreteMeasure im = m.affine_image(0.5, 1.0);
  EXPECT_EQ(im.x(0), 1.0);
  EXPECT_EQ(im.x(1), 2.0);
  EXPECT_EQ(im.w(0), 0.5);
  EXPECT_EQ(im.w(1), 1.5);
}

TEST(Measure, CommonAtomDetection) {
  const DiscreteMeasure a({{0.0, 1.0}, {1.0, 1.0}}), b({{1.0, 2.0}}), c({{0.5, 1.0}});
  EXPECT_TRUE(share_atom(a, b));
  EXPECT_FALSE(share_atom(a, c));
}

TEST(Measure, NormalizePairMapsHullToMiddle) {
  const DiscreteMeasure a({{-3.0, 1.0}, {1.0, 1.0}}), b({{5.0, 2.0}});
  const auto np = normalize_pair(a, b);
  EXPECT_EQ(np.mu.x(0), 0.25);
  EXPECT_EQ(np.nu.x(0), 0.75);
  EXPECT_DOUBLE_EQ(np.mu.w(0), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(np.nu.w(0), 2.0 / 16.0);
}
