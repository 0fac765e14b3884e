#include "raylat/error.hpp"
#include "raylat/oracle.hpp"
#include "raylat/unitlog.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace raylat;

namespace {

FieldDescriptor field(const std::string& name) {
  return load_field_file(std::string(RAYLAT_TEST_DATA) + "/" + name + ".json");
}

std::vector<Int> norms(const IdealCensus& c) {
  std::vector<Int> out;
  for (const auto& e : c.entries) out.push_back(e.ideal.norm);
  return out;
}

AlgebraicInt gauss(long a, long b) { return {Int(a), Int(b)}; }

std::set<std::set<std::string>> partition(const IdealCensus& c) {
  std::map<int, std::set<std::string>> by;
  for (const auto& e : c.entries) {
    if (e.bucket >= 0) by[e.bucket].insert(ideal_string(e.ideal));
  }
  std::set<std::set<std::string>> out;
  for (auto& [k, v] : by) out.insert(v);
  return out;
}

}  // namespace

TEST(Census, SmallBounds) {
  Ring qi(field("qi"));
  EXPECT_EQ(norms(enumerate_ideals(qi, Int(10))), (std::vector<Int>{1, 2, 4, 5, 5, 8, 9, 10, 10}));
  EXPECT_EQ(norms(enumerate_ideals(qi, Int(1))), (std::vector<Int>{1}));
  Ring s2(field("qsqrt2"));
  EXPECT_EQ(norms(enumerate_ideals(s2, Int(7))), (std::vector<Int>{1, 2, 4, 7, 7}));
}

TEST(Census, GaussianIdealsMatchElementsUpToAssociates) {
  Ring ring(field("qi"));
  const long X = 600;
  IdealCensus c = enumerate_ideals(ring, Int(X));
  // Every nonzero Gaussian integer has exactly one associate with a > 0, b >= 0.
  std::map<long, long> brute;
  for (long a = 1; a * a <= X; ++a) {
    for (long b = 0; a * a + b * b <= X; ++b) ++brute[a * a + b * b];
  }
  std::map<long, long> census;
  std::set<std::string> seen;
  for (const auto& e : c.entries) {
    ++census[to_i64(e.ideal.norm)];
    EXPECT_TRUE(seen.insert(ideal_string(e.ideal)).second);
  }
  brute[1] = 1;
  EXPECT_EQ(census, brute);
}

TEST(Census, TsvExport) {
  Ring ring(field("qi"));
  IdealCensus c = enumerate_ideals(ring, Int(2));
  std::string tsv = census_tsv(c);
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "norm\thnf\tbucket");
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 3);
}

TEST(Oracle, GeneratorsGenerate) {
  for (const char* name : {"qi", "qsqrt2", "q7plus", "qsqrt5"}) {
    Ring ring(field(name));
    RayOracle oracle(ring, parse_modulus(ring, "unit"));
    for (const auto& e : enumerate_ideals(ring, Int(200)).entries) {
      auto g = oracle.find_generator(e.ideal);
      ASSERT_TRUE(g.has_value()) << name << " " << ideal_string(e.ideal);
      EXPECT_EQ(principal_ideal(ring, *g), e.ideal);
    }
  }
}

TEST(Oracle, NonPrincipalIdeal) {
  Ring ring(field("qsqrt-5"));
  RayOracle oracle(ring, parse_modulus(ring, "unit"));
  Ideal p2 = ideal_from_generators(ring, {ring.from_int(2), gauss(1, 1)});
  EXPECT_EQ(p2.norm, 2);
  EXPECT_FALSE(oracle.principal(p2));
  EXPECT_TRUE(oracle.principal(ideal_mul(ring, p2, p2)));
  EXPECT_EQ(oracle.wide_representatives().size(), 2u);
}

TEST(Oracle, GaussianModThreeEquivalences) {
  Ring ring(field("qi"));
  RayOracle oracle(ring, parse_modulus(ring, "3:0:1"));
  Ideal one = unit_ideal(2);
  EXPECT_TRUE(oracle.ray_equivalent(one, one));
  EXPECT_TRUE(oracle.ray_equivalent(principal_ideal(ring, gauss(3, 1)), one));
  EXPECT_FALSE(oracle.ray_equivalent(principal_ideal(ring, gauss(1, 1)), one));
  EXPECT_EQ(oracle.group_order(), 8u);
  EXPECT_EQ(oracle.unit_image_order(), 4u);
  try {
    oracle.invariant(principal_ideal(ring, ring.from_int(3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "oracle.coprime");
  }
}

TEST(Classify, BucketExamples) {
  {
    Ring ring(field("qi"));
    RayOracle oracle(ring, parse_modulus(ring, "3:0:1"));
    IdealCensus c = enumerate_ideals(ring, Int(10));
    classify(oracle, c);
    EXPECT_EQ(empirical_hKq(c), 2);
    EXPECT_EQ(bucket_counts(c, 0, {Int(10)})[0], 4);
    EXPECT_EQ(bucket_counts(c, 1, {Int(10)})[0], 4);
  }
  {
    Ring ring(field("qi"));
    RayOracle oracle(ring, parse_modulus(ring, "unit"));
    IdealCensus c = enumerate_ideals(ring, Int(10));
    classify(oracle, c);
    EXPECT_EQ(empirical_hKq(c), 1);
  }
  {
    Ring ring(field("qsqrt-5"));
    RayOracle oracle(ring, parse_modulus(ring, "unit"));
    IdealCensus c = enumerate_ideals(ring, Int(25));
    classify(oracle, c);
    EXPECT_EQ(empirical_hKq(c), 2);
  }
}

TEST(Classify, MatchesClassNumberFormulaAndBounds) {
  for (auto [name, spec] : std::vector<std::pair<std::string, std::string>>{
           {"qi", "unit"}, {"qi", "5:0:1"}, {"qi", "3:0:1"}, {"qsqrt-5", "unit"}, {"qsqrt-5", "3:0:1"},
           {"qsqrt-5", "11:0:1"}, {"qsqrt2", "unit"}, {"qsqrt2", "7:0:1"}, {"qsqrt2", "3:0:1"},
           {"q7plus", "unit"}, {"q7plus", "13:0:1"}, {"q7plus", "2:0:1"}, {"qsqrt5", "unit"}}) {
    Ring ring(field(name));
    Modulus q = parse_modulus(ring, spec);
    RayContext ctx = make_ray_context(ring, q);
    RayOracle oracle(ring, q);
    IdealCensus c = enumerate_ideals(ring, Int(2000));
    classify(oracle, c);
    EXPECT_EQ(empirical_hKq(c), ctx.ray_class_number) << name << " " << spec;
    EXPECT_LE(ctx.narrow_class_number, empirical_hKq(c));
    EXPECT_LE(empirical_hKq(c), ctx.phi * ctx.narrow_class_number);
  }
}

TEST(Classify, OrderIndependent) {
  Ring ring(field("qsqrt2"));
  RayOracle oracle(ring, parse_modulus(ring, "7:0:1"));
  IdealCensus c = enumerate_ideals(ring, Int(400));
  classify(oracle, c);
  IdealCensus shuffled = c;
  std::mt19937 rng(99);
  std::shuffle(shuffled.entries.begin(), shuffled.entries.end(), rng);
  classify(oracle, shuffled);
  EXPECT_EQ(partition(c), partition(shuffled));
}

TEST(Classify, EquivalenceRelationSpotChecks) {
  Ring ring(field("q7plus"));
  RayOracle oracle(ring, parse_modulus(ring, "13:0:1"));
  IdealCensus c = enumerate_ideals(ring, Int(300));
  std::vector<Ideal> pool;
  for (const auto& e : c.entries) {
    if (coprime(e.ideal, oracle.modulus().ideal)) pool.push_back(e.ideal);
  }
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const Ideal& a = pool[pick(rng)];
    const Ideal& b = pool[pick(rng)];
    const Ideal& d = pool[pick(rng)];
    EXPECT_TRUE(oracle.ray_equivalent(a, a));
    EXPECT_EQ(oracle.ray_equivalent(a, b), oracle.ray_equivalent(b, a));
    if (oracle.ray_equivalent(a, b) && oracle.ray_equivalent(b, d)) EXPECT_TRUE(oracle.ray_equivalent(a, d));
    // Multiplying both sides by the same ideal preserves equivalence.
    if (oracle.ray_equivalent(a, b)) {
      EXPECT_TRUE(oracle.ray_equivalent(ideal_mul(ring, a, d), ideal_mul(ring, b, d)));
    }
  }
}

TEST(Classify, InverseClassRepresentative) {
  Ring ring(field("qsqrt-5"));
  Modulus q = parse_modulus(ring, "3:0:1");
  RayOracle oracle(ring, q);
  IdealCensus c = enumerate_ideals(ring, Int(200));
  classify(oracle, c);
  Ideal one = unit_ideal(2);
  for (std::size_t rep : c.representatives) {
    const Ideal& b = c.entries[rep].ideal;
    Ideal inv = inverse_class_representative(oracle, c, b);
    EXPECT_TRUE(oracle.ray_equivalent(ideal_mul(ring, b, inv), one));
  }
}
