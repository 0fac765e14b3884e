#include "raylat/error.hpp"
#include "raylat/unitlog.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace raylat;

namespace {

FieldDescriptor field(const std::string& name) {
  return load_field_file(std::string(RAYLAT_TEST_DATA) + "/" + name + ".json");
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST(Uq1, GaussianModThree) {
  Ring ring(field("qi"));
  Embeddings emb(ring, 128);
  RayContext ctx = compute_Uq1(ring, emb, parse_modulus(ring, "3:0:1"));
  EXPECT_EQ(ctx.r, 0);
  EXPECT_EQ(ctx.mu_q1, 1);
  EXPECT_EQ(ctx.unit_index, 4);
  EXPECT_EQ(ctx.phi, 8);
}

TEST(Uq1, RealQuadraticNarrow) {
  Ring ring(field("qsqrt2"));
  Embeddings emb(ring, 128);
  RayContext ctx = compute_Uq1(ring, emb, parse_modulus(ring, "unit"));
  ASSERT_EQ(ctx.generators.size(), 1u);
  // eta = (1 + sqrt2)^2 up to inversion
  AlgebraicInt eta = ctx.generators[0];
  EXPECT_TRUE(eta == (AlgebraicInt{Int(3), Int(2)}) || eta == (AlgebraicInt{Int(3), Int(-2)}));
  EXPECT_EQ(ctx.mu_q1, 1);
  EXPECT_EQ(ctx.free_index, 2);
  EXPECT_EQ(ctx.unit_index, 4);
}

TEST(Uq1, NoRealPlacesUnitModulusKeepsAllUnits) {
  for (const char* name : {"qi", "qsqrt-5"}) {
    FieldDescriptor fd = field(name);
    Ring ring(fd);
    Embeddings emb(ring, 128);
    RayContext ctx = compute_Uq1(ring, emb, parse_modulus(ring, "unit"));
    EXPECT_EQ(ctx.unit_index, 1) << name;
    EXPECT_EQ(ctx.mu_q1, fd.torsion_order) << name;
  }
}

TEST(Uq1, GeneratorsAreOneModQAndTotallyPositive) {
  for (auto [name, spec] : std::vector<std::pair<std::string, std::string>>{
           {"qsqrt2", "7:0:1"}, {"qsqrt2", "3:0:1"}, {"q7plus", "13:0:1"}, {"q7plus", "2:0:1"}, {"qcbrt2", "5:0:1"}}) {
    Ring ring(field(name));
    Modulus q = parse_modulus(ring, spec);
    RayContext ctx = make_ray_context(ring, q);
    Embeddings emb(ring, 128);
    for (const auto& eta : ctx.generators) {
      EXPECT_TRUE(ideal_contains(q.ideal, ring.sub(eta, ring.one()))) << name << " " << spec;
      for (int s : sign_vector(emb, eta)) EXPECT_EQ(s, 1);
      EXPECT_EQ(abs(ring.norm(eta)), 1);
    }
    for (const auto& mj : ctx.m) EXPECT_GE(mj, 1);
  }
}

TEST(Regulator, UnitLogsSumToZero) {
  for (const char* name : {"qsqrt2", "qsqrt5", "q7plus", "qcbrt2"}) {
    FieldDescriptor fd = field(name);
    Ring ring(fd);
    Embeddings emb(ring, 192);
    for (const auto& u : fd.units) {
      auto logs = emb.log_vector(u);
      Interval s(192);
      for (int i = 0; i < emb.places(); ++i) s += Interval(static_cast<long>(emb.weight(i)), 192) * logs[i];
      EXPECT_TRUE(s.contains_zero()) << name;
    }
  }
}

TEST(Regulator, RealQuadraticNarrowIsTwiceLogOfFundamentalUnit) {
  Ring ring(field("qsqrt2"));
  RayContext ctx = make_ray_context(ring, parse_modulus(ring, "unit"));
  Embeddings emb(ring, 128);
  Interval reg = q1_regulator(ring, emb, ctx);
  EXPECT_LT(rel(reg.mid(), 2 * std::log(1 + std::sqrt(2.0))), 1e-14);
  ASSERT_EQ(ctx.m.size(), 1u);
  EXPECT_EQ(ctx.m[0], 2);
}

TEST(Regulator, RankZeroIsOne) {
  Ring ring(field("qi"));
  Embeddings emb(ring, 128);
  Interval reg = q1_regulator(emb, {});
  EXPECT_TRUE(reg.contains(Int(1)));
  EXPECT_EQ(reg.width(), 0);
}

TEST(Regulator, RepeatedGeneratorIsRejected) {
  Ring ring(field("qsqrt2"));
  Embeddings emb(ring, 128);
  AlgebraicInt eta{Int(3), Int(2)};
  try {
    q1_regulator(emb, {emb.log_vector(eta), emb.log_vector(eta)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unitlog.dependent");
  }
}

TEST(Regulator, CubicMatchesFixtureHint) {
  FieldDescriptor fd = field("q7plus");
  Ring ring(fd);
  Embeddings emb(ring, 128);
  EXPECT_LT(rel(unit_regulator(emb, fd.units).mid(), 0.525454682122572), 1e-13);
}

TEST(RegulatorBound, SandwichAfterReduction) {
  for (auto [name, spec] : std::vector<std::pair<std::string, std::string>>{
           {"qsqrt2", "unit"}, {"qsqrt2", "7:0:1"}, {"qsqrt2", "3:0:1"}, {"q7plus", "unit"},
           {"q7plus", "13:0:1"}, {"q7plus", "2:0:1"}, {"qcbrt2", "unit"}, {"qsqrt5", "unit"}}) {
    FieldDescriptor fd = field(name);
    Ring ring(fd);
    RayContext ctx = make_ray_context(ring, parse_modulus(ring, spec));
    Embeddings emb(ring, 128);
    double reg = q1_regulator(ring, emb, ctx).mid();
    double r = ctx.r;
    double lower = reg / (std::pow(2.0, r) * std::pow(r + 1, (r - 1) / 2));
    double upper = std::pow(7.0, r) * std::pow(r + 1, r + 0.5) * std::pow(fd.degree, 2 * r) * reg;
    double prod = static_cast<double>(ctx.m_product());
    EXPECT_LE(lower, prod) << name << " " << spec;
    EXPECT_LE(prod, upper) << name << " " << spec;
  }
}

TEST(Domain, CoordinatesOfUnitAndScaledUnit) {
  Ring ring(field("qsqrt2"));
  RayContext ctx = make_ray_context(ring, parse_modulus(ring, "unit"));
  Embeddings emb(ring, 128);
  LogDomain dom(ring, emb, ctx);
  DomainCoordinates one = dom.coordinates(ring.one());
  EXPECT_EQ(one.exact_norm, 1);
  EXPECT_TRUE(one.alpha[0].contains(Int(0)));
  const AlgebraicInt& eta = ctx.generators[0];
  DomainCoordinates c = dom.coordinates(eta);
  EXPECT_EQ(c.exact_norm, 1);
  EXPECT_TRUE(c.alpha[0].contains(Int(1)));
  DomainCoordinates c3 = dom.coordinates(ring.scale(3, eta));
  EXPECT_EQ(c3.exact_norm, 9);
  EXPECT_TRUE(c3.alpha[0].contains(Int(1)));
}

TEST(Domain, ScalingFixesUnitCoordinates) {
  Ring ring(field("q7plus"));
  RayContext ctx = make_ray_context(ring, parse_modulus(ring, "unit"));
  Embeddings emb(ring, 128);
  LogDomain dom(ring, emb, ctx);
  AlgebraicInt x{Int(2), Int(-1), Int(3)};
  DomainCoordinates a = dom.coordinates(x);
  DomainCoordinates b = dom.coordinates(ring.scale(5, x));
  EXPECT_EQ(b.exact_norm, a.exact_norm * 125);
  for (std::size_t j = 0; j < a.alpha.size(); ++j) EXPECT_TRUE(a.alpha[j].overlaps(b.alpha[j]));
}

TEST(Domain, TwistValues) {
  Ring ring(field("qsqrt2"));
  RayContext ctx = make_ray_context(ring, parse_modulus(ring, "unit"));
  Embeddings emb(ring, 128);
  LogDomain dom(ring, emb, ctx);
  auto b0 = dom.beta_twist({Int(0)});
  for (const auto& b : b0) EXPECT_TRUE(b.contains(Int(1)));
  auto b1 = dom.beta_twist({Int(1)});
  // |3 + 2 sqrt2|^{-1/2} and |3 - 2 sqrt2|^{-1/2}, in embedding order
  double s = std::sqrt(2.0);
  double lo = std::min(b1[0].mid(), b1[1].mid());
  double hi = std::max(b1[0].mid(), b1[1].mid());
  EXPECT_LT(rel(lo, s - 1), 1e-14);
  EXPECT_LT(rel(hi, s + 1), 1e-14);
  EXPECT_TRUE((b1[0] * b1[1]).contains(Int(1)));
  try {
    dom.beta_twist({Int(2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unitlog.range");
  }
}

TEST(ClassNumber, RayClassNumbers) {
  struct Case {
    const char* name;
    const char* spec;
    long h;
  };
  for (const Case& c : {Case{"qi", "3:0:1", 2}, Case{"qi", "unit", 1}, Case{"qsqrt2", "unit", 1},
                        Case{"qsqrt-5", "unit", 2}}) {
    FieldDescriptor fd = field(c.name);
    Ring ring(fd);
    RayContext ctx = make_ray_context(ring, parse_modulus(ring, c.spec));
    EXPECT_EQ(ctx.ray_class_number, c.h) << c.name << " " << c.spec;
    if (fd.narrow_class_number) EXPECT_EQ(ctx.narrow_class_number, *fd.narrow_class_number);
  }
}

TEST(ClassNumber, MaintermIdentities) {
  for (auto [name, spec] : std::vector<std::pair<std::string, std::string>>{
           {"qi", "unit"}, {"qi", "3:0:1"}, {"qi", "5:0:1"}, {"qsqrt-5", "3:0:1"}, {"qsqrt2", "7:0:1"},
           {"qsqrt2", "3:0:1"}, {"q7plus", "13:0:1"}, {"q7plus", "2:0:1"}}) {
    FieldDescriptor fd = field(name);
    Ring ring(fd);
    RayContext ctx = make_ray_context(ring, parse_modulus(ring, spec));
    Embeddings emb(ring, 128);
    double rq = q1_regulator(ring, emb, ctx).mid();
    double rk = fd.unit_rank() == 0 ? 1.0 : unit_regulator(emb, fd.units).mid();
    double lhs = rq / rk;
    double rhs = to_double(Rational(ctx.mu_q1, fd.torsion_order)) * std::pow(2.0, fd.r1) * to_double(ctx.phi) *
                 to_double(fd.class_number) / to_double(ctx.ray_class_number);
    EXPECT_LT(rel(lhs, rhs), 1e-10) << name << " " << spec;
  }
}
