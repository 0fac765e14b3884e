#include "raylat/algebra.hpp"
#include "raylat/error.hpp"
#include "raylat/fielddata.hpp"
#include "raylat/polynomial.hpp"

#include <gtest/gtest.h>

using namespace raylat;

namespace {

FieldDescriptor field(const std::string& name) { return load_field_file(std::string(RAYLAT_TEST_DATA) + "/" + name + ".json"); }

}  // namespace

TEST(FieldFile, FixturesParse) {
  for (const char* name : {"qi", "qsqrt-5", "qsqrt2", "qsqrt5", "q7plus", "qcbrt2"}) {
    FieldDescriptor fd = field(name);
    EXPECT_EQ(fd.r1 + 2 * fd.r2, fd.degree) << name;
  }
}

TEST(FieldFile, RoundTripsThroughSerialization) {
  for (const char* name : {"qi", "qsqrt5", "q7plus"}) {
    FieldDescriptor fd = field(name);
    EXPECT_EQ(parse_field_file(serialize_field(fd)), fd) << name;
  }
}

TEST(FieldFile, WrongDiscriminantIsRejected) {
  try {
    load_field_file(std::string(RAYLAT_TEST_DATA) + "/broken.json");
    FAIL() << "broken field accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "fielddata.discriminant");
  }
}

TEST(FieldFile, ValidationPassesForFixtures) {
  for (const char* name : {"qi", "qsqrt-5", "qsqrt2", "qsqrt5", "q7plus", "qcbrt2"}) {
    ValidationReport report = validate_field(field(name), 128);
    for (const auto& c : report.checks) EXPECT_TRUE(c.pass) << name << " " << c.name << ": " << c.witness;
  }
}

TEST(Ring, GaussianSplitting) {
  Ring ring(field("qi"));
  EXPECT_EQ(ring.primes_above(5).size(), 2u);
  auto three = ring.primes_above(3);
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(three[0].f, 2);
  auto two = ring.primes_above(2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].e, 2);
}

TEST(Ring, NormIsMultiplicative) {
  Ring ring(field("qcbrt2"));
  AlgebraicInt a{Int(1), Int(2), Int(-1)};
  AlgebraicInt b{Int(-3), Int(0), Int(5)};
  EXPECT_EQ(ring.norm(ring.mul(a, b)), ring.norm(a) * ring.norm(b));
}

TEST(Ideal, ConjugatePrimesMultiplyToTwo) {
  Ring ring(field("qi"));
  Ideal a = principal_ideal(ring, {Int(1), Int(1)});
  Ideal b = principal_ideal(ring, {Int(1), Int(-1)});
  EXPECT_EQ(ideal_mul(ring, a, b), principal_ideal(ring, ring.from_int(2)));
  EXPECT_EQ(a, b);
}

TEST(Ideal, PhiOfInertThree) {
  Ring ring(field("qi"));
  Modulus q = parse_modulus(ring, "3:0:1");
  EXPECT_EQ(phi_q(ring, q), 8);
  Modulus q2 = parse_modulus(ring, "5:0:2");
  EXPECT_EQ(phi_q(ring, q2), 20);
}

TEST(Ideal, CrtOneIsOneModQAndInC) {
  Ring ring(field("qsqrt-5"));
  auto p2 = ring.primes_above(2)[0].ideal;
  Modulus q = parse_modulus(ring, "3:0:1");
  AlgebraicInt a0 = crt_one(ring, p2, q.ideal);
  EXPECT_TRUE(ideal_contains(p2, a0));
  EXPECT_TRUE(ideal_contains(q.ideal, ring.sub(a0, ring.one())));
}

TEST(Ideal, AdjointTimesIdealIsNorm) {
  Ring ring(field("qsqrt-5"));
  Ideal p = ring.primes_above(3)[0].ideal;
  EXPECT_EQ(ideal_mul(ring, p, ideal_adjoint(ring, p)), principal_ideal(ring, ring.from_int(3)));
}

TEST(Polynomial, FactorModPMatchesDegree) {
  IntPoly f{Int(-2), Int(0), Int(0), Int(1)};
  for (long p : {5L, 7L, 11L, 31L}) {
    auto factors = factor_mod_p(f, p);
    int total = 0;
    for (const auto& fac : factors) total += fac.multiplicity * static_cast<int>(fac.factor.size() - 1);
    EXPECT_EQ(total, 3) << p;
  }
}
