#include "raylat/error.hpp"
#include "raylat/latcount.hpp"
#include "raylat/matrix.hpp"
#include "support/brute_force.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace raylat;
using namespace raylat::brute;

namespace {

FieldDescriptor field(const std::string& name) {
  return load_field_file(std::string(RAYLAT_TEST_DATA) + "/" + name + ".json");
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST(Kz, IdentityLatticeAndRankOne) {
  KzResult z2 = kz_basis(Lattice::from_integer({{Int(1), Int(0)}, {Int(1), Int(1)}}));
  for (const auto& row : *z2.lattice.exact) EXPECT_EQ(norm2(row), 1);

  KzResult one = kz_basis(Lattice::from_integer({{Int(3)}}));
  EXPECT_EQ((*one.lattice.exact)[0][0] * (*one.lattice.exact)[0][0], 9);
}

TEST(Kz, InequalityAndShortestVectorOnRandomLattices) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    int rank = 1 + trial % 4;
    IntMatrix b = random_basis(rng, rank, 12);
    KzResult kz = kz_basis(Lattice::from_integer(b));
    const IntMatrix& e = *kz.lattice.exact;
    EXPECT_TRUE(kz_inequality_exact(e)) << "trial " << trial;
    EXPECT_EQ(abs(determinant(kz.transform)), 1);
    EXPECT_EQ(abs(determinant(e)), abs(determinant(b)));
    if (rank <= 3) EXPECT_EQ(norm2(e[0]), brute_shortest_squared(b)) << "trial " << trial;
  }
}

TEST(Kz, UnitLogLattices) {
  for (auto [name, spec] : std::vector<std::pair<std::string, std::string>>{
           {"q7plus", "unit"}, {"q7plus", "13:0:1"}, {"q7plus", "2:0:1"}, {"qsqrt2", "7:0:1"}}) {
    Ring ring(field(name));
    RayContext ctx = make_ray_context(ring, parse_modulus(ring, spec));
    Embeddings emb(ring, 256);
    std::vector<std::vector<Interval>> rows;
    for (const auto& eta : ctx.generators) {
      auto logs = emb.log_vector(eta);
      std::vector<Interval> row;
      for (int i = 0; i < emb.places(); ++i) row.push_back(Interval(static_cast<long>(emb.weight(i)), 256) * logs[i]);
      rows.push_back(std::move(row));
    }
    EXPECT_TRUE(kz_inequality(rows)) << name << " " << spec;
  }
}

TEST(Minima, ExamplesAndExhaustiveSearch) {
  auto id = successive_minima(Lattice::from_integer({{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}}));
  for (auto d : id) EXPECT_NEAR(static_cast<double>(d), 1.0, 1e-15);
  auto diag = successive_minima_squared({{Int(3), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(2)}});
  EXPECT_EQ(diag, (std::vector<Int>{1, 4, 9}));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int rank = 2 + trial % 2;
    IntMatrix b = random_basis(rng, rank, 10);
    auto fast = successive_minima_squared(b);
    EXPECT_EQ(fast, brute_minima_squared(b)) << "trial " << trial;
    for (std::size_t i = 1; i < fast.size(); ++i) EXPECT_LE(fast[i - 1], fast[i]);
  }
}

TEST(Minima, GaussianMultiplesOfThree) {
  Ring ring(field("qi"));
  RayContext ctx = make_ray_context(ring, parse_modulus(ring, "unit"));
  DomainCounter counter(ring, ctx);
  Ideal three = principal_ideal(ring, ring.from_int(3));
  EXPECT_NEAR(static_cast<double>(counter.twisted_minimum(three, {})), 3.0, 1e-12);
}

TEST(Defect, OrthogonalAndReducibleBases) {
  EXPECT_TRUE(orthogonality_defect(Lattice::from_integer({{Int(1), Int(0)}, {Int(0), Int(2)}})).contains(Int(1)));
  EXPECT_TRUE(orthogonality_defect(Lattice::from_integer({{Int(1), Int(0)}, {Int(1), Int(1)}})).contains(Int(1)));
}

TEST(Widmer, FormulaValues) {
  Interval one(1L, 128);
  EXPECT_TRUE(widmer_bound(2, 4, one, {one, one}).contains(Int(256)));
  // The i = 0 term dominates when L is tiny.
  Interval tiny = Interval::from_double(1e-12, 128);
  Interval v = widmer_bound(3, 1, tiny, {one, one, one});
  EXPECT_LT(rel(v.mid(), std::pow(3.0, 13.5)), 1e-12);
  // Unit square against Z^2: |4 - 1| <= 256.
  EXPECT_LE(3, widmer_bound(2, 4, one, {one, one}).lower());
}

TEST(Widmer, RandomBoxesObeyTheBound) {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> side(1, 12);
  std::uniform_int_distribution<int> corner(-6, 6);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 2;
    IntMatrix b = random_basis(rng, n, 6);
    std::vector<long> lo, hi;
    long double vol = 1;
    long max_side = 0;
    for (int i = 0; i < n; ++i) {
      long s = side(rng);
      long c = corner(rng);
      lo.push_back(c);
      hi.push_back(c + s);
      vol *= s;
      max_side = std::max(max_side, s);
    }
    // Closed box with integer corners; integer points are exactly those with
    // lo <= p <= hi.
    long double count = static_cast<long double>(points_in_box(b, lo, hi).size());
    long double covol = std::fabs(to_double(determinant(b)));
    std::vector<Interval> minima;
    for (auto d : successive_minima(Lattice::from_integer(b))) {
      minima.push_back(Interval::from_double(static_cast<double>(d), 128) * Interval::from_double(1 - 1e-12, 128));
    }
    // Each of the 2n faces is the image of the unit (n-1)-cube under an
    // affine map with Lipschitz constant max_side.
    Interval bound = widmer_bound(n, 2 * n, Interval(max_side, 128), minima);
    EXPECT_LE(static_cast<double>(std::fabs(count - vol / covol)), bound.lower()) << "trial " << trial;
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

TEST(Lipschitz, Constants) {
  Interval one(1L, 128);
  LipschitzClass a = lipschitz_constant(2, 0, one);
  EXPECT_EQ(a.M, 2);
  EXPECT_NEAR(a.L.mid(), 8.8858, 1e-4);
  LipschitzClass b = lipschitz_constant(2, 1, one);
  EXPECT_EQ(b.M, 4);
  EXPECT_NEAR(b.L.mid(), 28.00, 5e-3);
  LipschitzClass c = lipschitz_constant(2, 1, Interval(2L, 128));
  EXPECT_TRUE((c.L - Interval(2L, 128) * b.L).contains_zero());
}

TEST(Cell, GaussianNormTwo) {
  Ring ring(field("qi"));
  RayContext ctx = make_ray_context(ring, parse_modulus(ring, "unit"));
  DomainCounter counter(ring, ctx);
  CellSpec cell{unit_ideal(2), ring.zero(), {}, {}, Rational(2)};
  EXPECT_EQ(counter.enumerate_in_cell(cell), 4);
  cell.t_power = Rational(1, 2);
  EXPECT_EQ(counter.enumerate_in_cell(cell), 0);
}

TEST(Cell, RealQuadraticNarrowUnits) {
  Ring ring(field("qsqrt2"));
  RayContext ctx = make_ray_context(ring, parse_modulus(ring, "unit"));
  DomainCounter counter(ring, ctx);
  Int total = 0;
  for (const auto& k : twist_vectors(ctx.m)) {
    total += counter.enumerate_in_cell({unit_ideal(2), ring.zero(), k, {1, 1}, Rational(1)});
  }
  EXPECT_EQ(total, ctx.mu_q1);
  EXPECT_EQ(total, 1);
}

TEST(Cell, PartitionMatchesUntwistedDomain) {
  struct Case {
    const char* name;
    const char* spec;
    long t_power;
  };
  for (const Case& c : {Case{"qsqrt2", "unit", 60}, Case{"qsqrt2", "7:0:1", 200}, Case{"qsqrt2", "3:0:1", 300},
                        Case{"qi", "3:0:1", 80}, Case{"q7plus", "unit", 150}, Case{"q7plus", "13:0:1", 900},
                        Case{"qsqrt-5", "3:0:1", 90}}) {
    Ring ring(field(c.name));
    Modulus q = parse_modulus(ring, c.spec);
    RayContext ctx = make_ray_context(ring, q);
    DomainCounter counter(ring, ctx);
    AlgebraicInt a0 = translate_for(ring, unit_ideal(ring.degree()), q.ideal, ring.one());
    Int all_signs = 0;
    for (const auto& gamma : sign_patterns(ring.field().r1)) {
      Int cells = 0;
      for (const auto& k : twist_vectors(ctx.m)) {
        cells += counter.enumerate_in_cell({q.ideal, a0, k, gamma, Rational(c.t_power)});
      }
      EXPECT_EQ(cells, counter.enumerate_untwisted(q.ideal, a0, gamma, Rational(c.t_power))) << c.name << " " << c.spec;
      all_signs += cells;
    }
    EXPECT_EQ(all_signs, counter.enumerate_untwisted(q.ideal, a0, {}, Rational(c.t_power))) << c.name << " " << c.spec;
  }
}

TEST(Cell, PrecisionDoesNotChangeCounts) {
  Ring ring(field("q7plus"));
  Modulus q = parse_modulus(ring, "13:0:1");
  RayContext ctx = make_ray_context(ring, q);
  DomainCounter low(ring, ctx, {128, 4096});
  DomainCounter high(ring, ctx, {512, 4096});
  AlgebraicInt a0 = translate_for(ring, unit_ideal(3), q.ideal, ring.one());
  for (const auto& k : twist_vectors(ctx.m)) {
    CellSpec cell{q.ideal, a0, k, {1, 1, 1}, Rational(2000)};
    EXPECT_EQ(low.enumerate_in_cell(cell), high.enumerate_in_cell(cell));
  }
}

TEST(Cell, TwistedMinimumBoundedByCovolume) {
  for (auto [name, spec] : std::vector<std::pair<std::string, std::string>>{
           {"qi", "3:0:1"}, {"qsqrt2", "unit"}, {"qsqrt2", "7:0:1"}, {"q7plus", "unit"}, {"q7plus", "13:0:1"}}) {
    Ring ring(field(name));
    Modulus q = parse_modulus(ring, spec);
    RayContext ctx = make_ray_context(ring, q);
    DomainCounter counter(ring, ctx);
    const int n = ring.degree();
    double covol = counter.hprime_covolume(q.ideal).upper();
    for (const auto& k : twist_vectors(ctx.m)) {
      double d = static_cast<double>(counter.twisted_minimum(q.ideal, k));
      EXPECT_LE(std::pow(d, n), std::pow(n, n) * covol) << name << " " << spec;
    }
  }
}

TEST(Minkowski, GaussianModThree) {
  FieldDescriptor fd = field("qi");
  Ring ring(fd);
  RayContext ctx = make_ray_context(ring, parse_modulus(ring, "3:0:1"));
  Interval t = minkowski_t_threshold(fd, ctx, Int(9));
  EXPECT_NEAR(t.mid(), 2.394, 1e-3);
  Interval t4 = minkowski_t_threshold(fd, ctx, Int(36));
  EXPECT_LT(rel(t4.mid(), 2 * t.mid()), 1e-14);
}

TEST(CountS, GaussianModThreeShell) {
  FieldDescriptor fd = field("qi");
  Ring ring(fd);
  Modulus q = parse_modulus(ring, "3:0:1");
  RayContext ctx = make_ray_context(ring, q);
  DomainCounter counter(ring, ctx);
  CountCellReport rep = count_S(counter, unit_ideal(2), q, ring.one(), {}, Rational(50), Interval(1L, 128));
  // Gaussian integers congruent to 1 mod 3 with 25 < N <= 50.
  long brute = 0;
  for (long a = -8; a <= 8; ++a) {
    for (long b = -8; b <= 8; ++b) {
      long nn = a * a + b * b;
      if (nn > 25 && nn <= 50 && ((a - 1) % 3 + 3) % 3 == 0 && (b % 3 + 3) % 3 == 0) ++brute;
    }
  }
  EXPECT_EQ(rep.count, brute);
  EXPECT_NEAR(rep.main_term.mid(), 8.727, 1e-3);
  EXPECT_FALSE(rep.m_term_dropped && ctx.m_product() > 1);
  EXPECT_TRUE(rep.holds);
}

TEST(CountS, UnitModulusDropsProductTerm) {
  Ring ring(field("qsqrt2"));
  Modulus q = parse_modulus(ring, "unit");
  RayContext ctx = make_ray_context(ring, q);
  DomainCounter counter(ring, ctx);
  CountCellReport rep = count_S(counter, unit_ideal(2), q, ring.one(), {1, 1}, Rational(40), Interval(1L, 128));
  EXPECT_TRUE(rep.m_term_dropped);
  EXPECT_TRUE(rep.holds);
}
