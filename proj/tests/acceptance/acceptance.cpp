// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "raylat/error.hpp"
#include "raylat/fielddata.hpp"
#include "raylat/latcount.hpp"
#include "raylat/raycount.hpp"
#include "support/brute_force.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace raylat;
using namespace raylat::brute;

namespace {

FieldDescriptor field(const std::string& name) {
  return load_field_file(std::string(RAYLAT_TEST_DATA) + "/" + name + ".json");
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

struct Config {
  std::string field;
  std::string modulus;
};

// Per field: the unit modulus, a split prime, an inert prime.
const std::vector<Config> kConfigs{
    {"qi", "unit"},      {"qi", "5:0:1"},       {"qi", "3:0:1"},      {"qsqrt-5", "unit"},
    {"qsqrt-5", "3:0:1"}, {"qsqrt-5", "11:0:1"}, {"qsqrt2", "unit"},   {"qsqrt2", "7:0:1"},
    {"qsqrt2", "3:0:1"},  {"q7plus", "unit"},    {"q7plus", "13:0:1"}, {"q7plus", "2:0:1"}};

const std::vector<Int> kGrid{10, 100, 1000, 10000};

std::string tag(const Config& c) { return c.field + " q=" + c.modulus; }

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const Error& e) {
    o.fail("error [" + e.code() + "]: " + e.what());
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::ostringstream line;
  line.precision(1);
  line << std::fixed << (o.pass ? "PASS  " : "FAIL  ") << name << " (" << secs << "s)";
  if (!o.detail.empty()) line << ": " << o.detail;
  std::cout << line.str() << std::endl;
}

// Reports on the full grid with both methods, computed once and shared by
// several criteria.
std::map<std::string, CountReport> reports;

const CountReport& report_for(const Config& c) {
  auto it = reports.find(tag(c));
  if (it != reports.end()) return it->second;
  Ring ring(field(c.field));
  VerifyOptions opt;
  opt.shell_max_x = 0;
  CountReport rep = verify_asymptotic(ring, parse_modulus(ring, c.modulus), kGrid, opt);
  return reports.emplace(tag(c), std::move(rep)).first->second;
}

}  // namespace

int main() {
  report("method agreement: lattice = oracle for every class, 12 configurations, x = 10..10^4", [] {
    Outcome o;
    std::size_t rows = 0;
    for (const auto& c : kConfigs) {
      for (const auto& row : report_for(c).rows) {
        ++rows;
        if (!row.lattice || !row.oracle || *row.lattice != *row.oracle) {
          o.fail(tag(c) + " class " + row.representative + " x=" + row.x.str());
        }
      }
    }
    if (o.pass) o.detail = std::to_string(rows) + " (class, x) pairs";
    return o;
  });

  report("Gaussian integers mod 3 at x = 10: counts (4,4), h = 2, phi = 8", [] {
    // Coprime ideals of norm <= 10: (1), (2), (1+3i), (3+i) are 1 mod 3 up to
    // a unit; (1+i), (2+i), (2-i), (2+2i) are not.
    Outcome o;
    const CountReport& rep = report_for({"qi", "3:0:1"});
    if (rep.h_Kq != 2 || rep.empirical_h_Kq != 2) o.fail("h_Kq = " + rep.h_Kq.str());
    if (rep.phi != 8) o.fail("phi = " + rep.phi.str());
    std::vector<Int> at_ten;
    for (const auto& row : rep.rows) {
      if (row.x == 10) at_ten.push_back(*row.lattice);
    }
    if (at_ten != std::vector<Int>{4, 4}) o.fail("counts at x=10 differ from (4,4)");
    return o;
  });

  report("explicit error bound holds at every grid point (certified)", [] {
    Outcome o;
    double worst = 0;
    for (const auto& c : kConfigs) {
      for (const auto& row : report_for(c).rows) {
        if (!certainly_less_equal(row.abs_error, row.bound)) o.fail(tag(c) + " x=" + row.x.str());
        worst = std::max(worst, row.abs_error.upper() / row.bound.lower());
      }
    }
    if (o.pass) {
      std::ostringstream s;
      s << "largest |error|/bound = " << worst;
      o.detail = s.str();
    }
    return o;
  });

  report("main term ratio at x = 10^4 in [0.95, 1.05] for every class", [] {
    Outcome o;
    double lo = 2, hi = 0;
    for (const auto& c : kConfigs) {
      for (double d : report_for(c).density) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        if (!(d >= 0.95 && d <= 1.05)) o.fail(tag(c) + " ratio " + std::to_string(d));
      }
    }
    if (o.pass) o.detail = "range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    return o;
  });

  report("main term identities (regulator and residue) to relative 1e-10", [] {
    Outcome o;
    for (const auto& c : kConfigs) {
      FieldDescriptor fd = field(c.field);
      Ring ring(fd);
      RayContext ctx = make_ray_context(ring, parse_modulus(ring, c.modulus));
      Embeddings emb(ring, 128);
      double rq = q1_regulator(ring, emb, ctx).mid();
      double alpha = residue_alpha_K(ring).mid();
      double phi = to_double(ctx.phi), h = to_double(ctx.ray_class_number);
      double first_lhs = std::pow(2 * M_PI, fd.r2) * rq / (to_double(ctx.mu_q1) * std::sqrt(std::fabs(to_double(fd.disc))));
      double first_rhs = alpha * phi / h;
      double second_lhs = rq / field_regulator(ring).mid();
      double second_rhs = to_double(ctx.mu_q1) / to_double(fd.torsion_order) * std::pow(2.0, fd.r1) * phi *
                          to_double(fd.class_number) / h;
      if (rel(first_lhs, first_rhs) > 1e-10) o.fail(tag(c) + " first identity");
      if (rel(second_lhs, second_rhs) > 1e-10) o.fail(tag(c) + " second identity");
    }
    return o;
  });

  report("regulator sandwich for prod m_j after KZ reduction (certified)", [] {
    Outcome o;
    const long p = 256;
    for (const auto& c : kConfigs) {
      FieldDescriptor fd = field(c.field);
      Ring ring(fd);
      RayContext ctx = make_ray_context(ring, parse_modulus(ring, c.modulus));
      Embeddings emb(ring, p);
      Interval reg = q1_regulator(ring, emb, ctx);
      const long r = ctx.r;
      Interval r1(r + 1, p);
      Interval lower = reg / (pow(Interval(2L, p), static_cast<unsigned>(r)) * pow(r1, Rational(r - 1, 2)));
      Interval upper = pow(Interval(7L, p), static_cast<unsigned>(r)) * pow(r1, Rational(2 * r + 1, 2)) *
                       pow(Interval(static_cast<long>(fd.degree), p), static_cast<unsigned>(2 * r)) * reg;
      Interval prod(ctx.m_product(), p);
      if (!certainly_less_equal(lower, prod) || !certainly_less_equal(prod, upper)) o.fail(tag(c));
    }
    return o;
  });

  report("KZ inequality on 100 random lattices (rank <= 4) and all unit-log lattices; minima match exhaustive search",
         [] {
           Outcome o;
           std::mt19937 rng(20240611);
           for (int trial = 0; trial < 100; ++trial) {
             int rank = 1 + trial % 4;
             IntMatrix b = random_basis(rng, rank, 10);
             KzResult kz = kz_basis(Lattice::from_integer(b));
             if (!kz_inequality_exact(*kz.lattice.exact)) o.fail("random lattice " + std::to_string(trial));
           }
           int unit_lattices = 0;
           for (const auto& c : kConfigs) {
             Ring ring(field(c.field));
             RayContext ctx = make_ray_context(ring, parse_modulus(ring, c.modulus));
             if (ctx.r == 0) continue;
             Embeddings emb(ring, 256);
             std::vector<std::vector<Interval>> rows;
             for (const auto& eta : ctx.generators) {
               auto logs = emb.log_vector(eta);
               std::vector<Interval> row;
               for (int i = 0; i < emb.places(); ++i) {
                 row.push_back(Interval(static_cast<long>(emb.weight(i)), 256) * logs[i]);
               }
               rows.push_back(std::move(row));
             }
             ++unit_lattices;
             if (!kz_inequality(rows)) o.fail("unit-log lattice " + tag(c));
           }
           std::mt19937 mrng(7);
           for (int trial = 0; trial < 60; ++trial) {
             IntMatrix b = random_basis(mrng, 2 + trial % 2, 10);
             if (successive_minima_squared(b) != brute_minima_squared(b)) o.fail("minima " + std::to_string(trial));
           }
           if (o.pass) o.detail = std::to_string(unit_lattices) + " unit-log lattices, 60 minima comparisons";
           return o;
         });

  report("lattice points in boxes: 200 random (lattice, box) pairs within the counting bound", [] {
    Outcome o;
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> side(1, 12);
    std::uniform_int_distribution<int> corner(-6, 6);
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
      long double count = static_cast<long double>(points_in_box(b, lo, hi).size());
      long double covol = std::fabs(to_double(determinant(b)));
      std::vector<Interval> minima;
      for (auto d : successive_minima(Lattice::from_integer(b))) {
        minima.push_back(Interval::from_double(static_cast<double>(d), 128) * Interval::from_double(1 - 1e-12, 128));
      }
      Interval bound = widmer_bound(n, 2 * n, Interval(max_side, 128), minima);
      if (static_cast<double>(std::fabs(count - vol / covol)) > bound.lower()) o.fail("trial " + std::to_string(trial));
    }
    return o;
  });

  report("unit integral for Q(sqrt2) narrow, alpha = 1 and 3: quadrature = closed form to 1e-6", [] {
    Outcome o;
    Ring ring(field("qsqrt2"));
    RayContext ctx = make_ray_context(ring, parse_modulus(ring, "unit"));
    std::ostringstream s;
    for (long a : {1L, 3L}) {
      UnitIntegral u = unit_integral(ring, ctx, ring.from_int(a));
      double e = rel(u.quadrature, u.closed_form);
      if (e > 1e-6) o.fail("alpha = " + std::to_string(a));
      s << "alpha=" << a << " rel " << e << ' ';
    }
    if (o.pass) o.detail = s.str();
    return o;
  });

  report("ray class number: census = formula, within [h_K1, phi h_K1]", [] {
    Outcome o;
    for (const auto& c : kConfigs) {
      const CountReport& rep = report_for(c);
      Ring ring(field(c.field));
      RayContext ctx = make_ray_context(ring, parse_modulus(ring, c.modulus));
      if (rep.empirical_h_Kq != ctx.ray_class_number) o.fail(tag(c) + " census " + rep.empirical_h_Kq.str());
      if (ctx.ray_class_number < ctx.narrow_class_number || ctx.ray_class_number > ctx.phi * ctx.narrow_class_number) {
        o.fail(tag(c) + " outside sandwich");
      }
    }
    return o;
  });

  report("proof constants: 500 n^{12n^2} bound for n = 2..8 and a + b <= 2ab grid", [] {
    Outcome o;
    for (int n = 2; n <= 8; ++n) {
      if (!proof_constant_holds(n)) o.fail("n = " + std::to_string(n));
    }
    for (int a = 2; a <= 40; ++a) {
      for (int b = 2; b <= 40; ++b) {
        if (!sum_product_holds(Interval(Rational(a, 2), 128), Interval(Rational(b, 2), 128))) {
          o.fail("a = " + std::to_string(a) + "/2, b = " + std::to_string(b) + "/2");
        }
      }
    }
    return o;
  });

  report("Dobrowolski and Friedman checks pass for every field fixture", [] {
    Outcome o;
    int fields = 0;
    for (const auto& entry : std::filesystem::directory_iterator(RAYLAT_TEST_DATA)) {
      if (entry.path().extension() != ".json" || entry.path().stem() == "broken") continue;
      ++fields;
      ValidationReport rep = validate_field(load_field_file(entry.path().string()), 128);
      for (const char* name : {"dobrowolski", "friedman"}) {
        const Check* check = rep.find(name);
        if (!check || !check->pass) o.fail(entry.path().stem().string() + " " + name);
      }
    }
    if (o.pass) o.detail = std::to_string(fields) + " fixtures";
    return o;
  });

  std::cout << (failures ? "FAILED " : "ALL PASSED ") << "(" << failures << " of 12 failing)" << std::endl;
  return failures ? 1 : 0;
}
