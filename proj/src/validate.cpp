#include "raylat/algebra.hpp"
#include "raylat/embedding.hpp"
#include "raylat/error.hpp"
#include "raylat/fielddata.hpp"
#include "raylat/lattice.hpp"
#include "raylat/matrix.hpp"
#include "raylat/unitlog.hpp"

#include <functional>
#include <sstream>

namespace raylat {

namespace {

// Runs a numeric check under precision escalation; a check that cannot be
// decided at the cap fails with the reason as witness.
Check numeric_check(const std::string& name, const PrecisionPolicy& policy,
                    const std::function<Check(long)>& body) {
  try {
    return escalate(policy, body);
  } catch (const Error& e) {
    return {name, false, e.code() + ": " + e.what()};
  }
}

std::string interval_witness(const Interval& x) {
  std::ostringstream out;
  out << "[" << x.lower() << ", " << x.upper() << "]";
  return out.str();
}

// Tolerance implied by the number of decimals written in the hint.
Interval hint_interval(const std::string& text, long precision) {
  std::size_t dot = text.find('.');
  long decimals = dot == std::string::npos ? 0 : static_cast<long>(text.size() - dot - 1);
  Interval centre = Interval::from_decimal(text, precision);
  Rational half_ulp(1, 2);
  for (long i = 0; i < decimals; ++i) half_ulp /= 10;
  Interval h(half_ulp, precision);
  return Interval::hull(centre - h, centre + h);
}

int sign_span_size(const std::vector<std::vector<int>>& vectors, int r1) {
  // Rank over F_2 of the sign vectors (bit i set when the sign is negative).
  std::vector<unsigned> rows;
  for (const auto& v : vectors) {
    unsigned bits = 0;
    for (int i = 0; i < r1; ++i) {
      if (v[static_cast<std::size_t>(i)] < 0) bits |= 1u << i;
    }
    rows.push_back(bits);
  }
  int rank = 0;
  for (int bit = 0; bit < r1; ++bit) {
    std::size_t pivot = rows.size();
    for (std::size_t i = static_cast<std::size_t>(rank); i < rows.size(); ++i) {
      if (rows[i] & (1u << bit)) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != static_cast<std::size_t>(rank) && (rows[i] & (1u << bit))) rows[i] ^= rows[static_cast<std::size_t>(rank)];
    }
    ++rank;
  }
  return 1 << rank;
}

}  // namespace

ValidationReport validate_field(const FieldDescriptor& fd, long precision, long precision_cap) {
  ValidationReport report;
  PrecisionPolicy policy{precision, std::max(precision, precision_cap)};
  const int n = fd.degree;
  const int r = fd.unit_rank();

  {
    Int pd = poly_discriminant(fd.poly);
    Int expected = fd.disc * fd.index * fd.index;
    report.checks.push_back({"discriminant", pd == expected,
                             "disc(poly) = " + pd.str() + ", d_K * index^2 = " + expected.str()});
  }

  Ring ring(fd);
  {
    Rational det = determinant(fd.integral_basis);
    Rational expected(1, fd.index);
    bool ok = ring.closed() && abs(det) == expected;
    report.checks.push_back({"integral_basis", ok,
                             ring.closed() ? "|det| = " + to_string(abs(det)) + ", 1/index = " + to_string(expected)
                                           : "basis not closed under multiplication"});
  }
  if (!report.checks.back().pass) return report;

  {
    bool ok = true;
    std::string witness = "overrides consistent";
    try {
      for (const auto& [p, entries] : fd.prime_splitting) {
        Ideal product = unit_ideal(n);
        for (const auto& prime : ring.primes_above(p)) {
          product = ideal_mul(ring, product, ideal_pow(ring, prime.ideal, static_cast<unsigned>(prime.e)));
        }
        if (!(product == principal_ideal(ring, ring.from_int(p)))) {
          ok = false;
          witness = "product of override primes above " + p.str() + " is not (p)";
        }
      }
    } catch (const Error& e) {
      ok = false;
      witness = e.what();
    }
    report.checks.push_back({"prime_splitting", ok, witness});
  }

  {
    bool ok = true;
    std::string witness;
    for (std::size_t j = 0; j < fd.units.size(); ++j) {
      Int nu = ring.norm(fd.units[j]);
      if (j) witness += ", ";
      witness += "N(u" + std::to_string(j + 1) + ") = " + nu.str();
      ok = ok && abs(nu) == 1;
    }
    report.checks.push_back({"unit_norm", ok, witness.empty() ? "no units" : witness});
  }

  {
    // Exact multiplicative order of the torsion generator, and the number of
    // roots of unity in O_K (elements with every |sigma_i| = 1).
    const AlgebraicInt& zeta = fd.torsion_gen;
    bool ok = fd.torsion_order <= 64;
    std::string witness;
    if (ok) {
      auto w = static_cast<unsigned>(fd.torsion_order);
      ok = ring.pow(zeta, w) == ring.one();
      for (const Int& l : prime_factors(fd.torsion_order)) {
        ok = ok && !(ring.pow(zeta, w / static_cast<unsigned>(l)) == ring.one());
      }
      witness = ok ? "generator has order " + fd.torsion_order.str() : "generator order differs from declared order";
      if (ok) {
        try {
          Embeddings emb(ring, precision);
          std::vector<RealVector> basis(static_cast<std::size_t>(n), RealVector());
          for (int k = 0; k < n; ++k) {
            for (int i = 0; i < emb.r1(); ++i) basis[k].push_back(emb.table_re()[i][k]);
            for (int i = emb.r1(); i < emb.places(); ++i) {
              basis[k].push_back(emb.table_re()[i][k]);
              basis[k].push_back(emb.table_im()[i][k]);
            }
          }
          long count = 0;
          RealVector origin(static_cast<std::size_t>(n), 0);
          enumerate_ball(basis, origin, static_cast<long double>(emb.places()) * 1.001L, [&](const CoeffVector& z) {
            AlgebraicInt x;
            for (auto e : z) x.push_back(Int(e));
            if (ring.is_zero(x) || abs(ring.norm(x)) != 1) return;
            AlgebraicInt power = x;
            for (int m = 1; m <= 64; ++m) {
              if (power == ring.one()) {
                ++count;
                return;
              }
              power = ring.mul(power, x);
            }
          });
          if (count != static_cast<long>(w)) {
            ok = false;
            witness = "O_K contains " + std::to_string(count) + " roots of unity, declared " + fd.torsion_order.str();
          }
        } catch (const Error& e) {
          ok = false;
          witness = e.what();
        }
      }
    } else {
      witness = "torsion order too large";
    }
    report.checks.push_back({"torsion", ok, witness});
  }

  {
    Check c{"signature", true, "r1 = " + std::to_string(fd.r1) + " real roots"};
    try {
      Embeddings emb(ring, precision);
    } catch (const Error& e) {
      c.pass = false;
      c.witness = e.what();
    }
    report.checks.push_back(c);
    if (!c.pass) return report;
  }

  report.checks.push_back(numeric_check("regulator", policy, [&](long prec) {
    Embeddings emb(ring, prec);
    Interval reg = r == 0 ? Interval(1L, prec) : unit_regulator(emb, fd.units);
    if (reg.contains_zero()) throw Indeterminate("regulator interval contains zero");
    std::string witness = "R_K in " + interval_witness(reg);
    bool ok = true;
    if (fd.regulator) {
      Interval hint = hint_interval(*fd.regulator, prec);
      if (!reg.overlaps(hint)) {
        ok = false;
        witness += " does not contain hint " + *fd.regulator;
      } else if (!hint.contains(reg)) {
        // Enclosure still wider than the hint's tolerance; refine.
        if (reg.width() > hint.width()) throw Indeterminate("regulator enclosure too wide");
      }
    }
    return Check{"regulator", ok, witness};
  }));

  report.checks.push_back(numeric_check("friedman", policy, [&](long prec) {
    Embeddings emb(ring, prec);
    Interval reg = r == 0 ? Interval(1L, prec) : unit_regulator(emb, fd.units);
    Interval ratio = reg / Interval(fd.torsion_order, prec);
    Interval bound(Rational(1, 5), prec);
    auto less = compare_less(ratio, bound);
    if (!less) throw Indeterminate("Friedman comparison undecided");
    return Check{"friedman", !*less, "R_K/|mu_K| in " + interval_witness(ratio) + " vs 0.2"};
  }));

  report.checks.push_back(numeric_check("dobrowolski", policy, [&](long prec) {
    Embeddings emb(ring, prec);
    Interval nn(static_cast<long>(n), prec);
    Interval bound = Interval(1L, prec) + log(nn) / (Interval(6L, prec) * nn * nn);
    bool ok = true;
    std::string witness = "bound " + interval_witness(bound);
    for (std::size_t j = 0; j < fd.units.size(); ++j) {
      Interval best = emb.abs_sigma(fd.units[j], 0);
      for (int i = 1; i < emb.places(); ++i) best = max(best, emb.abs_sigma(fd.units[j], i));
      auto below = compare_less(best, bound);
      if (!below) throw Indeterminate("Dobrowolski comparison undecided");
      ok = ok && !*below;
      witness += "; max|sigma(u" + std::to_string(j + 1) + ")| in " + interval_witness(best);
    }
    return Check{"dobrowolski", ok, witness};
  }));

  if (fd.narrow_class_number) {
    report.checks.push_back(numeric_check("narrow_class_number", policy, [&](long prec) {
      Embeddings emb(ring, prec);
      std::vector<std::vector<int>> signs;
      std::vector<AlgebraicInt> gens = fd.units;
      gens.push_back(fd.torsion_gen);
      for (const auto& g : gens) {
        std::vector<int> s;
        for (int i = 0; i < fd.r1; ++i) s.push_back(emb.real_sign(g, i));
        signs.push_back(s);
      }
      int image = sign_span_size(signs, fd.r1);
      Int expected = fd.class_number * ipow(Int(2), static_cast<unsigned>(fd.r1)) / image;
      return Check{"narrow_class_number", expected == *fd.narrow_class_number,
                   "h_K * 2^r1 / |sign image| = " + expected.str()};
    }));
  }
  return report;
}

}  // namespace raylat
