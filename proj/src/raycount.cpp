#include "raylat/raycount.hpp"

#include "raylat/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace raylat {

namespace {

Interval iv(long v, long prec) { return Interval(v, prec); }

Interval reduced_regulator(const FieldDescriptor& fd, const Interval& regulator) {
  return regulator / Interval(fd.torsion_order, regulator.precision());
}

std::string interval_text(const Interval& x) { return x.str(10); }

}  // namespace

Interval field_regulator(const Ring& ring, long precision) {
  const FieldDescriptor& fd = ring.field();
  if (fd.unit_rank() == 0) return Interval(1L, precision);
  Embeddings emb(ring, precision);
  return unit_regulator(emb, fd.units);
}

Interval residue_alpha_K(const Ring& ring, long precision) {
  const FieldDescriptor& fd = ring.field();
  Interval v = field_regulator(ring, precision) * Interval(fd.class_number, precision);
  for (int i = 0; i < fd.r1; ++i) v *= iv(2, precision);
  Interval two_pi = iv(2, precision) * Interval::pi(precision);
  for (int i = 0; i < fd.r2; ++i) v *= two_pi;
  return v / (Interval(fd.torsion_order, precision) * sqrt(Interval(Int(abs(fd.disc)), precision)));
}

Rational F_constant(const FieldDescriptor& fd, const RayContext& ctx) {
  Rational f(ipow(Int(2), static_cast<unsigned>(fd.r1)) * ctx.phi * fd.class_number, ctx.ray_class_number);
  if (f < 1) throw Error("raycount.inconsistent", "F(q) = " + f.str() + " is below 1");
  return f;
}

Interval E_constant(const FieldDescriptor& fd, const Interval& regulator) {
  const int n = fd.degree;
  long prec = regulator.precision();
  Interval rt = reduced_regulator(fd, regulator);
  Interval nn = iv(n, prec);
  Interval lg = log(pow(iv(2 * n, prec), static_cast<unsigned>(4 * n)) * rt);
  return iv(1000, prec) * pow(nn, static_cast<unsigned>(12 * n * n)) * pow(rt, Rational(1, n)) *
         pow(lg, static_cast<unsigned>(n));
}

Interval error_bound(const FieldDescriptor& fd, const RayContext& ctx, const Interval& regulator, const Rational& x) {
  const int n = fd.degree;
  long prec = regulator.precision();
  Interval f(F_constant(fd, ctx), prec);
  Interval ratio(x / Rational(ctx.modulus.ideal.norm), prec);
  Interval first = E_constant(fd, regulator) * pow(f, Rational(1, n)) *
                   pow(log(iv(3, prec) * f), static_cast<unsigned>(n)) * pow(ratio, Rational(n - 1, n));
  Interval second = pow(iv(n, prec), static_cast<unsigned>(8 * n)) * reduced_regulator(fd, regulator) * f;
  return first + second;
}

Interval proof_internal_bound(const FieldDescriptor& fd, const RayContext& ctx, const Interval& regulator,
                              const Rational& x) {
  const int n = fd.degree;
  long prec = regulator.precision();
  Interval f(F_constant(fd, ctx), prec);
  Interval ratio(x / Rational(ctx.modulus.ideal.norm), prec);
  Interval y = pow(iv(2 * n, prec), static_cast<unsigned>(4 * n)) * f * reduced_regulator(fd, regulator);
  Interval a = exp(iv(n * n + 8 * n, prec)) * pow(iv(n, prec), Rational(3 * n * n + 11 * n - 1, 2));
  Interval first = a * iv(6 * n, prec) * pow(y, Rational(1, n)) * pow(log(y), Rational((n - 1) * (n - 1), n)) *
                   pow(ratio, Rational(n - 1, n));
  return first + y;
}

Interval main_term(const Interval& alpha_K, const RayContext& ctx, const Rational& x) {
  long prec = alpha_K.precision();
  return alpha_K * Interval(ctx.phi, prec) * Interval(x, prec) /
         (Interval(ctx.ray_class_number, prec) * Interval(ctx.modulus.ideal.norm, prec));
}

bool proof_constant_holds(int n, long precision) {
  Interval nn = iv(n, precision);
  Interval lhs = exp(iv(n * n + 8 * n, precision)) * pow(nn, Rational(3 * n * n + 11 * n - 1, 2)) *
                 iv(6 * n, precision) * pow(iv(2 * n, precision), 4u);
  Interval rhs = iv(500, precision) * pow(nn, static_cast<unsigned>(12 * n * n));
  return certainly_less_equal(lhs, rhs);
}

bool sum_product_holds(const Interval& a, const Interval& b) {
  return certainly_less_equal(a + b, iv(2, a.precision()) * a * b);
}

Interval ncinv_bound(const Interval& y, int n) {
  long prec = y.precision();
  if (certainly_less(y, iv(2, prec))) throw Error("raycount.range", "the ideal-sum bound needs y >= 2");
  return iv(6 * n, prec) * pow(y, Rational(1, n)) * pow(log(y), Rational((n - 1) * (n - 1), n));
}

Interval ncinv_exact(const RayOracle& oracle, const Ideal& member, const Int& m_product, long precision) {
  const Ring& ring = oracle.ring();
  const int n = ring.degree();
  Int bound = 16;
  for (;;) {
    if (bound > 1000000) throw Error("oracle.exhausted", "fewer than m_1...m_r ideals of norm <= 10^6 in the class");
    IdealCensus census = enumerate_ideals(ring, bound);
    std::vector<Int> found;
    for (const auto& e : census.entries) {
      if (Int(found.size()) == m_product) break;
      if (oracle.principal(ideal_mul(ring, e.ideal, member))) found.push_back(e.ideal.norm);
    }
    if (Int(found.size()) == m_product) {
      Interval s(precision);
      for (const auto& nb : found) s += pow(Interval(nb, precision), Rational(-(n - 1), n));
      return s;
    }
    bound *= 4;
  }
}

UnitIntegral unit_integral(const Ring& ring, const RayContext& ctx, const AlgebraicInt& alpha) {
  if (ctx.r != 1) throw Error("raycount.rank", "the unit integral is implemented for unit rank 1 only");
  const int n = ring.degree();
  Embeddings emb(ring, 128);
  auto eta = emb.log_vector(ctx.generators[0]);
  auto a = emb.log_vector(alpha);
  const double m = to_double(ctx.m[0]);
  // The integrand exp(-(n-1) max_i (a_i + l_i x)) for the r+1 = 2 places.
  std::vector<double> l{eta[0].mid() / m, eta[1].mid() / m};
  std::vector<double> c{a[0].mid(), a[1].mid()};
  auto g = [&](double x) {
    double top = std::max(c[0] + l[0] * x, c[1] + l[1] * x);
    return std::exp(-(n - 1) * top);
  };
  double kink = (c[1] - c[0]) / (l[0] - l[1]);
  boost::math::quadrature::exp_sinh<double> integrator;
  double right = integrator.integrate([&](double u) { return g(kink + u); });
  double left = integrator.integrate([&](double u) { return g(kink - u); });

  Interval reg = q1_regulator(ring, emb, ctx);
  Interval norm(Int(abs(ring.norm(alpha))), 128);
  Interval closed = Interval(ctx.m[0], 128) * Interval(Rational(n, n - 1), 128) /
                    (reg * pow(norm, Rational(n - 1, n)));
  return {left + right, closed.mid()};
}

std::vector<Int> count_ray_class_lattice(const DomainCounter& counter, const Ideal& c, const std::vector<Int>& xs,
                                         int jobs) {
  const Ring& ring = counter.ring();
  const RayContext& ctx = counter.context();
  const Ideal& q = ctx.modulus.ideal;
  if (!coprime(c, q)) throw Error("raycount.coprime", "class representative " + ideal_string(c) + " is not coprime to q");
  if (xs.empty()) return {};
  Ideal lattice = ideal_mul(ring, c, q);
  AlgebraicInt a0 = translate_for(ring, c, q, ring.one());
  std::vector<int> positive(static_cast<std::size_t>(ring.field().r1), 1);
  Int top = *std::max_element(xs.begin(), xs.end());
  std::vector<Int> norms = counter.domain_norms(lattice, a0, positive, top * c.norm, jobs);
  std::vector<Int> out;
  for (const auto& x : xs) {
    Int limit = x * c.norm;
    Int k(std::upper_bound(norms.begin(), norms.end(), limit) - norms.begin());
    if (k % ctx.mu_q1 != 0) {
      throw Error("raycount.divisibility", "element count " + k.str() + " is not divisible by mu_q1 = " +
                                               ctx.mu_q1.str());
    }
    out.push_back(k / ctx.mu_q1);
  }
  return out;
}

ShellCount count_ray_class_shells(const DomainCounter& counter, const Ideal& c, const Int& x, const Interval& ncinv) {
  const Ring& ring = counter.ring();
  const RayContext& ctx = counter.context();
  long prec = ncinv.precision();
  std::vector<int> positive(static_cast<std::size_t>(ring.field().r1), 1);
  ShellCount out;
  out.count = 0;
  out.main_term = Interval(prec);
  out.bound = Interval(prec);
  out.holds = true;
  // Norms are integers >= 1, so shells down to t^n in [1, 2) cover them all.
  for (Rational tp(x * c.norm); tp >= 1; tp /= 2) {
    CountCellReport rep = count_S(counter, c, ctx.modulus, ring.one(), positive, tp, ncinv);
    out.count += rep.count;
    out.main_term += rep.main_term;
    out.bound += rep.error_bound;
    out.holds = out.holds && rep.holds;
  }
  if (out.count % ctx.mu_q1 != 0) throw Error("raycount.divisibility", "shell element count is not divisible by mu_q1");
  Interval mu(ctx.mu_q1, prec);
  out.count /= ctx.mu_q1;
  out.main_term /= mu;
  out.bound /= mu;
  return out;
}

CountReport verify_asymptotic(const Ring& ring, const Modulus& q, const std::vector<Int>& grid,
                              const VerifyOptions& options) {
  const FieldDescriptor& fd = ring.field();
  const long prec = options.policy.start;
  std::vector<Int> xs = grid;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.empty() || xs.front() < 1) throw Error("raycount.grid", "x grid must be nonempty with every x >= 1");

  CountReport rep;
  rep.field = fd.label;
  rep.modulus = q.spec;
  rep.xs = xs;
  RayContext ctx = make_ray_context(ring, q, options.policy);
  rep.phi = ctx.phi;
  rep.h_Kq = ctx.ray_class_number;
  rep.norm_q = q.ideal.norm;
  rep.m = ctx.m;
  rep.mu_q1 = ctx.mu_q1;
  rep.regulator = field_regulator(ring, prec);
  rep.alpha_K = residue_alpha_K(ring, prec);
  {
    Embeddings emb(ring, prec);
    rep.regulator_q1 = q1_regulator(ring, emb, ctx);
  }
  rep.E = E_constant(fd, rep.regulator);
  rep.F = F_constant(fd, ctx);
  rep.proof_constant = proof_constant_holds(fd.degree, prec);
  rep.sum_product = true;
  for (long a = 1; a <= 20; ++a) {
    for (long b = 1; b <= 20; ++b) {
      rep.sum_product = rep.sum_product && sum_product_holds(Interval(Rational(a + 1, 2), prec),
                                                             Interval(Rational(b + 1, 2), prec));
    }
  }
  Interval y(ctx.m_product() < 2 ? Int(2) : ctx.m_product(), prec);
  rep.ncinv_bound = ncinv_bound(y, fd.degree);

  // The census must reach the largest x and contain every class.
  RayOracle oracle(ring, q, options.policy);
  Int bound = std::max(xs.back(), Int(16));
  IdealCensus census;
  for (;;) {
    census = enumerate_ideals(ring, bound);
    classify(oracle, census);
    if (empirical_hKq(census) >= ctx.ray_class_number) break;
    if (bound > 1000000) break;
    bound *= 4;
  }
  rep.empirical_h_Kq = empirical_hKq(census);

  std::vector<int> buckets;
  if (options.classes.empty()) {
    for (std::size_t b = 0; b < census.representatives.size(); ++b) buckets.push_back(static_cast<int>(b));
  } else {
    for (const auto& cls : options.classes) {
      RayInvariant inv = oracle.invariant(cls);
      int found = -1;
      for (std::size_t b = 0; b < census.representatives.size() && found < 0; ++b) {
        if (oracle.invariant(census.entries[census.representatives[b]].ideal) == inv) found = static_cast<int>(b);
      }
      if (found < 0) throw Error("raycount.class", "no census ideal in the class of " + ideal_string(cls));
      buckets.push_back(found);
    }
  }

  DomainCounter counter(ring, ctx, options.policy);
  bool ok = rep.empirical_h_Kq == rep.h_Kq;
  for (int b : buckets) {
    const Ideal& member = census.entries[census.representatives[static_cast<std::size_t>(b)]].ideal;
    Ideal c = inverse_class_representative(oracle, census, member);
    Interval ncinv = ncinv_exact(oracle, ideal_mul(ring, c, q.ideal), ctx.m_product(), prec);
    rep.ncinv_exact.push_back(ncinv);

    std::vector<Int> lattice, oracle_counts;
    if (options.lattice) lattice = count_ray_class_lattice(counter, c, xs, options.jobs);
    if (options.oracle) {
      std::vector<Int> within;
      for (const auto& x : xs) within.push_back(x);
      oracle_counts = bucket_counts(census, b, within);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      ClassRow row;
      row.representative = ideal_string(member);
      row.inverse = ideal_string(c);
      row.x = xs[i];
      if (options.lattice) row.lattice = lattice[i];
      if (options.oracle) row.oracle = oracle_counts[i];
      Int count = row.lattice ? *row.lattice : *row.oracle;
      Rational x(xs[i]);
      row.main_term = main_term(rep.alpha_K, ctx, x);
      row.abs_error = abs(Interval(count, prec) - row.main_term);
      row.bound = error_bound(fd, ctx, rep.regulator, x);
      row.internal_bound = proof_internal_bound(fd, ctx, rep.regulator, x);
      row.verdict = certainly_less_equal(row.abs_error, row.bound);
      if (row.lattice && row.oracle) row.verdict = row.verdict && *row.lattice == *row.oracle;
      if (options.lattice && xs[i] <= options.shell_max_x) {
        ShellCount shells = count_ray_class_shells(counter, c, xs[i], ncinv);
        row.shell = shells.count;
        row.shell_bound = shells.bound;
        row.verdict = row.verdict && shells.holds && shells.count == count;
      }
      ok = ok && row.verdict;
      rep.rows.push_back(std::move(row));
    }
    Int last = rep.rows.back().lattice ? *rep.rows.back().lattice : *rep.rows.back().oracle;
    rep.density.push_back(to_double(last) / main_term(rep.alpha_K, ctx, Rational(xs.back())).mid());
  }
  rep.verdict = ok && rep.proof_constant && rep.sum_product;
  return rep;
}

std::string report_tsv(const CountReport& report) {
  std::ostringstream out;
  out << "class\tx\tcount_lattice\tcount_oracle\tmain_term\tabs_error\tbound\tverdict\n";
  for (const auto& row : report.rows) {
    out << row.representative << '\t' << row.x << '\t' << (row.lattice ? row.lattice->str() : "-") << '\t'
        << (row.oracle ? row.oracle->str() : "-") << '\t' << interval_text(row.main_term) << '\t'
        << interval_text(row.abs_error) << '\t' << row.bound.str(8) << '\t' << (row.verdict ? "pass" : "fail")
        << '\n';
  }
  return out.str();
}

std::string report_json(const CountReport& report) {
  using nlohmann::ordered_json;
  auto iv_json = [](const Interval& x) { return ordered_json{{"lo", x.lower()}, {"hi", x.upper()}}; };
  auto ints = [](const std::vector<Int>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& e : v) a.push_back(e.str());
    return a;
  };
  ordered_json j;
  j["field"] = report.field;
  j["modulus"] = report.modulus;
  j["x"] = ints(report.xs);
  ordered_json c;
  c["phi_q"] = report.phi.str();
  c["norm_q"] = report.norm_q.str();
  c["h_Kq"] = report.h_Kq.str();
  c["h_Kq_census"] = report.empirical_h_Kq.str();
  c["mu_q1"] = report.mu_q1.str();
  c["m"] = ints(report.m);
  c["alpha_K"] = iv_json(report.alpha_K);
  c["R_K"] = iv_json(report.regulator);
  c["R_Kq1"] = iv_json(report.regulator_q1);
  c["E_K"] = report.E.str(8);
  c["F_q"] = report.F.str();
  c["ncinv_bound"] = iv_json(report.ncinv_bound);
  ordered_json nc = ordered_json::array();
  for (const auto& v : report.ncinv_exact) nc.push_back(iv_json(v));
  c["ncinv_exact"] = nc;
  j["constants"] = c;
  j["checks"] = {{"proof_constant", report.proof_constant}, {"sum_product", report.sum_product}};
  j["density"] = report.density;
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["class"] = row.representative;
    r["inverse"] = row.inverse;
    r["x"] = row.x.str();
    r["count_lattice"] = row.lattice ? ordered_json(row.lattice->str()) : ordered_json(nullptr);
    r["count_oracle"] = row.oracle ? ordered_json(row.oracle->str()) : ordered_json(nullptr);
    r["count_shells"] = row.shell ? ordered_json(row.shell->str()) : ordered_json(nullptr);
    r["main_term"] = iv_json(row.main_term);
    r["abs_error"] = iv_json(row.abs_error);
    r["bound"] = row.bound.str(8);
    r["internal_bound"] = row.internal_bound.str(8);
    r["shell_bound"] = row.shell_bound ? ordered_json(row.shell_bound->str(8)) : ordered_json(nullptr);
    r["verdict"] = row.verdict ? "pass" : "fail";
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["verdict"] = report.verdict ? "pass" : "fail";
  return j.dump(2) + "\n";
}

}  // namespace raylat
