#include "raylat/unitlog.hpp"

#include "raylat/error.hpp"
#include "raylat/lattice.hpp"
#include "raylat/matrix.hpp"

#include <cmath>
#include <map>

namespace raylat {

namespace {

using Matrix = std::vector<std::vector<Interval>>;

Interval interval_det(Matrix a) {
  const std::size_t n = a.size();
  long prec = a[0][0].precision();
  Interval det(1L, prec);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    double best = 0;
    for (std::size_t i = k; i < n; ++i) {
      if (a[i][k].contains_zero()) continue;
      double mag = std::min(std::fabs(a[i][k].lower()), std::fabs(a[i][k].upper()));
      if (p == n || mag > best) {
        p = i;
        best = mag;
      }
    }
    if (p == n) throw Indeterminate("no certified pivot in determinant");
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Interval f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

Matrix interval_inverse(Matrix a) {
  const std::size_t n = a.size();
  long prec = a[0][0].precision();
  Matrix inv(n, std::vector<Interval>(n, Interval(prec)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Interval(1L, prec);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    double best = 0;
    for (std::size_t i = k; i < n; ++i) {
      if (a[i][k].contains_zero()) continue;
      double mag = std::min(std::fabs(a[i][k].lower()), std::fabs(a[i][k].upper()));
      if (p == n || mag > best) {
        p = i;
        best = mag;
      }
    }
    if (p == n) throw Indeterminate("no certified pivot in inverse");
    std::swap(a[p], a[k]);
    std::swap(inv[p], inv[k]);
    Interval d = a[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      a[k][j] /= d;
      inv[k][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      Interval f = a[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

using GroupKey = std::pair<IntVector, std::vector<int>>;

GroupKey group_image(const Embeddings& emb, const Ideal& q, const AlgebraicInt& x) {
  return {reduce_mod(q, x), sign_vector(emb, x)};
}

GroupKey group_mul(const Ring& ring, const Ideal& q, const GroupKey& a, const GroupKey& b) {
  std::vector<int> s(a.second.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.second[i] * b.second[i];
  return {reduce_mod(q, ring.mul(a.first, b.first)), s};
}

AlgebraicInt realize(const Ring& ring, const FieldDescriptor& fd, const IntVector& unit_exp, const Int& torsion_exp) {
  AlgebraicInt x = ring.one();
  for (std::size_t k = 0; k < unit_exp.size(); ++k) {
    if (unit_exp[k] != 0) x = ring.mul(x, ring.unit_pow(fd.units[k], unit_exp[k]));
  }
  Int t = mod_floor(torsion_exp, fd.torsion_order);
  if (t != 0) x = ring.mul(x, ring.pow(fd.torsion_gen, static_cast<unsigned>(t)));
  return x;
}

}  // namespace

Int RayContext::m_product() const {
  Int p = 1;
  for (const auto& v : m) p *= v;
  return p;
}

std::vector<int> sign_vector(const Embeddings& emb, const AlgebraicInt& x) {
  std::vector<int> s;
  for (int i = 0; i < emb.r1(); ++i) s.push_back(emb.real_sign(x, i));
  return s;
}

Interval unit_regulator(const Embeddings& emb, const std::vector<AlgebraicInt>& units) {
  std::vector<std::vector<Interval>> logs;
  for (const auto& u : units) logs.push_back(emb.log_vector(u));
  return q1_regulator(emb, logs);
}

RayContext compute_Uq1(const Ring& ring, const Embeddings& emb, const Modulus& q) {
  const FieldDescriptor& fd = ring.field();
  const int r = fd.unit_rank();
  RayContext ctx;
  ctx.modulus = q;
  ctx.phi = phi_q(ring, q);
  ctx.r = r;

  // Generators of O_K^*: zeta first, then the fundamental units.
  std::vector<AlgebraicInt> gens{fd.torsion_gen};
  gens.insert(gens.end(), fd.units.begin(), fd.units.end());
  const std::size_t k = gens.size();

  // Grow the image subgroup one generator at a time; the first power of the
  // new generator that falls into the current subgroup gives a relation.
  std::map<GroupKey, IntVector> subgroup;
  GroupKey identity = group_image(emb, q.ideal, ring.one());
  subgroup[identity] = IntVector(k, 0);
  IntMatrix relations(k, IntVector(k, 0));
  for (std::size_t t = 0; t < k; ++t) {
    GroupKey g = group_image(emb, q.ideal, gens[t]);
    GroupKey power = g;
    Int d = 1;
    while (!subgroup.count(power)) {
      power = group_mul(ring, q.ideal, power, g);
      ++d;
    }
    const IntVector& back = subgroup[power];
    for (std::size_t j = 0; j < k; ++j) relations[t][j] = -back[j];
    relations[t][t] += d;
    std::map<GroupKey, IntVector> grown = subgroup;
    GroupKey gs = identity;
    for (Int s = 1; s < d; ++s) {
      gs = group_mul(ring, q.ideal, gs, g);
      for (const auto& [key, exps] : subgroup) {
        IntVector e = exps;
        e[t] += s;
        grown.emplace(group_mul(ring, q.ideal, gs, key), std::move(e));
      }
    }
    subgroup = std::move(grown);
  }

  // relations is lower triangular with diagonal d_t; row 0 describes the
  // torsion part of U_{q1}, rows 1..r give a basis of its free part.
  const Int& d0 = relations[0][0];
  ctx.mu_q1 = fd.torsion_order / d0;
  ctx.torsion_generator = ring.pow(fd.torsion_gen, static_cast<unsigned>(d0));
  ctx.unit_index = Int(subgroup.size());
  ctx.free_index = ctx.unit_index / d0;
  for (int j = 1; j <= r; ++j) {
    IntVector exps(relations[j].begin() + 1, relations[j].end());
    ctx.unit_exponents.push_back(exps);
    ctx.torsion_exponents.push_back(mod_floor(relations[j][0], fd.torsion_order));
    ctx.generators.push_back(realize(ring, fd, exps, relations[j][0]));
  }
  for (const auto& eta : ctx.generators) {
    if (!(group_image(emb, q.ideal, eta) == identity)) {
      throw Error("unitlog.kernel", "generator of U_q1 is not 1 mod* q1");
    }
  }
  return ctx;
}

std::vector<std::vector<Interval>> generator_logs(const Ring& ring, const Embeddings& emb, const RayContext& ctx) {
  const FieldDescriptor& fd = ring.field();
  long prec = emb.precision();
  std::vector<std::vector<Interval>> unit_logs;
  for (const auto& u : fd.units) unit_logs.push_back(emb.log_vector(u));
  std::vector<std::vector<Interval>> out;
  for (const auto& exps : ctx.unit_exponents) {
    std::vector<Interval> row(static_cast<std::size_t>(emb.places()), Interval(prec));
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (exps[k] == 0) continue;
      Interval c(exps[k], prec);
      for (int i = 0; i < emb.places(); ++i) row[i] += c * unit_logs[k][i];
    }
    out.push_back(std::move(row));
  }
  return out;
}

Interval q1_regulator(const Embeddings& emb, const std::vector<std::vector<Interval>>& logs) {
  const int r = emb.places() - 1;
  long prec = emb.precision();
  if (static_cast<int>(logs.size()) != r) {
    throw Error("unitlog.dependent", std::to_string(logs.size()) + " generators given for unit rank " +
                                         std::to_string(r) + "; they cannot be independent generators");
  }
  if (r == 0) return Interval(1L, prec);
  auto det_without = [&](int dropped) {
    Matrix m;
    for (int i = 0; i <= r; ++i) {
      if (i == dropped) continue;
      std::vector<Interval> row;
      for (int j = 0; j < r; ++j) row.push_back(Interval(static_cast<long>(emb.weight(i)), prec) * logs[j][i]);
      m.push_back(std::move(row));
    }
    return abs(interval_det(std::move(m)));
  };
  Interval main = det_without(r);
  if (main.contains_zero()) throw Indeterminate("q1-regulator interval contains zero");
  for (int d = 0; d < r; ++d) {
    if (!det_without(d).overlaps(main)) {
      throw Error("unitlog.regulator", "regulator depends on the omitted place");
    }
  }
  return main;
}

Interval q1_regulator(const Ring& ring, const Embeddings& emb, const RayContext& ctx) {
  return q1_regulator(emb, generator_logs(ring, emb, ctx));
}

std::vector<Int> compute_m(const std::vector<std::vector<Interval>>& logs) {
  std::vector<Int> m;
  for (const auto& row : logs) {
    Int best = certified_ceil(row[0]);
    for (std::size_t i = 1; i < row.size(); ++i) best = std::max(best, certified_ceil(row[i]));
    m.push_back(best);
  }
  return m;
}

RayContext kz_reduce_unit_generators(const Ring& ring, const Embeddings& emb, const RayContext& ctx) {
  RayContext out = ctx;
  if (ctx.r == 0) return out;
  const FieldDescriptor& fd = ring.field();
  auto logs = generator_logs(ring, emb, ctx);
  Lattice lat;
  for (const auto& row : logs) {
    RealVector v;
    for (int i = 0; i < emb.places(); ++i) {
      v.push_back(static_cast<long double>(emb.weight(i)) * static_cast<long double>(row[i].mid()));
    }
    lat.basis.push_back(std::move(v));
  }
  KzResult kz = kz_basis(lat);
  out.unit_exponents = multiply(kz.transform, ctx.unit_exponents);
  out.torsion_exponents.clear();
  out.generators.clear();
  for (int j = 0; j < ctx.r; ++j) {
    Int t = 0;
    for (int k = 0; k < ctx.r; ++k) t += kz.transform[j][k] * ctx.torsion_exponents[k];
    t = mod_floor(t, fd.torsion_order);
    out.torsion_exponents.push_back(t);
    out.generators.push_back(realize(ring, fd, out.unit_exponents[j], t));
  }
  out.m = compute_m(generator_logs(ring, emb, out));
  return out;
}

Int ray_class_number(const FieldDescriptor& fd, const RayContext& ctx) {
  Int num = ipow(Int(2), static_cast<unsigned>(fd.r1)) * ctx.phi * fd.class_number;
  if (num % ctx.unit_index != 0) {
    throw Error("unitlog.inconsistent", "2^r1 phi(q) h_K is not divisible by [O_K^*:U_q1]");
  }
  Int h = num / ctx.unit_index;
  if (ctx.narrow_class_number > 0 && (h < ctx.narrow_class_number || h > ctx.phi * ctx.narrow_class_number)) {
    throw Error("unitlog.inconsistent", "h_{K,q} = " + h.str() + " violates h_{K,1} <= h_{K,q} <= phi(q) h_{K,1}");
  }
  return h;
}

RayContext make_ray_context(const Ring& ring, const Modulus& q, const PrecisionPolicy& policy) {
  return escalate(policy, [&](long prec) {
    Embeddings emb(ring, prec);
    RayContext narrow = compute_Uq1(ring, emb, make_modulus(ring, {}));
    RayContext ctx = compute_Uq1(ring, emb, q);
    ctx = kz_reduce_unit_generators(ring, emb, ctx);
    q1_regulator(ring, emb, ctx);
    const FieldDescriptor& fd = ring.field();
    ctx.narrow_class_number = ipow(Int(2), static_cast<unsigned>(fd.r1)) * fd.class_number / narrow.unit_index;
    ctx.ray_class_number = ray_class_number(fd, ctx);
    return ctx;
  });
}

LogDomain::LogDomain(const Ring& ring, const Embeddings& emb, const RayContext& ctx)
    : ring_(ring), emb_(emb), m_(ctx.m), r_(ctx.r) {
  logs_ = generator_logs(ring, emb, ctx);
  if (r_ > 0) {
    Matrix a(static_cast<std::size_t>(r_));
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < r_; ++j) a[i].push_back(logs_[j][i]);
    }
    inverse_ = interval_inverse(std::move(a));
  }
}

DomainCoordinates LogDomain::coordinates(const std::vector<Interval>& abs_values) const {
  long prec = emb_.precision();
  DomainCoordinates out;
  out.norm = Interval(1L, prec);
  std::vector<Interval> logs;
  for (int i = 0; i < emb_.places(); ++i) {
    const Interval& a = abs_values[static_cast<std::size_t>(i)];
    out.norm *= emb_.weight(i) == 1 ? a : square(a);
    logs.push_back(log(a));
  }
  Interval shift = log(out.norm) / Interval(static_cast<long>(emb_.degree()), prec);
  for (int j = 0; j < r_; ++j) {
    Interval s(prec);
    for (int i = 0; i < r_; ++i) s += inverse_[j][i] * (logs[i] - shift);
    out.alpha.push_back(s);
  }
  return out;
}

DomainCoordinates LogDomain::coordinates(const AlgebraicInt& x) const {
  long prec = emb_.precision();
  Int nx = abs(ring_.norm(x));
  if (nx == 0) throw Error("unitlog.zero", "domain coordinates of zero");
  DomainCoordinates out;
  out.exact_norm = nx;
  out.norm = Interval(nx, prec);
  Interval shift = log(out.norm) / Interval(static_cast<long>(emb_.degree()), prec);
  std::vector<Interval> logs = emb_.log_vector(x);
  for (int j = 0; j < r_; ++j) {
    Interval s(prec);
    for (int i = 0; i < r_; ++i) s += inverse_[j][i] * (logs[i] - shift);
    out.alpha.push_back(s);
  }
  return out;
}

std::vector<Interval> LogDomain::beta_twist(const std::vector<Int>& k) const {
  long prec = emb_.precision();
  if (static_cast<int>(k.size()) != r_) throw Error("unitlog.range", "twist vector has the wrong length");
  for (int j = 0; j < r_; ++j) {
    if (k[j] < 0 || k[j] >= m_[j]) throw Error("unitlog.range", "twist index out of range [0, m_j)");
  }
  std::vector<Interval> out;
  for (int i = 0; i < emb_.places(); ++i) {
    Interval e(prec);
    for (int j = 0; j < r_; ++j) {
      if (k[j] != 0) e += Interval(Rational(k[j], m_[j]), prec) * logs_[j][i];
    }
    out.push_back(exp(-e));
  }
  return out;
}

DomainCoordinates domain_coordinates(const LogDomain& domain, const AlgebraicInt& x) {
  return domain.coordinates(x);
}

std::vector<Interval> beta_twist(const LogDomain& domain, const std::vector<Int>& k) {
  return domain.beta_twist(k);
}

}  // namespace raylat
