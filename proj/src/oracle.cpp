#include "raylat/oracle.hpp"

#include "raylat/error.hpp"
#include "raylat/lattice.hpp"
#include "raylat/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace raylat {

namespace {

CoeffVector small_coeffs(const AlgebraicInt& x) {
  CoeffVector c;
  for (const auto& v : x) c.push_back(to_i64(v));
  return c;
}

}  // namespace

IdealCensus enumerate_ideals(const Ring& ring, const Int& bound) {
  IdealCensus census;
  census.label = ring.field().label;
  census.bound = bound;
  for (Int p = 2; p <= bound; ++p) {
    if (!is_prime(to_i64(p))) continue;
    for (auto& prime : ring.primes_above(p)) {
      if (prime.ideal.norm <= bound) census.primes.push_back(std::move(prime));
    }
  }
  // Depth-first over prime indices in increasing order, so each
  // factorization is produced once.
  std::function<void(std::size_t, const CensusEntry&)> extend = [&](std::size_t start, const CensusEntry& cur) {
    census.entries.push_back(cur);
    for (std::size_t i = start; i < census.primes.size(); ++i) {
      const Ideal& p = census.primes[i].ideal;
      // not break: a later prime of degree 1 can have smaller norm
      if (cur.ideal.norm * p.norm > bound) continue;
      CensusEntry next = cur;
      next.ideal = ideal_mul(ring, cur.ideal, p);
      next.factors.emplace_back(static_cast<int>(i), 1);
      int e = 1;
      for (;;) {
        extend(i + 1, next);
        if (next.ideal.norm * p.norm > bound) break;
        next.ideal = ideal_mul(ring, next.ideal, p);
        next.factors.back().second = ++e;
      }
    }
  };
  CensusEntry one;
  one.ideal = unit_ideal(ring.degree());
  extend(0, one);
  std::sort(census.entries.begin(), census.entries.end(),
            [](const CensusEntry& a, const CensusEntry& b) { return a.ideal < b.ideal; });
  return census;
}

RayOracle::RayOracle(const Ring& ring, const Modulus& q, const PrecisionPolicy& policy)
    : ring_(ring), q_(q), policy_(policy) {
  const FieldDescriptor& fd = ring.field();
  emb_ = std::make_unique<Embeddings>(ring, policy.start);

  for (int i = 0; i < emb_->places(); ++i) {
    double f = 1;
    for (const auto& u : fd.units) {
      double a = emb_->abs_sigma(u, i).upper();
      f *= std::max(1.0, a) * std::max(1.0, a);
    }
    radius_factor_.push_back(f * emb_->weight(i));
  }

  // Image of O_K^* in G by closure under the generators.
  std::vector<AlgebraicInt> gens{fd.torsion_gen};
  gens.insert(gens.end(), fd.units.begin(), fd.units.end());
  std::vector<Key> gen_keys;
  for (const auto& g : gens) gen_keys.push_back(key(g));
  std::set<Key> seen{key(ring.one())};
  std::vector<Key> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Key> next;
    for (const auto& k : frontier) {
      for (const auto& g : gen_keys) {
        Key m = key_mul(k, g);
        if (seen.insert(m).second) next.push_back(m);
      }
    }
    frontier = std::move(next);
  }
  image_.assign(seen.begin(), seen.end());
  group_order_ = static_cast<std::size_t>(phi_q(ring, q)) << fd.r1;

  // Wide class representatives coprime to q, from censuses of growing bound.
  wide_reps_.push_back(unit_ideal(ring.degree()));
  Int bound = 16;
  while (Int(wide_reps_.size()) < fd.class_number) {
    if (bound > 1000000) throw Error("oracle.exhausted", "wide class representatives not found below 10^6");
    IdealCensus census = enumerate_ideals(ring, bound);
    for (const auto& e : census.entries) {
      if (Int(wide_reps_.size()) == fd.class_number) break;
      if (!coprime(e.ideal, q.ideal)) continue;
      bool fresh = true;
      for (const auto& c : wide_reps_) fresh = fresh && !same_wide_class(e.ideal, c);
      if (fresh) wide_reps_.push_back(e.ideal);
    }
    bound *= 4;
  }
}

int RayOracle::sign(const AlgebraicInt& x, int place) const {
  return escalate(policy_, [&](long prec) {
    if (prec == emb_->precision()) return emb_->real_sign(x, place);
    return Embeddings(ring_, prec).real_sign(x, place);
  });
}

RayOracle::Key RayOracle::key(const AlgebraicInt& x) const {
  std::vector<int> s;
  for (int i = 0; i < ring_.field().r1; ++i) s.push_back(sign(x, i));
  return {reduce_mod(q_.ideal, x), s};
}

RayOracle::Key RayOracle::key_mul(const Key& a, const Key& b) const {
  std::vector<int> s(a.second.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.second[i] * b.second[i];
  return {reduce_mod(q_.ideal, ring_.mul(a.first, b.first)), s};
}

std::optional<AlgebraicInt> RayOracle::find_generator(const Ideal& a) const {
  if (a.is_unit()) return ring_.one();
  const int n = ring_.degree();
  const auto& tre = emb_->table_re();
  const auto& tim = emb_->table_im();
  const int r1 = emb_->r1();
  auto embed = [&](const CoeffVector& c) {
    RealVector v;
    for (int i = 0; i < emb_->places(); ++i) {
      long double re = 0, im = 0;
      for (int k = 0; k < n; ++k) {
        re += static_cast<long double>(c[k]) * tre[i][k];
        im += static_cast<long double>(c[k]) * tim[i][k];
      }
      v.push_back(re);
      if (i >= r1) v.push_back(im);
    }
    return v;
  };
  const IntMatrix& h = ideal_basis(a);
  Lattice lat;
  for (const auto& row : h) lat.basis.push_back(embed(small_coeffs(row)));
  KzResult kz = kz_basis(lat);
  IntMatrix rows = multiply(kz.transform, h);

  // A generator g can be multiplied by units until
  // |sigma_i(g)| <= N^{1/n} prod_j max(1, |sigma_i(eps_j)|).
  long double scale = std::pow(static_cast<long double>(to_double(a.norm)), 2.0L / n);
  long double radius2 = 0;
  for (double f : radius_factor_) radius2 += scale * f;
  radius2 *= 1 + 1e-9L;

  std::optional<AlgebraicInt> found;
  RealVector origin(lat.basis[0].size(), 0);
  // The visitor cannot stop the search early; it only records the first hit.
  enumerate_ball(kz.lattice.basis, origin, radius2, [&](const CoeffVector& z) {
    if (found) return;
    AlgebraicInt x = ring_.zero();
    for (std::size_t l = 0; l < z.size(); ++l) {
      if (z[l] == 0) continue;
      for (int k = 0; k < n; ++k) x[k] += Int(z[l]) * rows[l][k];
    }
    if (ring_.is_zero(x)) return;
    if (abs(ring_.norm(x)) == a.norm) found = x;
  });
  return found;
}

bool RayOracle::same_wide_class(const Ideal& a, const Ideal& b) const {
  return principal(ideal_mul(ring_, a, ideal_adjoint(ring_, b)));
}

RayInvariant RayOracle::invariant(const Ideal& a) const {
  if (!coprime(a, q_.ideal)) throw Error("oracle.coprime", "ideal " + ideal_string(a) + " is not coprime to q");
  for (std::size_t i = 0; i < wide_reps_.size(); ++i) {
    auto g = find_generator(ideal_mul(ring_, a, wide_reps_[i]));
    if (!g) continue;
    Key k = key(*g);
    Key best = k;
    for (const auto& h : image_) best = std::min(best, key_mul(k, h));
    return {static_cast<int>(i), best.first, best.second};
  }
  throw Error("oracle.unclassified", "no wide class representative makes " + ideal_string(a) + " principal");
}

bool RayOracle::ray_equivalent(const Ideal& a, const Ideal& b) const { return invariant(a) == invariant(b); }

void classify(const RayOracle& oracle, IdealCensus& census) {
  std::map<RayInvariant, int> buckets;
  census.representatives.clear();
  for (std::size_t i = 0; i < census.entries.size(); ++i) {
    CensusEntry& e = census.entries[i];
    e.coprime = coprime(e.ideal, oracle.modulus().ideal);
    e.bucket = -1;
    if (!e.coprime) continue;
    RayInvariant inv = oracle.invariant(e.ideal);
    auto [it, fresh] = buckets.emplace(inv, static_cast<int>(buckets.size()));
    if (fresh) census.representatives.push_back(i);
    e.bucket = it->second;
  }
}

Int empirical_hKq(const IdealCensus& census) { return Int(census.representatives.size()); }

Ideal inverse_class_representative(const RayOracle& oracle, const IdealCensus& census, const Ideal& b) {
  RayInvariant target = oracle.invariant(unit_ideal(oracle.ring().degree()));
  for (const auto& e : census.entries) {
    if (!coprime(e.ideal, oracle.modulus().ideal)) continue;
    if (oracle.invariant(ideal_mul(oracle.ring(), b, e.ideal)) == target) return e.ideal;
  }
  throw Error("oracle.exhausted", "no inverse class representative for " + ideal_string(b) + " in the census");
}

std::vector<Int> bucket_counts(const IdealCensus& census, int bucket, const std::vector<Int>& xs) {
  std::vector<Int> out(xs.size(), 0);
  for (const auto& e : census.entries) {
    if (e.bucket != bucket) continue;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (e.ideal.norm <= xs[i]) ++out[i];
    }
  }
  return out;
}

std::string census_tsv(const IdealCensus& census) {
  std::ostringstream out;
  out << "norm\thnf\tbucket\n";
  for (const auto& e : census.entries) {
    out << e.ideal.norm << '\t';
    bool first = true;
    for (const auto& row : e.ideal.hnf) {
      for (const auto& v : row) {
        out << (first ? "" : ",") << v;
        first = false;
      }
    }
    out << '\t' << e.bucket << '\n';
  }
  return out.str();
}

}  // namespace raylat
