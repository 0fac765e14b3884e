#include "raylat/algebra.hpp"

#include "raylat/error.hpp"
#include "raylat/matrix.hpp"

#include <sstream>

namespace raylat {

namespace {

std::optional<AlgebraicInt> integral(const RationalVector& v) {
  AlgebraicInt out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (boost::multiprecision::denominator(e) != 1) return std::nullopt;
    out.push_back(boost::multiprecision::numerator(e));
  }
  return out;
}

Int pivot_product(const IntMatrix& h) {
  Int n = 1;
  for (std::size_t i = 0; i < h.size(); ++i) n *= h[i][i];
  return n;
}

Ideal from_rows(IntMatrix rows, const Int& modulus, int n) {
  Ideal out;
  out.hnf = hnf(std::move(rows), modulus);
  if (out.hnf.size() != static_cast<std::size_t>(n)) {
    throw Error("algebra.ideal", "generators do not span a full-rank lattice");
  }
  out.norm = pivot_product(out.hnf);
  return out;
}

}  // namespace

bool Ideal::operator<(const Ideal& other) const {
  if (norm != other.norm) return norm < other.norm;
  return hnf < other.hnf;
}

Ring::Ring(const FieldDescriptor& fd) : fd_(fd), n_(fd.degree), basis_(fd.integral_basis) {
  basis_inv_ = inverse(basis_);
  RationalVector unit(static_cast<std::size_t>(n_), 0);
  unit[0] = 1;
  auto one = integral(row_times(unit, basis_inv_));
  if (!one) {
    closed_ = false;
    one_ = zero();
  } else {
    one_ = *one;
  }
  table_.assign(static_cast<std::size_t>(n_), std::vector<AlgebraicInt>(static_cast<std::size_t>(n_)));
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      RationalVector prod = poly_rem_monic(poly_mul(basis_[i], basis_[j]), fd_.poly);
      auto coords = integral(row_times(prod, basis_inv_));
      if (!coords) {
        closed_ = false;
        coords = zero();
      }
      table_[i][j] = *coords;
      table_[j][i] = *coords;
    }
  }
}

AlgebraicInt Ring::from_int(const Int& k) const { return scale(k, one_); }

std::optional<AlgebraicInt> Ring::from_power_basis(const RationalVector& coeffs) const {
  RationalVector c = coeffs;
  if (c.size() > static_cast<std::size_t>(n_)) c = poly_rem_monic(c, fd_.poly);
  c.resize(static_cast<std::size_t>(n_), 0);
  return integral(row_times(c, basis_inv_));
}

RationalVector Ring::to_power_basis(const AlgebraicInt& x) const {
  RationalVector xr(x.begin(), x.end());
  return row_times(xr, basis_);
}

AlgebraicInt Ring::theta() const {
  RationalVector c(static_cast<std::size_t>(n_), 0);
  c[1] = 1;
  auto t = from_power_basis(c);
  if (!t) throw Error("algebra.basis", "theta is not in the declared ring of integers");
  return *t;
}

AlgebraicInt Ring::add(const AlgebraicInt& a, const AlgebraicInt& b) const {
  AlgebraicInt out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

AlgebraicInt Ring::sub(const AlgebraicInt& a, const AlgebraicInt& b) const {
  AlgebraicInt out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

AlgebraicInt Ring::neg(const AlgebraicInt& a) const {
  AlgebraicInt out = a;
  for (auto& e : out) e = -e;
  return out;
}

AlgebraicInt Ring::scale(const Int& k, const AlgebraicInt& a) const {
  AlgebraicInt out = a;
  for (auto& e : out) e *= k;
  return out;
}

AlgebraicInt Ring::mul(const AlgebraicInt& a, const AlgebraicInt& b) const {
  AlgebraicInt out = zero();
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      Int c = a[i] * b[j];
      const auto& t = table_[i][j];
      for (int k = 0; k < n_; ++k) {
        if (t[k] != 0) out[k] += c * t[k];
      }
    }
  }
  return out;
}

AlgebraicInt Ring::pow(const AlgebraicInt& a, unsigned e) const {
  AlgebraicInt result = one_;
  AlgebraicInt base = a;
  while (e) {
    if (e & 1u) result = mul(result, base);
    e >>= 1u;
    if (e) base = mul(base, base);
  }
  return result;
}

AlgebraicInt Ring::unit_pow(const AlgebraicInt& a, const Int& e) const {
  if (e >= 0) return pow(a, static_cast<unsigned>(e));
  auto inv = divide(one_, a);
  if (!inv) throw Error("algebra.unit", "negative power of a non-unit");
  return pow(*inv, static_cast<unsigned>(-e));
}

std::optional<AlgebraicInt> Ring::divide(const AlgebraicInt& a, const AlgebraicInt& b) const {
  IntMatrix m = mult_matrix(b);
  RationalMatrix mr(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) mr[i].assign(m[i].begin(), m[i].end());
  RationalMatrix inv;
  try {
    inv = inverse(mr);
  } catch (const Error&) {
    return std::nullopt;
  }
  RationalVector ar(a.begin(), a.end());
  return integral(row_times(ar, inv));
}

IntMatrix Ring::mult_matrix(const AlgebraicInt& a) const {
  IntMatrix m(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    AlgebraicInt w = zero();
    w[i] = 1;
    m[i] = mul(w, a);
  }
  return m;
}

Int Ring::norm(const AlgebraicInt& a) const { return determinant(mult_matrix(a)); }

Int Ring::trace(const AlgebraicInt& a) const {
  IntMatrix m = mult_matrix(a);
  Int t = 0;
  for (int i = 0; i < n_; ++i) t += m[i][i];
  return t;
}

bool Ring::is_zero(const AlgebraicInt& a) const {
  for (const auto& e : a) {
    if (e != 0) return false;
  }
  return true;
}

std::vector<PrimeIdeal> Ring::primes_above(const Int& p) const {
  std::vector<PrimeIdeal> out;
  if (fd_.index % p == 0) {
    auto it = fd_.prime_splitting.find(p);
    if (it == fd_.prime_splitting.end()) {
      throw Error("algebra.splitting", "no splitting override for index divisor " + p.str());
    }
    for (const auto& o : it->second) {
      auto g = from_power_basis(o.gen_poly);
      if (!g) throw Error("algebra.splitting", "override generator is not integral for p = " + p.str());
      PrimeIdeal prime;
      prime.p = p;
      prime.e = o.e;
      prime.f = o.f;
      prime.generator = *g;
      prime.ideal = ideal_from_generators(*this, {from_int(p), *g});
      if (prime.ideal.norm != ipow(p, static_cast<unsigned>(o.f))) {
        throw Error("algebra.splitting", "override ideal above " + p.str() + " has norm " + prime.ideal.norm.str());
      }
      out.push_back(std::move(prime));
    }
    return out;
  }
  for (const auto& factor : factor_mod_p(fd_.poly, to_i64(p))) {
    RationalVector coeffs(factor.factor.begin(), factor.factor.end());
    auto g = from_power_basis(coeffs);
    if (!g) throw Error("algebra.splitting", "theta is not integral over the declared basis");
    PrimeIdeal prime;
    prime.p = p;
    prime.e = factor.multiplicity;
    prime.f = static_cast<int>(factor.factor.size()) - 1;
    prime.generator = *g;
    prime.ideal = ideal_from_generators(*this, {from_int(p), *g});
    out.push_back(std::move(prime));
  }
  return out;
}

Ideal unit_ideal(int n) {
  Ideal out;
  out.hnf = identity_matrix(static_cast<std::size_t>(n));
  out.norm = 1;
  return out;
}

Ideal ideal_from_generators(const Ring& ring, const std::vector<AlgebraicInt>& gens) {
  Int modulus = 0;
  for (const auto& g : gens) {
    if (!ring.is_zero(g)) {
      modulus = abs(ring.norm(g));
      break;
    }
  }
  if (modulus == 0) throw Error("algebra.ideal", "all generators are zero");
  if (modulus == 1) return unit_ideal(ring.degree());
  IntMatrix rows;
  for (const auto& g : gens) {
    if (ring.is_zero(g)) continue;
    for (auto& row : ring.mult_matrix(g)) rows.push_back(std::move(row));
  }
  return from_rows(std::move(rows), modulus, ring.degree());
}

Ideal principal_ideal(const Ring& ring, const AlgebraicInt& a) { return ideal_from_generators(ring, {a}); }

Ideal ideal_mul(const Ring& ring, const Ideal& a, const Ideal& b) {
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  IntMatrix rows;
  for (const auto& x : a.hnf) {
    for (const auto& y : b.hnf) rows.push_back(ring.mul(x, y));
  }
  return from_rows(std::move(rows), a.norm * b.norm, ring.degree());
}

Ideal ideal_pow(const Ring& ring, const Ideal& a, unsigned e) {
  Ideal result = unit_ideal(ring.degree());
  for (unsigned i = 0; i < e; ++i) result = ideal_mul(ring, result, a);
  return result;
}

Ideal ideal_add(const Ideal& a, const Ideal& b) {
  IntMatrix rows = a.hnf;
  rows.insert(rows.end(), b.hnf.begin(), b.hnf.end());
  Int g = gcd(a.norm, b.norm);
  if (g == 1) return unit_ideal(static_cast<int>(a.hnf.size()));
  return from_rows(std::move(rows), g, static_cast<int>(a.hnf.size()));
}

bool ideal_contains(const Ideal& a, const AlgebraicInt& x) { return solve_hnf(a.hnf, x).has_value(); }

bool ideal_divides(const Ideal& a, const Ideal& b) {
  for (const auto& row : b.hnf) {
    if (!ideal_contains(a, row)) return false;
  }
  return true;
}

bool coprime(const Ideal& a, const Ideal& b) { return ideal_add(a, b).is_unit(); }

Ideal ideal_adjoint(const Ring& ring, const Ideal& a) {
  if (a.is_unit()) return a;
  const int n = ring.degree();
  IntMatrix big(static_cast<std::size_t>(n));
  for (const auto& g : a.hnf) {
    IntMatrix m = ring.mult_matrix(g);
    for (int i = 0; i < n; ++i) big[i].insert(big[i].end(), m[i].begin(), m[i].end());
  }
  IntMatrix basis = kernel_mod(big, a.norm);
  Ideal out;
  out.hnf = hnf(std::move(basis), a.norm);
  out.norm = pivot_product(out.hnf);
  return out;
}

const IntMatrix& ideal_basis(const Ideal& a) { return a.hnf; }

AlgebraicInt reduce_mod(const Ideal& a, const AlgebraicInt& x) { return reduce_hnf(a.hnf, x); }

AlgebraicInt crt_one(const Ring& ring, const Ideal& c, const Ideal& q) {
  if (q.is_unit()) return reduce_mod(c, ring.zero());
  const int n = ring.degree();
  IntMatrix stacked = c.hnf;
  stacked.insert(stacked.end(), q.hnf.begin(), q.hnf.end());
  HnfTransform t = hnf_with_transform(stacked);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (t.h[i][j] != (i == j ? 1 : 0)) throw Error("algebra.coprime", "ideals are not coprime");
    }
  }
  AlgebraicInt x = ring.zero();
  const AlgebraicInt& one = ring.one();
  for (int i = 0; i < n; ++i) {
    if (one[i] == 0) continue;
    for (int k = 0; k < n; ++k) {
      Int coef = one[i] * t.u[i][k];
      if (coef == 0) continue;
      for (int j = 0; j < n; ++j) x[j] += coef * c.hnf[k][j];
    }
  }
  return reduce_mod(ideal_mul(ring, c, q), x);
}

std::string ideal_string(const Ideal& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.hnf.size(); ++i) {
    if (i) out << ';';
    for (std::size_t j = 0; j < a.hnf[i].size(); ++j) {
      if (j) out << ',';
      out << a.hnf[i][j];
    }
  }
  return out.str();
}

Modulus make_modulus(const Ring& ring, const std::vector<std::pair<PrimeIdeal, int>>& factors) {
  Modulus m;
  m.ideal = unit_ideal(ring.degree());
  m.factors = factors;
  for (const auto& [prime, e] : factors) {
    m.ideal = ideal_mul(ring, m.ideal, ideal_pow(ring, prime.ideal, static_cast<unsigned>(e)));
  }
  std::ostringstream spec;
  if (factors.empty()) spec << "unit";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& prime = factors[i].first;
    auto primes = ring.primes_above(prime.p);
    std::size_t pos = 0;
    while (pos < primes.size() && !(primes[pos].ideal == prime.ideal)) ++pos;
    if (i) spec << ',';
    spec << prime.p << ':' << pos << ':' << factors[i].second;
  }
  m.spec = spec.str();
  return m;
}

Modulus parse_modulus(const Ring& ring, const std::string& spec) {
  if (spec == "unit" || spec.empty()) return make_modulus(ring, {});
  std::vector<std::pair<PrimeIdeal, int>> factors;
  std::stringstream items(spec);
  std::string item;
  while (std::getline(items, item, ',')) {
    std::stringstream parts(item);
    std::string ps, is, es;
    if (!std::getline(parts, ps, ':') || !std::getline(parts, is, ':') || !std::getline(parts, es, ':')) {
      throw Error("algebra.modulus", "modulus entries must look like p:i:e, got '" + item + "'");
    }
    Int p, i, e;
    try {
      p = parse_int(ps);
      i = parse_int(is);
      e = parse_int(es);
    } catch (const Error&) {
      throw Error("algebra.modulus", "modulus entries must be integers, got '" + item + "'");
    }
    if (p < 2 || p > 1000000 || !is_prime(to_i64(p))) throw Error("algebra.modulus", "not a prime: " + ps);
    if (e < 1 || e > 64) throw Error("algebra.modulus", "exponent out of range in '" + item + "'");
    auto primes = ring.primes_above(p);
    if (i < 0 || i >= Int(primes.size())) {
      throw Error("algebra.modulus", "there are " + std::to_string(primes.size()) + " primes above " + ps);
    }
    const PrimeIdeal& prime = primes[static_cast<std::size_t>(i)];
    for (const auto& [seen, se] : factors) {
      if (seen.ideal == prime.ideal) throw Error("algebra.modulus", "prime listed twice: " + item);
    }
    factors.emplace_back(prime, static_cast<int>(e));
  }
  Modulus m = make_modulus(ring, factors);
  m.spec = spec;
  return m;
}

Int phi_q(const Ring& ring, const Ideal& q, const std::vector<std::pair<PrimeIdeal, int>>& factors) {
  Ideal product = unit_ideal(ring.degree());
  Int phi = 1;
  for (const auto& [prime, e] : factors) {
    product = ideal_mul(ring, product, ideal_pow(ring, prime.ideal, static_cast<unsigned>(e)));
    const Int& np = prime.ideal.norm;
    phi *= ipow(np, static_cast<unsigned>(e - 1)) * (np - 1);
  }
  if (!(product == q)) throw Error("algebra.modulus", "factorization does not multiply to q");
  return phi;
}

Int phi_q(const Ring& ring, const Modulus& q) { return phi_q(ring, q.ideal, q.factors); }

}  // namespace raylat
