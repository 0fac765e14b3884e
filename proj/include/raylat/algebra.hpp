#pragma once

#include "raylat/fielddata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace raylat {

/// Element of O_K as integer coordinates over the integral basis.
using AlgebraicInt = IntVector;

/// Integral ideal: row-style HNF of a full-rank sublattice of O_K.
struct Ideal {
  IntMatrix hnf;
  Int norm;

  bool operator==(const Ideal& other) const { return hnf == other.hnf; }
  bool operator<(const Ideal& other) const;
  bool is_unit() const { return norm == 1; }
};

struct PrimeIdeal {
  Ideal ideal;
  Int p;
  int e = 1;
  int f = 1;
  AlgebraicInt generator;  // P = (p, generator)
};

/// O_K with its multiplication table.
class Ring {
 public:
  explicit Ring(const FieldDescriptor& fd);

  const FieldDescriptor& field() const { return fd_; }
  int degree() const { return n_; }

  AlgebraicInt zero() const { return AlgebraicInt(static_cast<std::size_t>(n_), 0); }
  const AlgebraicInt& one() const { return one_; }
  AlgebraicInt from_int(const Int& k) const;
  /// Element with the given power-basis coefficients; nullopt if not in O_K.
  std::optional<AlgebraicInt> from_power_basis(const RationalVector& coeffs) const;
  RationalVector to_power_basis(const AlgebraicInt& x) const;
  /// theta as an element of O_K.
  AlgebraicInt theta() const;

  AlgebraicInt add(const AlgebraicInt& a, const AlgebraicInt& b) const;
  AlgebraicInt sub(const AlgebraicInt& a, const AlgebraicInt& b) const;
  AlgebraicInt neg(const AlgebraicInt& a) const;
  AlgebraicInt scale(const Int& k, const AlgebraicInt& a) const;
  AlgebraicInt mul(const AlgebraicInt& a, const AlgebraicInt& b) const;
  AlgebraicInt pow(const AlgebraicInt& a, unsigned e) const;
  /// Power with a possibly negative exponent; a must be a unit when e < 0.
  AlgebraicInt unit_pow(const AlgebraicInt& a, const Int& e) const;
  /// a / b when the quotient lies in O_K.
  std::optional<AlgebraicInt> divide(const AlgebraicInt& a, const AlgebraicInt& b) const;

  /// Rows: coordinates of a * omega_i.
  IntMatrix mult_matrix(const AlgebraicInt& a) const;
  Int norm(const AlgebraicInt& a) const;
  Int trace(const AlgebraicInt& a) const;
  bool is_zero(const AlgebraicInt& a) const;

  /// True when every structure constant is integral, i.e. the declared basis
  /// is closed under multiplication.
  bool closed() const { return closed_; }
  const RationalMatrix& basis_to_power() const { return basis_; }

  /// Prime ideals above p. Dedekind factorization when p does not divide the
  /// index, otherwise the override table in file order. Dedekind factors are
  /// ordered by degree, then by their coefficients from the constant term up.
  std::vector<PrimeIdeal> primes_above(const Int& p) const;

 private:
  FieldDescriptor fd_;
  int n_;
  RationalMatrix basis_;      // omega_i in the power basis
  RationalMatrix basis_inv_;  // power basis in terms of omega
  std::vector<std::vector<AlgebraicInt>> table_;
  AlgebraicInt one_;
  bool closed_ = true;
};

Ideal unit_ideal(int n);
Ideal ideal_from_generators(const Ring& ring, const std::vector<AlgebraicInt>& gens);
Ideal principal_ideal(const Ring& ring, const AlgebraicInt& a);
Ideal ideal_mul(const Ring& ring, const Ideal& a, const Ideal& b);
Ideal ideal_pow(const Ring& ring, const Ideal& a, unsigned e);
Ideal ideal_add(const Ideal& a, const Ideal& b);
bool ideal_contains(const Ideal& a, const AlgebraicInt& x);
bool ideal_divides(const Ideal& a, const Ideal& b);  // b subset of a
bool coprime(const Ideal& a, const Ideal& b);
/// N(a) * a^{-1}, an integral ideal in the inverse class.
Ideal ideal_adjoint(const Ring& ring, const Ideal& a);
/// Elements of the Z-basis, i.e. the HNF rows.
const IntMatrix& ideal_basis(const Ideal& a);
/// Canonical representative of x modulo the ideal.
AlgebraicInt reduce_mod(const Ideal& a, const AlgebraicInt& x);
/// An element of c congruent to 1 modulo q, for coprime c and q.
AlgebraicInt crt_one(const Ring& ring, const Ideal& c, const Ideal& q);
std::string ideal_string(const Ideal& a);

/// q = prod P_i^{e_i} with its factorization retained.
struct Modulus {
  Ideal ideal;
  std::vector<std::pair<PrimeIdeal, int>> factors;
  std::string spec;  // "unit" or "p:i:e,..."

  bool is_unit() const { return factors.empty(); }
};

/// Parses "unit" or "p:i:e,p:i:e" where i is the 0-based position of the prime
/// in primes_above(p).
Modulus parse_modulus(const Ring& ring, const std::string& spec);
Modulus make_modulus(const Ring& ring, const std::vector<std::pair<PrimeIdeal, int>>& factors);

/// Euler phi of q from its prime factorization; throws
/// Error("algebra.modulus") when the factorization does not multiply to q.
Int phi_q(const Ring& ring, const Ideal& q, const std::vector<std::pair<PrimeIdeal, int>>& factors);
Int phi_q(const Ring& ring, const Modulus& q);

}  // namespace raylat
