#pragma once

#include "raylat/algebra.hpp"
#include "raylat/embedding.hpp"
#include "raylat/interval.hpp"

#include <vector>

namespace raylat {

/// Modulus q together with the unit data of U_{q1}: units congruent to 1
/// mod q and positive at every real place.
struct RayContext {
  Modulus modulus;
  Int phi;
  int r = 0;
  std::vector<AlgebraicInt> generators;  // eta_1..eta_r
  IntMatrix unit_exponents;              // eta_j = zeta^t_j * prod u_k^{E[j][k]}
  IntVector torsion_exponents;           // t_j
  Int mu_q1;
  AlgebraicInt torsion_generator;  // generates the roots of unity inside U_{q1}
  Int unit_index;                  // [O_K^* : U_{q1}]
  Int free_index;                  // index of the free parts
  std::vector<Int> m;              // m_j = max_i ceil(log|sigma_i(eta_j)|)
  Int ray_class_number;
  Int narrow_class_number;  // h_{K,1}

  Int m_product() const;
};

/// Weighted regulator |det(e_i log|sigma_i(u_j)|)| over the first r places.
Interval unit_regulator(const Embeddings& emb, const std::vector<AlgebraicInt>& units);

/// Finite-group computation of U_{q1}: fills generators, exponents, mu_q1,
/// indices and phi(q). Throws Indeterminate if a sign is undecided.
RayContext compute_Uq1(const Ring& ring, const Embeddings& emb, const Modulus& q);

/// log|sigma_i(eta_j)| for all places, computed from the exponents: [j][i].
std::vector<std::vector<Interval>> generator_logs(const Ring& ring, const Embeddings& emb, const RayContext& ctx);

/// |det(e_i log|sigma_i(eta_j)|)| over the first r places, cross-checked
/// against every other choice of r places. r = 0 gives exactly 1. Throws
/// Error("unitlog.dependent") when the generator count is not r, and
/// Indeterminate while the determinant cannot be separated from zero.
Interval q1_regulator(const Embeddings& emb, const std::vector<std::vector<Interval>>& logs);
Interval q1_regulator(const Ring& ring, const Embeddings& emb, const RayContext& ctx);

/// Replaces the generators by a KZ-reduced basis of their weighted log
/// lattice and recomputes m_j.
RayContext kz_reduce_unit_generators(const Ring& ring, const Embeddings& emb, const RayContext& ctx);

std::vector<Int> compute_m(const std::vector<std::vector<Interval>>& logs);

/// 2^r1 phi(q) h_K / [O_K^* : U_{q1}]; Error("unitlog.inconsistent") if the
/// quotient is not an integer or violates h_{K,1} <= h_{K,q} <= phi(q) h_{K,1}.
Int ray_class_number(const FieldDescriptor& fd, const RayContext& ctx);

/// Full context with precision escalation: U_{q1}, KZ reduction, m_j and
/// class numbers.
RayContext make_ray_context(const Ring& ring, const Modulus& q, const PrecisionPolicy& policy = {});

/// Coordinates of a point in the log picture: alpha(x) = prod |x_i|^{e_i}
/// and alpha_2..alpha_{r+1} with |x_i| = alpha^{1/n} prod |sigma_i(eta_j)|^{alpha_{j+1}}.
struct DomainCoordinates {
  Interval norm;       // alpha(x)
  Int exact_norm = 0;  // |N(x)| when x is an algebraic integer
  std::vector<Interval> alpha;  // alpha_2..alpha_{r+1}
};

/// Solves the log system for the coordinates; holds the inverse matrix.
class LogDomain {
 public:
  LogDomain(const Ring& ring, const Embeddings& emb, const RayContext& ctx);

  const Embeddings& embeddings() const { return emb_; }
  long precision() const { return emb_.precision(); }
  int rank() const { return r_; }
  const std::vector<std::vector<Interval>>& logs() const { return logs_; }
  /// (A^{-1})[j][i]: alpha_{j+1} = sum_i A^{-1}[j][i] (log|x_i| - log(alpha)/n)
  /// over the first r places.
  const std::vector<std::vector<Interval>>& inverse() const { return inverse_; }

  /// Coordinates from the absolute values |x_i| of a point (all nonzero).
  DomainCoordinates coordinates(const std::vector<Interval>& abs_values) const;
  DomainCoordinates coordinates(const AlgebraicInt& x) const;

  /// beta_k = (prod_j |sigma_i(eta_j)|^{-k_j/m_j})_i for 0 <= k_j < m_j.
  std::vector<Interval> beta_twist(const std::vector<Int>& k) const;

 private:
  const Ring& ring_;
  const Embeddings& emb_;
  std::vector<Int> m_;
  int r_;
  std::vector<std::vector<Interval>> logs_;
  std::vector<std::vector<Interval>> inverse_;
};

DomainCoordinates domain_coordinates(const LogDomain& domain, const AlgebraicInt& x);
std::vector<Interval> beta_twist(const LogDomain& domain, const std::vector<Int>& k);

/// Sign of x at each real place.
std::vector<int> sign_vector(const Embeddings& emb, const AlgebraicInt& x);

}  // namespace raylat
