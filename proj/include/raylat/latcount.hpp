#pragma once

#include "raylat/algebra.hpp"
#include "raylat/embedding.hpp"
#include "raylat/interval.hpp"
#include "raylat/lattice.hpp"
#include "raylat/unitlog.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace raylat {

/// One cell F_{1/2,gamma}(k_1/m_1, (k_1+1)/m_1, ..., t^n): points of
/// translate + lattice with sign pattern gamma, norm in (t^n/2, t^n] and
/// k_j/m_j <= alpha_j < (k_j+1)/m_j.
struct CellSpec {
  Ideal lattice;           // a q
  AlgebraicInt translate;  // element of a congruent to b mod q
  std::vector<Int> k;
  std::vector<int> signs;  // empty: no sign condition
  Rational t_power;        // t^n
};

/// Half-open box k_j/m_j <= alpha_j < (k_j+1)/m_j in unit coordinates.
struct AlphaBox {
  std::vector<Rational> lo;
  std::vector<Rational> hi;
};

/// Counts lattice points in fundamental-domain regions. Membership is
/// decided in double precision when the rounding error is provably below the
/// distance to every boundary, otherwise with intervals under precision
/// escalation; exact ties on a unit coordinate are certified algebraically.
class DomainCounter {
 public:
  DomainCounter(const Ring& ring, const RayContext& ctx, const PrecisionPolicy& policy = {});

  const Ring& ring() const { return ring_; }
  const RayContext& context() const { return ctx_; }
  const LogDomain& domain() const { return *base_domain_; }
  const Embeddings& embeddings() const { return *base_emb_; }

  /// Exact number of points in the cell, enumerated in the twisted ball of
  /// radius sqrt(r+1) e^r t.
  Int enumerate_in_cell(const CellSpec& cell) const;

  /// Same region without twisting or cells: points of F_{1/2,gamma}(t^n).
  Int enumerate_untwisted(const Ideal& lattice, const AlgebraicInt& translate, const std::vector<int>& signs,
                          const Rational& t_power) const;

  /// |N(alpha)| for every alpha in translate + lattice with phi(alpha) in
  /// F(0,1,...,0,1,max_norm) and the given signs, sorted.
  std::vector<Int> domain_norms(const Ideal& lattice, const AlgebraicInt& translate, const std::vector<int>& signs,
                                const Int& max_norm, int jobs = 1) const;

  /// Membership of one element; returns |N(alpha)| when alpha lies in the
  /// box, has the signs and norm_lo < |N(alpha)| <= norm_hi.
  std::optional<Int> classify(const AlgebraicInt& alpha, const AlphaBox& box, const std::vector<int>& signs,
                              const Rational& norm_lo, const Rational& norm_hi) const;

  /// delta_1 of h'(phi(lattice) beta_k).
  long double twisted_minimum(const Ideal& lattice, const std::vector<Int>& k) const;

  /// Covolume of h'(phi(ideal)): 2^{-r2} sqrt|d_K| N(ideal).
  Interval hprime_covolume(const Ideal& lattice) const;

 private:
  struct Level {
    std::unique_ptr<Embeddings> emb;
    std::unique_ptr<LogDomain> domain;
  };
  struct Approx;
  struct Query;

  const Level& level(long precision) const;
  Approx approximate(const CoeffVector& coords) const;
  std::optional<Int> decide(const CoeffVector& coords, const Query& query) const;
  bool certified_member(const AlgebraicInt& alpha, const Int& norm, const AlphaBox& box,
                        const std::vector<int>& signs, const std::vector<double>& approx) const;
  std::optional<std::vector<Rational>> exact_coordinates(const AlgebraicInt& alpha, const Int& norm,
                                                         const std::vector<double>& approx) const;
  void enumerate_scaled(const Ideal& lattice, const AlgebraicInt& translate, const std::vector<double>& scale,
                        long double radius2, const std::function<void(const CoeffVector&)>& visit) const;
  std::vector<Int> region_norms(const Ideal& lattice, const AlgebraicInt& translate, const std::vector<int>& signs,
                                const Rational& norm_lo, const Rational& norm_hi, int jobs) const;
  bool owns(const CoeffVector& c, const std::vector<long>& k, const std::vector<long>& subdiv) const;
  std::vector<RealVector> hprime_rows(const IntMatrix& rows, const std::vector<double>& scale) const;
  RealVector hprime(const CoeffVector& x, const std::vector<double>& scale) const;

  const Ring& ring_;
  RayContext ctx_;
  PrecisionPolicy policy_;
  int n_;
  int r_;
  int places_;
  int r1_;
  std::unique_ptr<Embeddings> base_emb_;
  std::unique_ptr<LogDomain> base_domain_;
  std::vector<std::vector<double>> table_re_;
  std::vector<std::vector<double>> table_im_;
  std::vector<std::vector<double>> logs_;     // [j][i]
  std::vector<std::vector<double>> inverse_;  // [j][i]
  mutable std::mutex cache_mutex_;
  mutable std::map<long, Level> cache_;
};

/// Element of a congruent to b mod q (a and q coprime), reduced mod aq.
AlgebraicInt translate_for(const Ring& ring, const Ideal& a, const Ideal& q, const AlgebraicInt& b);

struct CountCellReport {
  Int count;
  Interval main_term;
  Interval error_bound;
  bool m_term_dropped = false;
  long double max_delta1 = 0;
  bool holds = false;
};

/// (2 pi)^{r2} R_{K,q1} t^n / (sqrt(4|d_K|) N(aq)).
Interval counting_main_term(const DomainCounter& counter, const Interval& regulator, const Int& norm_aq,
                            const Rational& t_power);

/// e^{n^2+8n} n^{(3/2)n^2+(11/2)n-1/2} N(C^-1) t^{n-1} / N(aq)^{(n-1)/n} + m_1...m_r,
/// the last term only when include_m_term.
Interval counting_error_bound(int n, const Interval& ncinv, const Interval& t, const Int& norm_aq, const Int& m_product,
                              bool include_m_term);

/// Sum over all k of enumerate_in_cell, with the main term and error bound of
/// the counting theorem, and the assertion |count - main| <= bound.
CountCellReport count_S(const DomainCounter& counter, const Ideal& a, const Modulus& q, const AlgebraicInt& b,
                        const std::vector<int>& signs, const Rational& t_power, const Interval& ncinv);

/// ((2/pi)^{r2} sqrt|d_K| N(aq))^{1/n} e^{sum(m_j-1)} / sqrt(n(r+1)).
Interval minkowski_t_threshold(const FieldDescriptor& fd, const RayContext& ctx, const Int& norm_aq,
                               long precision = 128);

/// All k with 0 <= k_j < m_j, in lexicographic order.
std::vector<std::vector<Int>> twist_vectors(const std::vector<Int>& m);

/// Sign patterns in {+1,-1}^{r1}, all-positive first.
std::vector<std::vector<int>> sign_patterns(int r1);

}  // namespace raylat
