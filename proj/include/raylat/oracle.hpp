#pragma once

#include "raylat/algebra.hpp"
#include "raylat/embedding.hpp"
#include "raylat/interval.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace raylat {

struct CensusEntry {
  Ideal ideal;
  std::vector<std::pair<int, int>> factors;  // (index into IdealCensus::primes, exponent)
  bool coprime = true;                       // coprime to the modulus used for classification
  int bucket = -1;
};

/// All integral ideals of norm <= bound, sorted by (norm, HNF).
struct IdealCensus {
  std::string label;
  Int bound;
  std::vector<PrimeIdeal> primes;
  std::vector<CensusEntry> entries;
  std::vector<std::size_t> representatives;  // first entry of each bucket
};

IdealCensus enumerate_ideals(const Ring& ring, const Int& bound);

/// Narrow ray class invariant: the index i of the wide class with a c_i
/// principal, and the coset of a generator's image in
/// G = (O_K/q)^* x {+-1}^{r1} modulo the image of O_K^*.
struct RayInvariant {
  int wide = 0;
  IntVector residue;
  std::vector<int> signs;

  auto operator<=>(const RayInvariant&) const = default;
};

/// Exact ray-class membership by principality search. Independent of the
/// counting pipeline: it uses only ideal arithmetic and lattice enumeration.
class RayOracle {
 public:
  RayOracle(const Ring& ring, const Modulus& q, const PrecisionPolicy& policy = {});

  const Ring& ring() const { return ring_; }
  const Modulus& modulus() const { return q_; }

  /// A generator of a when a is principal. The search covers the ball that
  /// must contain a generator reduced by the fundamental units.
  std::optional<AlgebraicInt> find_generator(const Ideal& a) const;
  bool principal(const Ideal& a) const { return find_generator(a).has_value(); }
  bool same_wide_class(const Ideal& a, const Ideal& b) const;

  RayInvariant invariant(const Ideal& a) const;
  bool ray_equivalent(const Ideal& a, const Ideal& b) const;

  /// Representatives c_i coprime to q of the wide classes, c_0 = O_K.
  const std::vector<Ideal>& wide_representatives() const { return wide_reps_; }
  std::size_t group_order() const { return group_order_; }
  std::size_t unit_image_order() const { return image_.size(); }

 private:
  using Key = std::pair<IntVector, std::vector<int>>;
  Key key(const AlgebraicInt& x) const;
  Key key_mul(const Key& a, const Key& b) const;
  int sign(const AlgebraicInt& x, int place) const;

  const Ring& ring_;
  Modulus q_;
  PrecisionPolicy policy_;
  std::unique_ptr<Embeddings> emb_;
  std::vector<Key> image_;
  std::size_t group_order_ = 0;
  std::vector<Ideal> wide_reps_;
  std::vector<double> radius_factor_;  // prod_j max(1, |sigma_i(eps_j)|)^2 per place
};

/// Assigns bucket ids to the entries coprime to q; the first ideal of each
/// class founds its bucket.
void classify(const RayOracle& oracle, IdealCensus& census);
Int empirical_hKq(const IdealCensus& census);

/// Ideal c coprime to q with b c in the principal ray class, searched among
/// the census ideals.
Ideal inverse_class_representative(const RayOracle& oracle, const IdealCensus& census, const Ideal& b);

/// Number of ideals of the bucket with norm <= each x (x sorted).
std::vector<Int> bucket_counts(const IdealCensus& census, int bucket, const std::vector<Int>& xs);

/// TSV lines: norm, HNF row-major, bucket id.
std::string census_tsv(const IdealCensus& census);

}  // namespace raylat
