#pragma once

#include "raylat/algebra.hpp"
#include "raylat/interval.hpp"

#include <vector>

namespace raylat {

/// Certified archimedean embeddings of K at a fixed working precision.
/// Places 0..r1-1 are real (roots in ascending order), places r1..r1+r2-1
/// complex (one root of each conjugate pair, Im > 0, ascending real part).
class Embeddings {
 public:
  Embeddings(const Ring& ring, long precision);

  long precision() const { return precision_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  int places() const { return r1_ + r2_; }
  int degree() const { return r1_ + 2 * r2_; }
  int weight(int place) const { return place < r1_ ? 1 : 2; }

  const ComplexInterval& root(int place) const { return roots_[static_cast<std::size_t>(place)]; }
  ComplexInterval sigma(const AlgebraicInt& x, int place) const;
  /// Real part only; exact for real places.
  Interval sigma_real(const AlgebraicInt& x, int place) const;
  Interval abs_sigma(const AlgebraicInt& x, int place) const;
  Interval log_abs(const AlgebraicInt& x, int place) const;
  /// Unweighted log|sigma_i(x)| for every place.
  std::vector<Interval> log_vector(const AlgebraicInt& x) const;
  /// Sign of x under a real embedding; throws Indeterminate if undecided.
  int real_sign(const AlgebraicInt& x, int place) const;

  /// sigma_place(omega_k) rounded to double, [place][k].
  const std::vector<std::vector<double>>& table_re() const { return table_re_; }
  const std::vector<std::vector<double>>& table_im() const { return table_im_; }

 private:
  long precision_;
  int r1_;
  int r2_;
  std::vector<ComplexInterval> roots_;
  std::vector<std::vector<ComplexInterval>> images_;  // [place][k]
  std::vector<std::vector<double>> table_re_;
  std::vector<std::vector<double>> table_im_;
};

}  // namespace raylat
