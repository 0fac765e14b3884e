#pragma once

#include "raylat/bigint.hpp"
#include "raylat/error.hpp"

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

namespace raylat {

/// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
/// Every operation returns an enclosure of the exact result; precision of a
/// result is the larger precision of its operands.
class Interval {
 public:
  explicit Interval(long precision = 128);
  Interval(long value, long precision);
  Interval(const Int& value, long precision);
  Interval(const Rational& value, long precision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_double(double value, long precision);
  /// Decimal string such as "0.8813735870195430" rounded outward.
  static Interval from_decimal(const std::string& text, long precision);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval pi(long precision);
  /// [lo, hi] from two doubles (lo <= hi).
  static Interval span(double lo, double hi, long precision);

  long precision() const { return static_cast<long>(mpfr_get_prec(lo_)); }

  double lower() const;  // rounded toward -inf
  double upper() const;  // rounded toward +inf
  double mid() const;
  double width() const;  // upper bound on hi - lo
  Interval midpoint() const;

  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }
  bool contains_zero() const { return !positive() && !negative(); }
  bool contains(const Interval& other) const;
  bool overlaps(const Interval& other) const;
  bool contains(const Int& value) const;

  /// Sign of every point in the interval; throws Indeterminate when it spans 0.
  int sign() const;

  Interval operator-() const;
  Interval& operator+=(const Interval& other);
  Interval& operator-=(const Interval& other);
  Interval& operator*=(const Interval& other);
  Interval& operator/=(const Interval& other);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

  friend Interval sqrt(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval abs(const Interval& x);
  friend Interval square(const Interval& x);
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval min(const Interval& a, const Interval& b);

  /// Rounded decimal of the midpoint, for reports.
  std::string str(int digits = 12) const;

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval pow(const Interval& x, unsigned exponent);
/// x^y for x > 0.
Interval pow(const Interval& x, const Interval& y);
Interval pow(const Interval& x, const Rational& y);

/// a < b for every choice of points.
bool certainly_less(const Interval& a, const Interval& b);
bool certainly_less_equal(const Interval& a, const Interval& b);
/// Tri-state a < b: nullopt when the enclosures overlap.
std::optional<bool> compare_less(const Interval& a, const Interval& b);

/// Integer ceiling when the interval pins it down; Indeterminate otherwise.
Int certified_ceil(const Interval& x);
/// The unique integer within the interval if its width is below one and it
/// contains exactly one integer; nullopt otherwise.
std::optional<Int> unique_integer(const Interval& x);

/// Rectangle in the complex plane.
struct ComplexInterval {
  Interval re;
  Interval im;

  explicit ComplexInterval(long precision = 128) : re(precision), im(precision) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  ComplexInterval& operator+=(const ComplexInterval& o);
  ComplexInterval& operator-=(const ComplexInterval& o);
  friend ComplexInterval operator+(ComplexInterval a, const ComplexInterval& b) { return a += b; }
  friend ComplexInterval operator-(ComplexInterval a, const ComplexInterval& b) { return a -= b; }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
  friend ComplexInterval operator*(const Interval& s, const ComplexInterval& a);

  ComplexInterval conj() const { return {re, -im}; }
  Interval norm2() const { return square(re) + square(im); }
  Interval abs() const { return sqrt(norm2()); }
  long precision() const { return re.precision(); }
};

/// Working-precision policy for certified comparisons: start, double on an
/// indeterminate comparison, give up at the cap.
struct PrecisionPolicy {
  long start = 128;
  long cap = 4096;
};

/// Runs fn(precision) starting at policy.start, doubling whenever it throws
/// Indeterminate. At the cap the failure becomes Error("precision.cap").
template <class Fn>
auto escalate(const PrecisionPolicy& policy, Fn&& fn) -> decltype(fn(0L)) {
  long precision = policy.start;
  for (;;) {
    try {
      return fn(precision);
    } catch (const Indeterminate& e) {
      if (precision >= policy.cap) {
        throw Error("precision.cap",
                    std::string("comparison undecided at precision cap: ") + e.what());
      }
      precision = std::min(precision * 2, policy.cap);
    }
  }
}

}  // namespace raylat
