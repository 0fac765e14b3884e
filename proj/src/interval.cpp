#include "raylat/interval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace raylat {

namespace {

long max_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

// RAII scratch value for intermediate products.
struct Scratch {
  mpfr_t v;
  explicit Scratch(long prec) { mpfr_init2(v, prec); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

void set_int(mpfr_ptr target, const Int& value, mpfr_rnd_t rnd) {
  mpfr_set_z(target, value.backend().data(), rnd);
}

}  // namespace

Interval::Interval(long precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value, long precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Int& value, long precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  set_int(lo_, value, MPFR_RNDD);
  set_int(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Rational& value, long precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_q(lo_, value.backend().data(), MPFR_RNDD);
  mpfr_set_q(hi_, value.backend().data(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_double(double value, long precision) {
  Interval r(precision);
  mpfr_set_d(r.lo_, value, MPFR_RNDD);
  mpfr_set_d(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::span(double lo, double hi, long precision) {
  Interval r(precision);
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval Interval::from_decimal(const std::string& text, long precision) {
  Interval r(precision);
  if (mpfr_set_str(r.lo_, text.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_, text.c_str(), 10, MPFR_RNDU) != 0) {
    // mpfr_set_str returns nonzero only for malformed input; the rounding
    // direction is carried by the mode argument.
    if (mpfr_nan_p(r.lo_) || mpfr_nan_p(r.hi_)) {
      throw Error("fielddata.parse", "not a decimal real: '" + text + "'");
    }
  }
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pi(long precision) {
  Interval r(precision);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid() const {
  Scratch s(precision() + 1);
  mpfr_add(s.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(s.v, s.v, 1, MPFR_RNDN);
  return mpfr_get_d(s.v, MPFR_RNDN);
}

double Interval::width() const {
  Scratch s(precision());
  mpfr_sub(s.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(s.v, MPFR_RNDU);
}

Interval Interval::midpoint() const {
  Interval r(precision());
  mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
  return r;
}

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Interval::contains(const Int& value) const {
  return mpfr_cmp_z(lo_, value.backend().data()) <= 0 &&
         mpfr_cmp_z(hi_, value.backend().data()) >= 0;
}

int Interval::sign() const {
  if (positive()) return 1;
  if (negative()) return -1;
  if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return 0;
  throw Indeterminate("sign of interval containing zero");
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval& Interval::operator+=(const Interval& o) {
  long p = max_prec(*this, o);
  Interval r(p);
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  *this = std::move(r);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  long p = max_prec(*this, o);
  Interval r(p);
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  *this = std::move(r);
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  long p = max_prec(*this, o);
  Interval r(p);
  Scratch t(p);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {o.lo_, o.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
    }
  }
  *this = std::move(r);
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.contains_zero()) throw Indeterminate("division by interval containing zero");
  long p = max_prec(*this, o);
  Interval r(p);
  Scratch t(p);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {o.lo_, o.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (auto x : a) {
    for (auto y : b) {
      mpfr_div(t.v, x, y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t.v, MPFR_RNDD);
      mpfr_div(t.v, x, y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
    }
  }
  *this = std::move(r);
  return *this;
}

Interval sqrt(const Interval& x) {
  if (x.negative()) throw Error("interval.domain", "sqrt of negative interval");
  Interval r(x.precision());
  if (mpfr_sgn(x.lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r(x.precision());
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& x) {
  if (!x.positive()) {
    if (x.negative() || mpfr_sgn(x.hi_) == 0) {
      throw Error("interval.domain", "log of nonpositive interval");
    }
    throw Indeterminate("log of interval touching zero");
  }
  Interval r(x.precision());
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& x) {
  if (x.positive() || mpfr_sgn(x.lo_) == 0) return x;
  if (x.negative() || mpfr_sgn(x.hi_) == 0) return -x;
  Interval r(x.precision());
  mpfr_set_zero(r.lo_, 1);
  Scratch t(x.precision());
  mpfr_neg(t.v, x.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, t.v, x.hi_, MPFR_RNDU);
  return r;
}

Interval square(const Interval& x) {
  Interval a = abs(x);
  Interval r(x.precision());
  mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval min(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

std::string Interval::str(int digits) const {
  Scratch s(precision() + 1);
  mpfr_add(s.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(s.v, s.v, 1, MPFR_RNDN);
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, s.v);
  return std::string(buf.data());
}

Interval pow(const Interval& x, unsigned exponent) {
  Interval result(1L, x.precision());
  Interval base = x;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent) base = square(base);
  }
  return result;
}

Interval pow(const Interval& x, const Interval& y) { return exp(y * log(x)); }

Interval pow(const Interval& x, const Rational& y) {
  return pow(x, Interval(y, x.precision()));
}

bool certainly_less(const Interval& a, const Interval& b) {
  return mpfr_less_p(a.hi(), b.lo());
}

bool certainly_less_equal(const Interval& a, const Interval& b) {
  return mpfr_lessequal_p(a.hi(), b.lo());
}

std::optional<bool> compare_less(const Interval& a, const Interval& b) {
  if (mpfr_less_p(a.hi(), b.lo())) return true;
  if (mpfr_greaterequal_p(a.lo(), b.hi())) return false;
  return std::nullopt;
}

Int certified_ceil(const Interval& x) {
  mpz_t lo, hi;
  mpz_init(lo);
  mpz_init(hi);
  mpfr_get_z(lo, x.lo(), MPFR_RNDU);
  mpfr_get_z(hi, x.hi(), MPFR_RNDU);
  bool same = mpz_cmp(lo, hi) == 0;
  Int result(lo);
  mpz_clear(lo);
  mpz_clear(hi);
  if (!same) throw Indeterminate("ceiling not determined");
  // When lo is itself an integer the ceiling may differ from hi's ceiling only
  // if the interval straddles that integer, which the test above excludes
  // except for the degenerate point case lo == hi == integer.
  if (mpfr_integer_p(x.lo()) && !mpfr_equal_p(x.lo(), x.hi())) {
    throw Indeterminate("ceiling at integer boundary");
  }
  return result;
}

std::optional<Int> unique_integer(const Interval& x) {
  mpz_t lo, hi;
  mpz_init(lo);
  mpz_init(hi);
  mpfr_get_z(lo, x.lo(), MPFR_RNDU);
  mpfr_get_z(hi, x.hi(), MPFR_RNDD);
  std::optional<Int> out;
  if (mpz_cmp(lo, hi) == 0) out = Int(lo);
  mpz_clear(lo);
  mpz_clear(hi);
  return out;
}

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator-=(const ComplexInterval& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(const Interval& s, const ComplexInterval& a) {
  return {s * a.re, s * a.im};
}

}  // namespace raylat
