#include "raylat/bigint.hpp"

#include "raylat/error.hpp"

#include <cctype>
#include <limits>

namespace raylat {

namespace {

bool valid_decimal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

Int parse_int(std::string_view text) {
  if (!valid_decimal(text)) {
    throw Error("fielddata.parse", "not a decimal integer: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return Int(s);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error("fielddata.parse", "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Int& value) { return value.str(); }

std::string to_string(const Rational& value) {
  auto num = boost::multiprecision::numerator(value);
  auto den = boost::multiprecision::denominator(value);
  if (den == 1) return Int(num).str();
  return Int(num).str() + "/" + Int(den).str();
}

Int floor_div(const Int& num, const Int& den) {
  Int q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0 && ((r < 0) != (den < 0))) q -= 1;
  return q;
}

Int mod_floor(const Int& num, const Int& den) {
  Int r = num % den;
  if (r < 0) r += den;
  return r;
}

ExtendedGcd extended_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

Int ipow(const Int& base, unsigned exponent) {
  Int result = 1;
  Int b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent) b *= b;
  }
  return result;
}

std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  if (n < 0) n = -n;
  if (n < 2) return out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t to_i64(const Int& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw Error("algebra.overflow", "integer does not fit in 64 bits: " + value.str());
  }
  return value.convert_to<std::int64_t>();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace raylat
