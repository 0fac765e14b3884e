#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace raylat {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Int>;
using IntMatrix = std::vector<IntVector>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Parses a decimal integer ("-12"); throws raylat::Error on bad input.
Int parse_int(std::string_view text);

/// Parses "num/den" or a bare integer.
Rational parse_rational(std::string_view text);

std::string to_string(const Int& value);
std::string to_string(const Rational& value);

/// Floor division for any sign of numerator (denominator must be positive).
Int floor_div(const Int& num, const Int& den);
/// Least nonnegative residue, den > 0.
Int mod_floor(const Int& num, const Int& den);

struct ExtendedGcd {
  Int g;  // nonnegative
  Int s;
  Int t;  // s*a + t*b == g
};
ExtendedGcd extended_gcd(const Int& a, const Int& b);

Int ipow(const Int& base, unsigned exponent);

/// Prime factors of |n| (distinct, ascending) by trial division. Intended for
/// indices and norms of desk-scale size.
std::vector<Int> prime_factors(Int n);

bool is_prime(std::int64_t n);

/// Converts to int64, throwing if out of range.
std::int64_t to_i64(const Int& value);

double to_double(const Rational& value);

}  // namespace raylat
