#pragma once

#include "raylat/bigint.hpp"
#include "raylat/polynomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace raylat {

/// Explicit prime ideal above p for primes dividing the index: the ideal
/// (p, gen_poly(theta)) with ramification e and residue degree f.
struct SplittingOverride {
  RationalVector gen_poly;  // power-basis coefficients, ascending
  int e = 1;
  int f = 1;

  bool operator==(const SplittingOverride&) const = default;
};

/// Number-field invariants as read from a field file. Invariants are inputs;
/// validate_field checks their mutual consistency.
struct FieldDescriptor {
  std::string label;
  IntPoly poly;  // monic, ascending
  int degree = 0;
  int r1 = 0;
  int r2 = 0;
  Int disc;
  RationalMatrix integral_basis;  // row i: omega_i in the power basis
  Int index;
  Int class_number;
  std::optional<Int> narrow_class_number;
  IntMatrix units;     // fundamental units over the integral basis
  IntVector torsion_gen;
  Int torsion_order;
  std::optional<std::string> regulator;  // decimal string as written
  std::map<Int, std::vector<SplittingOverride>> prime_splitting;

  int unit_rank() const { return r1 + r2 - 1; }
  bool operator==(const FieldDescriptor&) const = default;
};

FieldDescriptor parse_field_file(std::string_view bytes);
FieldDescriptor load_field_file(const std::string& path);
std::string serialize_field(const FieldDescriptor& fd);

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;  // interval, exact value or reason
};

struct ValidationReport {
  std::vector<Check> checks;

  bool pass() const;
  const Check* find(std::string_view name) const;
};

/// Consistency checks of a parsed descriptor at the given starting
/// precision; undecided comparisons escalate up to `precision_cap` bits.
ValidationReport validate_field(const FieldDescriptor& fd, long precision, long precision_cap = 4096);

/// Parses, validates, and throws Error("fielddata.validation") naming the
/// first failing check.
FieldDescriptor load_validated_field(const std::string& path, long precision = 128,
                                     long precision_cap = 4096);

}  // namespace raylat
