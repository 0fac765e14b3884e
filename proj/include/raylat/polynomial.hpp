#pragma once

#include "raylat/bigint.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace raylat {

/// Integer polynomial, coefficients in ascending degree order.
using IntPoly = IntVector;

int degree(const IntPoly& f);
Int poly_discriminant(const IntPoly& f);
/// Multiplies two polynomials over Q in ascending order.
RationalVector poly_mul(const RationalVector& a, const RationalVector& b);
/// Remainder of a modulo the monic integer polynomial f.
RationalVector poly_rem_monic(RationalVector a, const IntPoly& f);

/// Polynomial over F_p, ascending coefficients in [0, p), no trailing zeros.
using ModPoly = std::vector<std::int64_t>;

struct ModFactor {
  ModPoly factor;  // monic irreducible
  int multiplicity;
};

/// Factorization of f mod p into monic irreducibles, ordered by degree and
/// then lexicographically by coefficients starting from the constant term.
/// f must be monic and p prime.
std::vector<ModFactor> factor_mod_p(const IntPoly& f, std::int64_t p);

}  // namespace raylat
