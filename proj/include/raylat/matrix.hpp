#pragma once

#include "raylat/bigint.hpp"

#include <optional>

namespace raylat {

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot). Zero rows are dropped. When
/// `modulus` is positive the caller guarantees modulus*Z^n lies in the row
/// lattice; the result is then square and entries never exceed the modulus.
IntMatrix hnf(IntMatrix rows, const Int& modulus = 0);

struct HnfTransform {
  IntMatrix h;  // same shape as the input, zero rows last
  IntMatrix u;  // unimodular, u * a == h
};
HnfTransform hnf_with_transform(const IntMatrix& a);

/// Basis (in HNF) of {x in Z^k : x*m == 0 mod modulus} for a k x c matrix m.
IntMatrix kernel_mod(const IntMatrix& m, const Int& modulus);

/// Integer row vector z with z*h == x for square upper-triangular h, if any.
std::optional<IntVector> solve_hnf(const IntMatrix& h, const IntVector& x);

/// Canonical representative of x modulo the row lattice of a square HNF:
/// the result has 0 <= x_i < h_ii.
IntVector reduce_hnf(const IntMatrix& h, IntVector x);

Int determinant(IntMatrix a);
Rational determinant(RationalMatrix a);

/// Throws Error("algebra.singular") for a singular matrix.
RationalMatrix inverse(const RationalMatrix& a);

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVector row_times(const IntVector& x, const IntMatrix& m);
RationalVector row_times(const RationalVector& x, const RationalMatrix& m);

}  // namespace raylat
