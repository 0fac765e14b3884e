#pragma once

#include "raylat/bigint.hpp"
#include "raylat/interval.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace raylat {

using RealVector = std::vector<long double>;
using CoeffVector = std::vector<std::int64_t>;

/// Lattice given by row basis vectors in R^N (rank <= N).
struct Lattice {
  std::vector<RealVector> basis;
  std::optional<IntMatrix> exact;  // integer basis when the lattice is integral

  static Lattice from_integer(const IntMatrix& rows);
  int rank() const { return static_cast<int>(basis.size()); }
  RealVector combine(const CoeffVector& z) const;
};

long double squared_norm(const RealVector& v);
long double dot(const RealVector& a, const RealVector& b);

/// Visits every integer z with ||sum z_i b_i - target||^2 <= radius2 (plus a
/// relative slack of 1e-12, so callers never lose boundary points to
/// rounding). Candidates may include a few points just outside; callers
/// filter exactly.
void enumerate_ball(const std::vector<RealVector>& basis, const RealVector& target, long double radius2,
                    const std::function<void(const CoeffVector&)>& visit);

struct ShortVector {
  CoeffVector coeffs;
  RealVector vector;
  long double norm2 = 0;
};
ShortVector shortest_vector(const Lattice& lat);

/// KZ-reduced basis; new rows = transform * old rows with transform
/// unimodular.
struct KzResult {
  Lattice lattice;
  IntMatrix transform;
};
KzResult kz_basis(const Lattice& lat);

/// delta_1 <= ... <= delta_n by enumeration up to the longest KZ vector.
std::vector<long double> successive_minima(const Lattice& lat);
/// Squared minima for an integer lattice, exact.
std::vector<Int> successive_minima_squared(const IntMatrix& rows);

long double covolume(const Lattice& lat);
/// det of the Gram matrix of an integer basis (covolume squared).
Int gram_determinant(const IntMatrix& rows);

/// prod ||v_j||^2 <= prod ((j+3)/4) * n^n * covol^2 for the given basis.
bool kz_inequality_exact(const IntMatrix& rows);
bool kz_inequality(const std::vector<std::vector<Interval>>& rows);

/// M * n^(3n^2/2) * max_{0<=i<n} L^i / (delta_0 ... delta_i), delta_0 = 1.
Interval widmer_bound(int n, int M, const Interval& L, const std::vector<Interval>& minima);

struct LipschitzClass {
  int n = 0;
  int M = 0;
  Interval L;
};
/// Cover of the boundary of F_{1/2}(t^n): M = 2r+2 maps with constant
/// sqrt(n) * (2 pi + r) * e^r * t.
LipschitzClass lipschitz_constant(int n, int r, const Interval& t);

/// prod ||v_j|| / covol over the KZ basis (an upper bound for the defect).
Interval orthogonality_defect(const Lattice& lat, long precision = 128);

}  // namespace raylat
