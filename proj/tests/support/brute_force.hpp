#pragma once

#include "raylat/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace raylat::brute {

inline IntMatrix random_basis(std::mt19937& rng, int rank, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  for (;;) {
    IntMatrix m(static_cast<std::size_t>(rank), IntVector(static_cast<std::size_t>(rank)));
    for (auto& row : m) {
      for (auto& e : row) e = d(rng);
    }
    if (determinant(m) != 0) return m;
  }
}

inline Int norm2(const IntVector& v) {
  Int s = 0;
  for (const auto& e : v) s += e * e;
  return s;
}

// All lattice points of a full-rank integer lattice inside the box
// [-R, R]^n, found by testing every integer point for membership.
inline std::vector<IntVector> points_in_box(const IntMatrix& basis, const std::vector<long>& lo,
                                     const std::vector<long>& hi) {
  RationalMatrix b(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) b[i].assign(basis[i].begin(), basis[i].end());
  RationalMatrix inv = inverse(b);
  const std::size_t n = basis.size();
  std::vector<IntVector> out;
  IntVector p(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational c = 0;
        for (std::size_t k = 0; k < n; ++k) c += Rational(p[k]) * inv[k][j];
        if (denominator(c) != 1) return;
      }
      out.push_back(p);
      return;
    }
    for (long v = lo[i]; v <= hi[i]; ++v) {
      p[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// Squared successive minima by greedy selection over every lattice vector in
// a box that contains all basis vectors.
inline std::vector<Int> brute_minima_squared(const IntMatrix& basis) {
  const std::size_t n = basis.size();
  Int longest = 0;
  for (const auto& row : basis) longest = std::max(longest, norm2(row));
  long r = static_cast<long>(std::ceil(std::sqrt(to_double(longest))));
  std::vector<long> lo(n, -r), hi(n, r);
  auto pts = points_in_box(basis, lo, hi);
  std::sort(pts.begin(), pts.end(), [](const IntVector& a, const IntVector& b) { return norm2(a) < norm2(b); });
  std::vector<Int> out;
  IntMatrix chosen;
  for (const auto& v : pts) {
    if (norm2(v) == 0 || norm2(v) > longest) continue;
    IntMatrix trial = chosen;
    trial.push_back(v);
    if (hnf(trial).size() == trial.size()) {
      chosen = std::move(trial);
      out.push_back(norm2(v));
    }
    if (chosen.size() == n) break;
  }
  return out;
}

inline Int brute_shortest_squared(const IntMatrix& basis) { return brute_minima_squared(basis).front(); }

}  // namespace raylat::brute
