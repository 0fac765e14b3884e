#include "raylat/lattice.hpp"

#include "raylat/error.hpp"
#include "raylat/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace raylat {

namespace {

struct GramSchmidt {
  std::vector<std::vector<long double>> mu;
  std::vector<long double> bstar2;
};

GramSchmidt gram_schmidt(const std::vector<RealVector>& b) {
  const std::size_t k = b.size();
  GramSchmidt gs;
  gs.mu.assign(k, std::vector<long double>(k, 0));
  gs.bstar2.assign(k, 0);
  std::vector<RealVector> star = b;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu[i][j] = dot(b[i], star[j]) / gs.bstar2[j];
      for (std::size_t t = 0; t < star[i].size(); ++t) star[i][t] -= gs.mu[i][j] * star[j][t];
    }
    gs.bstar2[i] = squared_norm(star[i]);
    if (!(gs.bstar2[i] > 0)) throw Error("latcount.rank", "basis vectors are linearly dependent");
  }
  return gs;
}

// Coefficients u of the orthogonal projection of t onto span(b).
RealVector project_coefficients(const std::vector<RealVector>& b, const RealVector& t) {
  const std::size_t k = b.size();
  std::vector<RealVector> g(k, RealVector(k + 1, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) g[i][j] = dot(b[i], b[j]);
    g[i][k] = dot(b[i], t);
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::fabs(g[r][c]) > std::fabs(g[p][c])) p = r;
    }
    std::swap(g[c], g[p]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      long double f = g[r][c] / g[c][c];
      for (std::size_t j = c; j <= k; ++j) g[r][j] -= f * g[c][j];
    }
  }
  RealVector u(k);
  for (std::size_t i = 0; i < k; ++i) u[i] = g[i][k] / g[i][i];
  return u;
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return m;
  IntMatrix t(m[0].size(), IntVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

// Unimodular matrix whose first row is the primitive vector z.
IntMatrix unimodular_completion(const CoeffVector& z) {
  IntMatrix col;
  for (auto e : z) col.push_back({Int(e)});
  HnfTransform t = hnf_with_transform(col);
  if (t.h[0][0] != 1) throw Error("latcount.kz", "shortest vector is not primitive");
  RationalMatrix u(t.u.size());
  for (std::size_t i = 0; i < t.u.size(); ++i) u[i].assign(t.u[i].begin(), t.u[i].end());
  RationalMatrix inv = inverse(u);
  IntMatrix w(inv.size(), IntVector(inv.size()));
  for (std::size_t i = 0; i < inv.size(); ++i) {
    for (std::size_t j = 0; j < inv.size(); ++j) w[i][j] = boost::multiprecision::numerator(inv[i][j]);
  }
  return transpose(w);
}

std::vector<RealVector> apply_transform(const IntMatrix& t, const std::vector<RealVector>& b) {
  std::vector<RealVector> out(t.size(), RealVector(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (t[i][k] == 0) continue;
      long double c = t[i][k].convert_to<long double>();
      for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] += c * b[k][j];
    }
  }
  return out;
}

// Floating-point LLL (delta = 0.99) returning the unimodular transform; only
// used to shrink search radii before exact enumeration.
IntMatrix lll_transform(std::vector<RealVector> b) {
  const std::size_t k = b.size();
  std::vector<CoeffVector> t(k, CoeffVector(k, 0));
  for (std::size_t i = 0; i < k; ++i) t[i][i] = 1;
  auto size_reduce = [&](std::size_t i, std::size_t j, long double mu) {
    auto q = static_cast<std::int64_t>(std::nearbyint(mu));
    if (q == 0) return;
    for (std::size_t c = 0; c < b[i].size(); ++c) b[i][c] -= static_cast<long double>(q) * b[j][c];
    for (std::size_t c = 0; c < k; ++c) t[i][c] -= q * t[j][c];
  };
  std::size_t i = 1;
  int guard = 0;
  while (i < k && guard++ < 100000) {
    GramSchmidt gs = gram_schmidt(b);
    for (std::size_t j = i; j-- > 0;) {
      size_reduce(i, j, gs.mu[i][j]);
      gs = gram_schmidt(b);
    }
    long double mu = gs.mu[i][i - 1];
    if (gs.bstar2[i] < (0.99L - mu * mu) * gs.bstar2[i - 1]) {
      std::swap(b[i], b[i - 1]);
      std::swap(t[i], t[i - 1]);
      i = std::max<std::size_t>(i - 1, 1);
    } else {
      ++i;
    }
  }
  IntMatrix out(k, IntVector(k));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) out[r][c] = Int(t[r][c]);
  }
  return out;
}

IntMatrix kz_recursive(const std::vector<RealVector>& b) {
  const std::size_t k = b.size();
  if (k == 1) return identity_matrix(1);
  Lattice lat;
  lat.basis = b;
  ShortVector sv = shortest_vector(lat);
  IntMatrix w = unimodular_completion(sv.coeffs);
  std::vector<RealVector> c = apply_transform(w, b);
  std::vector<RealVector> projected;
  long double c0 = squared_norm(c[0]);
  for (std::size_t i = 1; i < k; ++i) {
    long double f = dot(c[i], c[0]) / c0;
    RealVector p = c[i];
    for (std::size_t j = 0; j < p.size(); ++j) p[j] -= f * c[0][j];
    projected.push_back(std::move(p));
  }
  IntMatrix inner = kz_recursive(projected);
  IntMatrix block = identity_matrix(k);
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t j = 1; j < k; ++j) block[i][j] = inner[i - 1][j - 1];
  }
  IntMatrix t = multiply(block, w);
  // Size-reduce against the first vector.
  std::vector<RealVector> d = apply_transform(t, b);
  long double d0 = squared_norm(d[0]);
  for (std::size_t i = 1; i < k; ++i) {
    long double q = std::nearbyint(dot(d[i], d[0]) / d0);
    if (q != 0) {
      Int qi(static_cast<long long>(q));
      for (std::size_t j = 0; j < k; ++j) t[i][j] -= qi * t[0][j];
    }
  }
  return t;
}

IntMatrix kz_transform(const std::vector<RealVector>& b) {
  if (b.empty()) return {};
  IntMatrix pre = lll_transform(b);
  return multiply(kz_recursive(apply_transform(pre, b)), pre);
}

}  // namespace

Lattice Lattice::from_integer(const IntMatrix& rows) {
  Lattice lat;
  for (const auto& r : rows) {
    RealVector v;
    for (const auto& e : r) v.push_back(e.convert_to<long double>());
    lat.basis.push_back(std::move(v));
  }
  lat.exact = rows;
  return lat;
}

RealVector Lattice::combine(const CoeffVector& z) const {
  RealVector v(basis.empty() ? 0 : basis[0].size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!z[i]) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += static_cast<long double>(z[i]) * basis[i][j];
  }
  return v;
}

long double squared_norm(const RealVector& v) { return dot(v, v); }

long double dot(const RealVector& a, const RealVector& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void enumerate_ball(const std::vector<RealVector>& basis, const RealVector& target, long double radius2,
                    const std::function<void(const CoeffVector&)>& visit) {
  const int k = static_cast<int>(basis.size());
  if (k == 0) return;
  GramSchmidt gs = gram_schmidt(basis);
  RealVector u = project_coefficients(basis, target);
  // Squared distance from target to the span.
  RealVector proj(target.size(), 0);
  for (int i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < target.size(); ++j) proj[j] += u[i] * basis[i][j];
  }
  long double perp = 0;
  for (std::size_t j = 0; j < target.size(); ++j) perp += (target[j] - proj[j]) * (target[j] - proj[j]);
  const long double slack = radius2 * 1e-12L + 1e-12L;
  const long double r2 = radius2 - perp + slack;
  if (r2 < 0) return;

  CoeffVector z(static_cast<std::size_t>(k), 0);
  std::function<void(int, long double)> rec = [&](int level, long double partial) {
    long double c = u[level];
    for (int j = level + 1; j < k; ++j) c -= gs.mu[j][level] * (static_cast<long double>(z[j]) - u[j]);
    long double rem = r2 - partial;
    if (rem < 0) return;
    long double w = std::sqrt(rem / gs.bstar2[level]);
    auto lo = static_cast<std::int64_t>(std::ceil(c - w - 1e-9L));
    auto hi = static_cast<std::int64_t>(std::floor(c + w + 1e-9L));
    for (std::int64_t v = lo; v <= hi; ++v) {
      long double d = (static_cast<long double>(v) - c);
      long double next = partial + d * d * gs.bstar2[level];
      if (next > r2) continue;
      z[level] = v;
      if (level == 0) {
        visit(z);
      } else {
        rec(level - 1, next);
      }
    }
    z[level] = 0;
  };
  rec(k - 1, 0);
}

ShortVector shortest_vector(const Lattice& lat) {
  IntMatrix pre = lll_transform(lat.basis);
  std::vector<RealVector> reduced = apply_transform(pre, lat.basis);
  long double radius2 = squared_norm(reduced[0]);
  for (const auto& b : reduced) radius2 = std::min(radius2, squared_norm(b));
  ShortVector best;
  best.norm2 = -1;
  RealVector origin(lat.basis[0].size(), 0);
  const std::size_t k = reduced.size();
  enumerate_ball(reduced, origin, radius2, [&](const CoeffVector& y) {
    bool zero = std::all_of(y.begin(), y.end(), [](std::int64_t e) { return e == 0; });
    if (zero) return;
    CoeffVector z(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (y[i] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) z[j] += y[i] * to_i64(pre[i][j]);
    }
    RealVector v = lat.combine(z);
    long double n2 = squared_norm(v);
    if (best.norm2 < 0 || n2 < best.norm2 * (1 - 1e-15L) ||
        (n2 <= best.norm2 * (1 + 1e-15L) && z > best.coeffs)) {
      best.coeffs = z;
      best.vector = v;
      best.norm2 = n2;
    }
  });
  if (best.norm2 < 0) throw Error("latcount.svp", "no nonzero vector found in the search radius");
  // Make the vector primitive (it already is for a true shortest vector).
  std::int64_t g = 0;
  for (auto e : best.coeffs) g = std::gcd(g, e < 0 ? -e : e);
  if (g > 1) {
    for (auto& e : best.coeffs) e /= g;
    best.vector = lat.combine(best.coeffs);
    best.norm2 = squared_norm(best.vector);
  }
  return best;
}

KzResult kz_basis(const Lattice& lat) {
  if (lat.rank() > 8) throw Error("latcount.rank", "KZ reduction supports rank at most 8");
  KzResult out;
  out.transform = kz_transform(lat.basis);
  out.lattice.basis = apply_transform(out.transform, lat.basis);
  if (lat.exact) out.lattice.exact = multiply(out.transform, *lat.exact);
  return out;
}

namespace {

struct Candidate {
  CoeffVector z;
  long double norm2;
};

std::vector<Candidate> minima_candidates(const Lattice& reduced) {
  long double radius2 = 0;
  for (const auto& b : reduced.basis) radius2 = std::max(radius2, squared_norm(b));
  std::vector<Candidate> cands;
  RealVector origin(reduced.basis[0].size(), 0);
  enumerate_ball(reduced.basis, origin, radius2, [&](const CoeffVector& z) {
    bool zero = std::all_of(z.begin(), z.end(), [](std::int64_t e) { return e == 0; });
    if (!zero) cands.push_back({z, squared_norm(reduced.combine(z))});
  });
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
    return a.z < b.z;
  });
  return cands;
}

template <class Pick>
void greedy_independent(const std::vector<Candidate>& cands, int rank, Pick pick) {
  IntMatrix chosen;
  for (const auto& c : cands) {
    if (static_cast<int>(chosen.size()) == rank) break;
    IntMatrix trial = chosen;
    IntVector row;
    for (auto e : c.z) row.push_back(Int(e));
    trial.push_back(row);
    if (hnf(trial).size() == trial.size()) {
      chosen = std::move(trial);
      pick(c);
    }
  }
}

}  // namespace

std::vector<long double> successive_minima(const Lattice& lat) {
  KzResult kz = kz_basis(lat);
  std::vector<long double> out;
  greedy_independent(minima_candidates(kz.lattice), lat.rank(),
                     [&](const Candidate& c) { out.push_back(std::sqrt(c.norm2)); });
  return out;
}

std::vector<Int> successive_minima_squared(const IntMatrix& rows) {
  KzResult kz = kz_basis(Lattice::from_integer(rows));
  const IntMatrix& basis = *kz.lattice.exact;
  std::vector<Int> out;
  greedy_independent(minima_candidates(kz.lattice), static_cast<int>(rows.size()), [&](const Candidate& c) {
    IntVector v(basis[0].size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += Int(c.z[i]) * basis[i][j];
    }
    Int n2 = 0;
    for (const auto& e : v) n2 += e * e;
    out.push_back(n2);
  });
  return out;
}

long double covolume(const Lattice& lat) {
  GramSchmidt gs = gram_schmidt(lat.basis);
  long double v = 1;
  for (auto b : gs.bstar2) v *= b;
  return std::sqrt(v);
}

Int gram_determinant(const IntMatrix& rows) {
  IntMatrix g(rows.size(), IntVector(rows.size(), 0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      for (std::size_t t = 0; t < rows[i].size(); ++t) g[i][j] += rows[i][t] * rows[j][t];
    }
  }
  return determinant(g);
}

bool kz_inequality_exact(const IntMatrix& rows) {
  const std::size_t n = rows.size();
  Int lhs = 1;
  for (const auto& r : rows) {
    Int s = 0;
    for (const auto& e : r) s += e * e;
    lhs *= s;
  }
  // prod (j+3)/4 = prod(j+3) / 4^n.
  Int num = ipow(Int(n), static_cast<unsigned>(n)) * gram_determinant(rows);
  for (std::size_t j = 1; j <= n; ++j) num *= Int(j + 3);
  return lhs * ipow(Int(4), static_cast<unsigned>(n)) <= num;
}

bool kz_inequality(const std::vector<std::vector<Interval>>& rows) {
  const std::size_t n = rows.size();
  // Rank 1 is an identity, which intervals cannot certify.
  if (n <= 1) return true;
  long prec = rows[0][0].precision();
  std::vector<std::vector<Interval>> g(n, std::vector<Interval>(n, Interval(prec)));
  Interval lhs(1L, prec);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Interval s(prec);
      for (std::size_t t = 0; t < rows[i].size(); ++t) s += rows[i][t] * rows[j][t];
      g[i][j] = s;
    }
    lhs *= g[i][i];
  }
  // Gram determinant by Cholesky-style elimination (the matrix is positive
  // definite, so pivots are positive).
  Interval det(1L, prec);
  for (std::size_t k = 0; k < n; ++k) {
    det *= g[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Interval f = g[i][k] / g[k][k];
      for (std::size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
    }
  }
  Interval rhs = pow(Interval(static_cast<long>(n), prec), static_cast<unsigned>(n)) * det;
  for (std::size_t j = 1; j <= n; ++j) {
    rhs *= Interval(Rational(static_cast<long>(j + 3), 4), prec);
  }
  return certainly_less_equal(lhs, rhs);
}

Interval widmer_bound(int n, int M, const Interval& L, const std::vector<Interval>& minima) {
  long prec = L.precision();
  Interval scale = Interval(static_cast<long>(M), prec) *
                   pow(Interval(static_cast<long>(n), prec), Rational(3 * n * n, 2));
  Interval best(1L, prec);  // i = 0 term: L^0 / delta_0
  Interval prod(1L, prec);
  Interval lpow(1L, prec);
  for (int i = 1; i < n; ++i) {
    prod *= minima[static_cast<std::size_t>(i - 1)];
    lpow *= L;
    best = max(best, lpow / prod);
  }
  return scale * best;
}

LipschitzClass lipschitz_constant(int n, int r, const Interval& t) {
  long prec = t.precision();
  LipschitzClass out;
  out.n = n;
  out.M = 2 * r + 2;
  Interval two_pi = Interval(2L, prec) * Interval::pi(prec);
  out.L = sqrt(Interval(static_cast<long>(n), prec)) * (two_pi + Interval(static_cast<long>(r), prec)) *
          exp(Interval(static_cast<long>(r), prec)) * t;
  return out;
}

Interval orthogonality_defect(const Lattice& lat, long precision) {
  KzResult kz = kz_basis(lat);
  std::vector<std::vector<Interval>> rows;
  Interval prod(1L, precision);
  for (const auto& b : kz.lattice.basis) {
    std::vector<Interval> row;
    Interval s(precision);
    for (auto e : b) {
      Interval x = Interval::from_double(static_cast<double>(e), precision);
      s += square(x);
      row.push_back(x);
    }
    prod *= sqrt(s);
    rows.push_back(std::move(row));
  }
  // Covolume from the same rounded vectors.
  const std::size_t n = rows.size();
  std::vector<std::vector<Interval>> g(n, std::vector<Interval>(n, Interval(precision)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t t = 0; t < rows[i].size(); ++t) g[i][j] += rows[i][t] * rows[j][t];
    }
  }
  Interval det(1L, precision);
  for (std::size_t k = 0; k < n; ++k) {
    det *= g[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Interval f = g[i][k] / g[k][k];
      for (std::size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
    }
  }
  return prod / sqrt(det);
}

}  // namespace raylat
