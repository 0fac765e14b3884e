#include "raylat/matrix.hpp"

#include "raylat/error.hpp"

#include <utility>

namespace raylat {

namespace {

void axpy(IntVector& target, const Int& factor, const IntVector& source) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < target.size(); ++i) target[i] += factor * source[i];
}

void reduce_mod(IntVector& v, const Int& modulus) {
  for (auto& e : v) e = mod_floor(e, modulus);
}

// Rows a, b become s*a + t*b and (-y/g)*a + (x/g)*b where x, y are the
// entries in the pivot column. The first row then carries g, the second 0.
void combine(IntVector& a, IntVector& b, std::size_t col) {
  Int x = a[col], y = b[col];
  auto [g, s, t] = extended_gcd(x, y);
  Int xg = x / g, yg = y / g;
  for (std::size_t k = 0; k < a.size(); ++k) {
    Int na = s * a[k] + t * b[k];
    Int nb = xg * b[k] - yg * a[k];
    a[k] = std::move(na);
    b[k] = std::move(nb);
  }
}

void reduce_above(IntMatrix& h, std::size_t nrows, const std::vector<std::size_t>& pivot_cols) {
  for (std::size_t j = 0; j < nrows; ++j) {
    std::size_t c = pivot_cols[j];
    for (std::size_t i = 0; i < j; ++i) {
      Int q = floor_div(h[i][c], h[j][c]);
      if (q != 0) axpy(h[i], -q, h[j]);
    }
  }
}

}  // namespace

IntMatrix hnf(IntMatrix rows, const Int& modulus) {
  if (rows.empty()) return rows;
  const std::size_t ncols = rows[0].size();
  const bool modular = modulus > 0;
  if (modular) {
    for (auto& r : rows) reduce_mod(r, modulus);
  }
  IntMatrix out;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < ncols; ++col) {
    // Gather all remaining rows with a nonzero entry in this column into the
    // first such row.
    std::size_t pivot = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][col] != 0) {
        if (pivot == rows.size()) {
          pivot = i;
        } else {
          combine(rows[pivot], rows[i], col);
          if (modular) reduce_mod(rows[i], modulus);
        }
      }
    }
    IntVector prow;
    if (modular) {
      IntVector unit(ncols, 0);
      unit[col] = modulus;
      if (pivot == rows.size()) {
        prow = std::move(unit);
      } else {
        prow = std::move(rows[pivot]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot));
        combine(prow, unit, col);
        reduce_mod(unit, modulus);
        bool zero = true;
        for (const auto& e : unit) zero = zero && e == 0;
        if (!zero) rows.push_back(std::move(unit));
        // Keep the pivot itself exact but reduce the tail.
        Int p = prow[col];
        reduce_mod(prow, modulus);
        prow[col] = p;
      }
    } else {
      if (pivot == rows.size()) continue;
      prow = std::move(rows[pivot]);
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot));
    }
    if (prow[col] < 0) {
      for (auto& e : prow) e = -e;
    }
    out.push_back(std::move(prow));
    pivot_cols.push_back(col);
  }
  reduce_above(out, out.size(), pivot_cols);
  return out;
}

HnfTransform hnf_with_transform(const IntMatrix& a) {
  const std::size_t m = a.size();
  const std::size_t ncols = m ? a[0].size() : 0;
  // Work on augmented rows [a | I] so the transform follows every operation.
  IntMatrix aug(m);
  for (std::size_t i = 0; i < m; ++i) {
    aug[i] = a[i];
    aug[i].resize(ncols + m, 0);
    aug[i][ncols + i] = 1;
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < ncols && row < m; ++col) {
    std::size_t pivot = m;
    for (std::size_t i = row; i < m; ++i) {
      if (aug[i][col] != 0) {
        if (pivot == m) {
          pivot = i;
        } else {
          combine(aug[pivot], aug[i], col);
        }
      }
    }
    if (pivot == m) continue;
    std::swap(aug[row], aug[pivot]);
    if (aug[row][col] < 0) {
      for (auto& e : aug[row]) e = -e;
    }
    pivot_cols.push_back(col);
    ++row;
  }
  reduce_above(aug, row, pivot_cols);
  HnfTransform out;
  out.h.resize(m);
  out.u.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.h[i].assign(aug[i].begin(), aug[i].begin() + static_cast<std::ptrdiff_t>(ncols));
    out.u[i].assign(aug[i].begin() + static_cast<std::ptrdiff_t>(ncols), aug[i].end());
  }
  return out;
}

IntMatrix kernel_mod(const IntMatrix& m, const Int& modulus) {
  const std::size_t k = m.size();
  const std::size_t c = k ? m[0].size() : 0;
  IntMatrix big;
  for (std::size_t i = 0; i < k; ++i) {
    IntVector row(c + k, 0);
    for (std::size_t j = 0; j < c; ++j) row[j] = m[i][j];
    row[c + i] = 1;
    big.push_back(std::move(row));
  }
  IntMatrix h = hnf(std::move(big), modulus);
  IntMatrix out;
  for (const auto& row : h) {
    bool head_zero = true;
    for (std::size_t j = 0; j < c; ++j) head_zero = head_zero && row[j] == 0;
    if (head_zero) out.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(c), row.end());
  }
  return out;
}

std::optional<IntVector> solve_hnf(const IntMatrix& h, const IntVector& x) {
  const std::size_t n = h.size();
  IntVector rest = x;
  IntVector z(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (rest[i] % h[i][i] != 0) return std::nullopt;
    z[i] = rest[i] / h[i][i];
    axpy(rest, -z[i], h[i]);
  }
  for (const auto& e : rest) {
    if (e != 0) return std::nullopt;
  }
  return z;
}

IntVector reduce_hnf(const IntMatrix& h, IntVector x) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    Int q = floor_div(x[i], h[i][i]);
    if (q != 0) axpy(x, -q, h[i]);
  }
  return x;
}

Int determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix w = a;
  RationalMatrix inv(n, RationalVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && w[p][k] == 0) ++p;
    if (p == n) throw Error("algebra.singular", "matrix is singular");
    std::swap(w[p], w[k]);
    std::swap(inv[p], inv[k]);
    Rational d = w[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      w[k][j] /= d;
      inv[k][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || w[i][k] == 0) continue;
      Rational f = w[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        w[i][j] -= f * w[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix out(a.size(), IntVector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

IntVector row_times(const IntVector& x, const IntMatrix& m) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  IntVector out(cols, 0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) out[j] += x[k] * m[k][j];
  }
  return out;
}

RationalVector row_times(const RationalVector& x, const RationalMatrix& m) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  RationalVector out(cols, 0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) out[j] += x[k] * m[k][j];
  }
  return out;
}

}  // namespace raylat
