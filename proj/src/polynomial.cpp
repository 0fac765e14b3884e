#include "raylat/polynomial.hpp"

#include "raylat/error.hpp"
#include "raylat/matrix.hpp"

#include <algorithm>
#include <random>

namespace raylat {

int degree(const IntPoly& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[static_cast<std::size_t>(d)] == 0) --d;
  return d;
}

Int poly_discriminant(const IntPoly& f) {
  const int n = degree(f);
  if (n < 1) throw Error("algebra.poly", "discriminant of a constant polynomial");
  IntPoly df(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= n; ++k) df[static_cast<std::size_t>(k - 1)] = f[static_cast<std::size_t>(k)] * k;
  // Sylvester matrix of f (degree n) and f' (degree n-1), highest degree first.
  const int size = 2 * n - 1;
  IntMatrix s(static_cast<std::size_t>(size), IntVector(static_cast<std::size_t>(size), 0));
  for (int i = 0; i < n - 1; ++i) {
    for (int k = 0; k <= n; ++k) s[i][i + k] = f[static_cast<std::size_t>(n - k)];
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= n - 1; ++k) s[n - 1 + i][i + k] = df[static_cast<std::size_t>(n - 1 - k)];
  }
  Int res = determinant(s);
  Int disc = res / f[static_cast<std::size_t>(n)];
  if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

RationalVector poly_mul(const RationalVector& a, const RationalVector& b) {
  if (a.empty() || b.empty()) return {};
  RationalVector out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

RationalVector poly_rem_monic(RationalVector a, const IntPoly& f) {
  const int n = degree(f);
  for (int k = static_cast<int>(a.size()) - 1; k >= n; --k) {
    Rational c = a[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    for (int j = 0; j <= n; ++j) {
      a[static_cast<std::size_t>(k - n + j)] -= c * f[static_cast<std::size_t>(j)];
    }
  }
  a.resize(static_cast<std::size_t>(n), 0);
  return a;
}

namespace {

using i64 = std::int64_t;

struct Fp {
  i64 p;

  i64 norm(i64 a) const {
    a %= p;
    return a < 0 ? a + p : a;
  }
  i64 mul(i64 a, i64 b) const { return static_cast<i64>((static_cast<__int128>(a) * b) % p); }
  i64 inv(i64 a) const {
    auto [g, s, t] = extended_gcd(Int(a), Int(p));
    (void)t;
    return norm(static_cast<i64>(mod_floor(s, Int(p))));
  }

  void trim(ModPoly& f) const {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  int deg(const ModPoly& f) const { return static_cast<int>(f.size()) - 1; }

  ModPoly sub(ModPoly a, const ModPoly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = norm(a[i] - b[i]);
    trim(a);
    return a;
  }

  ModPoly mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mul(a[i], b[j])) % p;
    }
    trim(out);
    return out;
  }

  // Returns quotient; a becomes the remainder.
  ModPoly divmod(ModPoly& a, const ModPoly& b) const {
    if (b.empty()) throw Error("algebra.poly", "division by zero polynomial mod p");
    int db = deg(b);
    i64 lead_inv = inv(b.back());
    if (deg(a) < db) return {};
    ModPoly q(static_cast<std::size_t>(deg(a) - db + 1), 0);
    for (int k = deg(a); k >= db; --k) {
      i64 c = mul(a[static_cast<std::size_t>(k)], lead_inv);
      q[static_cast<std::size_t>(k - db)] = c;
      if (!c) continue;
      for (int j = 0; j <= db; ++j) {
        auto idx = static_cast<std::size_t>(k - db + j);
        a[idx] = norm(a[idx] - mul(c, b[static_cast<std::size_t>(j)]));
      }
    }
    trim(a);
    trim(q);
    return q;
  }

  ModPoly rem(ModPoly a, const ModPoly& b) const {
    divmod(a, b);
    return a;
  }

  ModPoly quo(ModPoly a, const ModPoly& b) const { return divmod(a, b); }

  ModPoly monic(ModPoly f) const {
    if (f.empty()) return f;
    i64 c = inv(f.back());
    for (auto& e : f) e = mul(e, c);
    return f;
  }

  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  ModPoly derivative(const ModPoly& f) const {
    ModPoly d;
    for (std::size_t k = 1; k < f.size(); ++k) d.push_back(mul(norm(static_cast<i64>(k)), f[k]));
    trim(d);
    return d;
  }

  ModPoly powmod(ModPoly base, const Int& e, const ModPoly& m) const {
    ModPoly result{1};
    base = rem(base, m);
    std::size_t bits = e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
    for (std::size_t i = bits; i-- > 0;) {
      result = rem(mul(result, result), m);
      if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) result = rem(mul(result, base), m);
    }
    return result;
  }

  bool is_one(const ModPoly& f) const { return f.size() == 1 && f[0] == 1; }
};

void squarefree(const Fp& F, const ModPoly& f, int mult, std::vector<std::pair<ModPoly, int>>& out) {
  ModPoly c = F.gcd(f, F.derivative(f));
  ModPoly w = F.quo(f, c);
  int i = 1;
  while (!F.is_one(w) && !w.empty()) {
    ModPoly y = F.gcd(w, c);
    ModPoly fac = F.quo(w, y);
    if (F.deg(fac) > 0) out.emplace_back(F.monic(fac), i * mult);
    w = y;
    c = F.quo(c, y);
    ++i;
  }
  if (F.deg(c) > 0) {
    // c is a p-th power: take the p-th root coefficientwise.
    ModPoly root;
    for (std::size_t k = 0; k < c.size(); k += static_cast<std::size_t>(F.p)) root.push_back(c[k]);
    squarefree(F, F.monic(root), mult * static_cast<int>(F.p), out);
  }
}

void equal_degree(const Fp& F, const ModPoly& g, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (F.deg(g) == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<i64> coeff(0, F.p - 1);
  Int exponent = (ipow(Int(F.p), static_cast<unsigned>(d)) - 1) / 2;
  for (;;) {
    ModPoly a(static_cast<std::size_t>(F.deg(g)), 0);
    for (auto& e : a) e = coeff(rng);
    F.trim(a);
    if (F.deg(a) < 1) continue;
    ModPoly b;
    if (F.p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)) splits in characteristic 2.
      ModPoly term = F.rem(a, g);
      b = term;
      for (int k = 1; k < d; ++k) {
        term = F.rem(F.mul(term, term), g);
        b = F.sub(b, F.sub(ModPoly{}, term));
      }
    } else {
      b = F.sub(F.powmod(a, exponent, g), ModPoly{1});
    }
    ModPoly u = F.gcd(g, b);
    if (F.deg(u) > 0 && F.deg(u) < F.deg(g)) {
      equal_degree(F, u, d, rng, out);
      equal_degree(F, F.monic(F.quo(g, u)), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<ModFactor> factor_mod_p(const IntPoly& f, std::int64_t p) {
  if (p < 2 || !is_prime(p)) throw Error("algebra.prime", "not a prime: " + std::to_string(p));
  Fp F{p};
  ModPoly g;
  for (const auto& c : f) g.push_back(static_cast<i64>(mod_floor(c, Int(p))));
  F.trim(g);
  if (F.deg(g) != degree(f)) throw Error("algebra.poly", "polynomial is not monic");

  std::vector<std::pair<ModPoly, int>> sqf;
  squarefree(F, F.monic(g), 1, sqf);

  std::mt19937_64 rng(0x5eed);
  std::vector<ModFactor> out;
  for (auto& [part, mult] : sqf) {
    ModPoly rest = part;
    ModPoly h{0, 1};
    for (int d = 1; F.deg(rest) >= 2 * d; ++d) {
      h = F.powmod(h, Int(p), rest);
      ModPoly fac = F.gcd(rest, F.sub(h, ModPoly{0, 1}));
      if (F.deg(fac) > 0) {
        std::vector<ModPoly> pieces;
        equal_degree(F, fac, d, rng, pieces);
        for (auto& piece : pieces) out.push_back({std::move(piece), mult});
        rest = F.quo(rest, fac);
        h = F.rem(h, rest);
      }
    }
    if (F.deg(rest) > 0) out.push_back({F.monic(rest), mult});
  }
  std::sort(out.begin(), out.end(), [](const ModFactor& a, const ModFactor& b) {
    if (a.factor.size() != b.factor.size()) return a.factor.size() < b.factor.size();
    return a.factor < b.factor;
  });
  return out;
}

}  // namespace raylat
