#include "raylat/latcount.hpp"

#include "raylat/error.hpp"
#include "raylat/matrix.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace raylat {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error("latcount.overflow", "lattice coordinate overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error("latcount.overflow", "lattice coordinate overflow");
  return out;
}

AlgebraicInt to_algebraic(const CoeffVector& c) {
  AlgebraicInt x;
  for (auto v : c) x.push_back(Int(v));
  return x;
}

CoeffVector to_coeffs(const AlgebraicInt& x) {
  CoeffVector c;
  for (const auto& v : x) c.push_back(to_i64(v));
  return c;
}

std::string coeff_string(const CoeffVector& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

constexpr double kEps = 0x1p-52;

// Runs fn(i) for i in [0, count) on up to jobs threads; the first exception
// is rethrown on the caller's thread.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(jobs, static_cast<int>(count)); ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

struct DomainCounter::Approx {
  std::array<double, 8> re{};
  std::array<double, 8> abs{};
  std::array<double, 8> err{};
  bool zero = true;
  bool reliable = true;  // every |x_i| exceeds twice its error bound
};

// A membership question with its bounds converted to doubles once.
struct DomainCounter::Query {
  const AlphaBox& box;
  const std::vector<int>& signs;
  Rational norm_lo;
  Rational norm_hi;
  double hi;
  double lo_floor;
  std::vector<double> box_lo;
  std::vector<double> box_hi;

  Query(const AlphaBox& b, const std::vector<int>& s, const Rational& lo, const Rational& h)
      : box(b), signs(s), norm_lo(lo), norm_hi(h) {
    hi = to_double(h);
    lo_floor = to_double(Rational(floor_div(numerator(lo), denominator(lo))));
    for (const auto& v : b.lo) box_lo.push_back(to_double(v));
    for (const auto& v : b.hi) box_hi.push_back(to_double(v));
  }
};

DomainCounter::DomainCounter(const Ring& ring, const RayContext& ctx, const PrecisionPolicy& policy)
    : ring_(ring), ctx_(ctx), policy_(policy) {
  const FieldDescriptor& fd = ring.field();
  n_ = fd.degree;
  r_ = ctx.r;
  r1_ = fd.r1;
  places_ = fd.r1 + fd.r2;
  escalate(policy_, [&](long prec) {
    base_emb_ = std::make_unique<Embeddings>(ring_, prec);
    base_domain_ = std::make_unique<LogDomain>(ring_, *base_emb_, ctx_);
    return 0;
  });
  table_re_ = base_emb_->table_re();
  table_im_ = base_emb_->table_im();
  for (const auto& row : base_domain_->logs()) {
    std::vector<double> v;
    for (const auto& x : row) v.push_back(x.mid());
    logs_.push_back(std::move(v));
  }
  for (const auto& row : base_domain_->inverse()) {
    std::vector<double> v;
    for (const auto& x : row) v.push_back(x.mid());
    inverse_.push_back(std::move(v));
  }
}

const DomainCounter::Level& DomainCounter::level(long precision) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(precision);
  if (it != cache_.end()) return it->second;
  Level lv;
  lv.emb = std::make_unique<Embeddings>(ring_, precision);
  lv.domain = std::make_unique<LogDomain>(ring_, *lv.emb, ctx_);
  return cache_.emplace(precision, std::move(lv)).first->second;
}

DomainCounter::Approx DomainCounter::approximate(const CoeffVector& c) const {
  Approx a;
  for (auto v : c) a.zero = a.zero && v == 0;
  for (int i = 0; i < places_; ++i) {
    long double re = 0, im = 0, size = 0;
    for (int k = 0; k < n_; ++k) {
      auto ck = static_cast<long double>(c[k]);
      re += ck * table_re_[i][k];
      im += ck * table_im_[i][k];
      size += std::fabs(ck) * (std::fabs(table_re_[i][k]) + std::fabs(table_im_[i][k]));
    }
    double e = 4.0 * (n_ + 2) * kEps * static_cast<double>(size) + 1e-300;
    double m = static_cast<double>(std::hypot(re, im));
    a.re[i] = static_cast<double>(re);
    a.abs[i] = m;
    a.err[i] = e;
    a.reliable = a.reliable && m > 2 * e;
  }
  return a;
}

std::optional<Int> DomainCounter::classify(const AlgebraicInt& alpha, const AlphaBox& box,
                                           const std::vector<int>& signs, const Rational& norm_lo,
                                           const Rational& norm_hi) const {
  return decide(to_coeffs(alpha), Query(box, signs, norm_lo, norm_hi));
}

std::optional<Int> DomainCounter::decide(const CoeffVector& coords, const Query& query) const {
  const AlphaBox& box = query.box;
  const std::vector<int>& signs = query.signs;
  const Rational& norm_lo = query.norm_lo;
  const Rational& norm_hi = query.norm_hi;
  Approx ap = approximate(coords);
  if (ap.zero) return std::nullopt;
  if (!ap.reliable) {
    AlgebraicInt alpha = to_algebraic(coords);
    Int norm = abs(ring_.norm(alpha));
    if (norm == 0 || Rational(norm) <= norm_lo || Rational(norm) > norm_hi) return std::nullopt;
    if (!certified_member(alpha, norm, box, signs, {})) return std::nullopt;
    return norm;
  }

  // Norm: rigorous enclosure from the per-place error bounds.
  double low = 1, high = 1;
  for (int i = 0; i < places_; ++i) {
    double l = ap.abs[i] - ap.err[i];
    double h = ap.abs[i] + ap.err[i];
    int w = i < r1_ ? 1 : 2;
    for (int e = 0; e < w; ++e) {
      low *= l;
      high *= h;
    }
  }
  low *= 1 - 4 * n_ * kEps;
  high *= 1 + 4 * n_ * kEps;
  if (low > query.hi * (1 + 4 * kEps)) return std::nullopt;
  if (high < query.lo_floor + 1 - 1e-9) return std::nullopt;
  AlgebraicInt alpha = to_algebraic(coords);
  Int norm;
  double c = std::ceil(low), f = std::floor(high);
  if (c == f && high < 0x1p52) {
    norm = Int(static_cast<long long>(c));
  } else {
    norm = abs(ring_.norm(alpha));
  }
  if (Rational(norm) <= norm_lo || Rational(norm) > norm_hi) return std::nullopt;

  bool settled = true;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (std::fabs(ap.re[i]) > ap.err[i]) {
      if ((ap.re[i] > 0 ? 1 : -1) != signs[i]) return std::nullopt;
    } else {
      settled = false;
    }
  }

  std::vector<double> coords_d;
  if (r_ > 0) {
    double shift = std::log(to_double(norm)) / n_;
    std::vector<double> l(static_cast<std::size_t>(places_)), dl(static_cast<std::size_t>(places_));
    for (int i = 0; i < places_; ++i) {
      l[i] = std::log(ap.abs[i]);
      dl[i] = 2 * ap.err[i] / ap.abs[i] + 4 * kEps * (std::fabs(l[i]) + std::fabs(shift));
    }
    for (int j = 0; j < r_; ++j) {
      double a = 0, e = 0;
      for (int i = 0; i < r_; ++i) {
        a += inverse_[j][i] * (l[i] - shift);
        e += std::fabs(inverse_[j][i]) * dl[i];
      }
      e += 1e-13 * (1 + std::fabs(a));
      coords_d.push_back(a);
      double lo = query.box_lo[j], hi = query.box_hi[j];
      double tol = 4 * kEps * (1 + std::fabs(lo) + std::fabs(hi));
      if (a + e < lo - tol || a - e >= hi + tol) return std::nullopt;
      if (!(a - e >= lo + tol && a + e < hi - tol)) settled = false;
    }
  }
  if (settled) return norm;
  if (!certified_member(alpha, norm, box, signs, coords_d)) return std::nullopt;
  return norm;
}

std::optional<std::vector<Rational>> DomainCounter::exact_coordinates(const AlgebraicInt& alpha, const Int& norm,
                                                                      const std::vector<double>& approx) const {
  // Guess alpha_j = p_j/s with a small common denominator, then confirm:
  // |sigma_i(alpha)|^{sn} = |N|^s prod_j |sigma_i(eta_j)|^{n p_j} for all i
  // iff A/B is a root of unity, tested as A^w = B^w.
  long s = 1;
  std::vector<long> p;
  for (; s <= 128; ++s) {
    p.clear();
    bool ok = true;
    for (double a : approx) {
      double v = a * static_cast<double>(s);
      double rv = std::round(v);
      if (std::fabs(v - rv) > 1e-8 * static_cast<double>(s)) {
        ok = false;
        break;
      }
      p.push_back(static_cast<long>(rv));
    }
    if (ok) break;
  }
  if (s > 128 || s * n_ > 1024) return std::nullopt;
  AlgebraicInt a = ring_.pow(alpha, static_cast<unsigned>(s * n_));
  AlgebraicInt b = ring_.from_int(ipow(norm, static_cast<unsigned>(s)));
  for (int j = 0; j < r_; ++j) {
    long e = p[static_cast<std::size_t>(j)] * n_;
    if (e < 0) a = ring_.mul(a, ring_.pow(ctx_.generators[j], static_cast<unsigned>(-e)));
    if (e > 0) b = ring_.mul(b, ring_.pow(ctx_.generators[j], static_cast<unsigned>(e)));
  }
  auto w = static_cast<unsigned>(ring_.field().torsion_order);
  if (!(ring_.pow(a, w) == ring_.pow(b, w))) return std::nullopt;
  std::vector<Rational> out;
  for (long pj : p) out.emplace_back(Int(pj), Int(s));
  return out;
}

bool DomainCounter::certified_member(const AlgebraicInt& alpha, const Int& norm, const AlphaBox& box,
                                     const std::vector<int>& signs, const std::vector<double>& approx) const {
  std::optional<std::vector<Rational>> exact;
  if (!approx.empty()) exact = exact_coordinates(alpha, norm, approx);

  auto at = [&](long prec) {
    const Embeddings* ep = base_emb_.get();
    const LogDomain* dp = base_domain_.get();
    if (prec != base_emb_->precision()) {
      const Level& lv = level(prec);
      ep = lv.emb.get();
      dp = lv.domain.get();
    }
    const Embeddings& emb = *ep;
    const LogDomain& dom = *dp;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (emb.real_sign(alpha, static_cast<int>(i)) != signs[i]) return false;
    }
    if (exact) {
      for (int j = 0; j < r_; ++j) {
        if ((*exact)[j] < box.lo[j] || (*exact)[j] >= box.hi[j]) return false;
      }
      return true;
    }
    DomainCoordinates c = dom.coordinates(alpha);
    for (int j = 0; j < r_; ++j) {
      Interval lo(box.lo[j], prec), hi(box.hi[j], prec);
      if (certainly_less(c.alpha[j], lo) || certainly_less_equal(hi, c.alpha[j])) return false;
      if (!certainly_less_equal(lo, c.alpha[j]) || !certainly_less(c.alpha[j], hi)) {
        throw Indeterminate("unit coordinate on a cell boundary");
      }
    }
    return true;
  };
  try {
    return escalate(policy_, at);
  } catch (const Error& e) {
    if (e.code() != "precision.cap" || exact) throw;
    const Level& lv = level(policy_.cap);
    DomainCoordinates c = lv.domain->coordinates(alpha);
    std::vector<double> mids;
    for (const auto& a : c.alpha) mids.push_back(a.mid());
    exact = exact_coordinates(alpha, norm, mids);
    if (!exact) {
      throw Error("latcount.boundary", "ExactBoundary: membership of alpha = " + coeff_string(to_coeffs(alpha)) +
                                           " undecided at the precision cap and no exact tie certificate");
    }
    return at(policy_.cap);
  }
}

RealVector DomainCounter::hprime(const CoeffVector& x, const std::vector<double>& scale) const {
  RealVector v;
  for (int i = 0; i < places_; ++i) {
    long double re = 0, im = 0;
    for (int k = 0; k < n_; ++k) {
      re += static_cast<long double>(x[k]) * table_re_[i][k];
      im += static_cast<long double>(x[k]) * table_im_[i][k];
    }
    v.push_back(re * scale[i]);
    if (i >= r1_) v.push_back(im * scale[i]);
  }
  return v;
}

std::vector<RealVector> DomainCounter::hprime_rows(const IntMatrix& rows, const std::vector<double>& scale) const {
  std::vector<RealVector> out;
  for (const auto& row : rows) out.push_back(hprime(to_coeffs(row), scale));
  return out;
}

void DomainCounter::enumerate_scaled(const Ideal& lattice, const AlgebraicInt& translate,
                                     const std::vector<double>& scale, long double radius2,
                                     const std::function<void(const CoeffVector&)>& visit) const {
  const IntMatrix& h = ideal_basis(lattice);
  Lattice lat;
  lat.basis = hprime_rows(h, scale);
  KzResult kz = kz_basis(lat);
  IntMatrix reduced = multiply(kz.transform, h);
  std::vector<CoeffVector> rows;
  for (const auto& row : reduced) rows.push_back(to_coeffs(row));
  CoeffVector t0 = to_coeffs(translate);
  RealVector target = hprime(t0, scale);
  for (auto& v : target) v = -v;
  enumerate_ball(kz.lattice.basis, target, radius2, [&](const CoeffVector& z) {
    CoeffVector x = t0;
    for (std::size_t l = 0; l < z.size(); ++l) {
      if (z[l] == 0) continue;
      for (int k = 0; k < n_; ++k) x[k] = checked_add(x[k], checked_mul(z[l], rows[l][k]));
    }
    visit(x);
  });
}

Int DomainCounter::enumerate_in_cell(const CellSpec& cell) const {
  if (static_cast<int>(cell.k.size()) != r_) throw Error("latcount.cell", "twist vector has the wrong length");
  std::vector<Interval> beta = base_domain_->beta_twist(cell.k);
  std::vector<double> scale;
  for (const auto& b : beta) scale.push_back(b.mid());
  AlphaBox box;
  for (int j = 0; j < r_; ++j) {
    box.lo.emplace_back(cell.k[j], ctx_.m[j]);
    box.hi.emplace_back(cell.k[j] + 1, ctx_.m[j]);
  }
  double x = to_double(cell.t_power);
  if (x <= 0) return 0;
  long double radius2 = (r_ + 1) * std::exp(2.0L * r_) * std::pow(static_cast<long double>(x), 2.0L / n_);
  radius2 *= 1 + 1e-9L;
  Query query(box, cell.signs, cell.t_power / 2, cell.t_power);
  Int count = 0;
  enumerate_scaled(cell.lattice, cell.translate, scale, radius2, [&](const CoeffVector& c) {
    if (decide(c, query)) ++count;
  });
  return count;
}

namespace {

struct SubCell {
  std::vector<long> k;
};

}  // namespace

std::vector<Int> DomainCounter::domain_norms(const Ideal& lattice, const AlgebraicInt& translate,
                                             const std::vector<int>& signs, const Int& max_norm, int jobs) const {
  return region_norms(lattice, translate, signs, Rational(0), Rational(max_norm), jobs);
}

Int DomainCounter::enumerate_untwisted(const Ideal& lattice, const AlgebraicInt& translate,
                                       const std::vector<int>& signs, const Rational& t_power) const {
  return Int(region_norms(lattice, translate, signs, t_power / 2, t_power, 1).size());
}

std::vector<Int> DomainCounter::region_norms(const Ideal& lattice, const AlgebraicInt& translate,
                                             const std::vector<int>& signs, const Rational& norm_lo,
                                             const Rational& norm_hi, int jobs) const {
  // The domain is cut into sub-cells of width 1/M_j in each unit coordinate;
  // each sub-cell lies in the box |x_i| <= B_i and is searched inside the
  // ellipsoid sum (x_i/B_i)^2 <= r+1. M_j is chosen near the sum of the
  // positive weighted logs of eta_j, which minimizes the total volume.
  double x = to_double(norm_hi);
  if (x <= 0) return {};
  double root = std::pow(x, 1.0 / n_);
  std::vector<long> subdiv;
  for (int j = 0; j < r_; ++j) {
    double p = 0;
    for (int i = 0; i < places_; ++i) p += (i < r1_ ? 1 : 2) * std::max(0.0, logs_[j][i]);
    subdiv.push_back(std::max(1L, std::lround(p)));
  }
  std::vector<SubCell> cells{{}};
  for (int j = 0; j < r_; ++j) {
    std::vector<SubCell> next;
    for (const auto& c : cells) {
      for (long k = 0; k < subdiv[j]; ++k) {
        SubCell d = c;
        d.k.push_back(k);
        next.push_back(std::move(d));
      }
    }
    cells = std::move(next);
  }
  AlphaBox box;
  for (int j = 0; j < r_; ++j) {
    box.lo.emplace_back(0);
    box.hi.emplace_back(1);
  }
  const long double radius2 = places_ * (1 + 1e-9L);
  const Query query(box, signs, norm_lo, norm_hi);

  std::vector<std::vector<Int>> found(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t idx) {
    const SubCell& cell = cells[idx];
    std::vector<double> scale;
    for (int i = 0; i < places_; ++i) {
      double e = 0;
      for (int j = 0; j < r_; ++j) {
        e += (static_cast<double>(cell.k[j]) * logs_[j][i] + std::max(0.0, logs_[j][i])) / subdiv[j];
      }
      scale.push_back(1.0 / (root * std::exp(e) * (1 + 1e-6)));
    }
    enumerate_scaled(lattice, translate, scale, radius2, [&](const CoeffVector& c) {
      if (r_ > 0 && !owns(c, cell.k, subdiv)) return;
      if (auto norm = decide(c, query)) found[idx].push_back(*norm);
    });
  });
  std::vector<Int> out;
  for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool DomainCounter::owns(const CoeffVector& c, const std::vector<long>& k, const std::vector<long>& subdiv) const {
  // Sub-cell assignment from approximate coordinates; any consistent choice
  // works because neighbouring ellipsoids overlap beyond the rounding error.
  Approx ap = approximate(c);
  if (ap.zero) return false;
  std::vector<double> a;
  if (ap.reliable) {
    double logn = 0;
    for (int i = 0; i < places_; ++i) logn += (i < r1_ ? 1 : 2) * std::log(ap.abs[i]);
    for (int j = 0; j < r_; ++j) {
      double s = 0;
      for (int i = 0; i < r_; ++i) s += inverse_[j][i] * (std::log(ap.abs[i]) - logn / n_);
      a.push_back(s);
    }
  } else {
    DomainCoordinates dc = base_domain_->coordinates(to_algebraic(c));
    for (const auto& v : dc.alpha) a.push_back(v.mid());
  }
  for (int j = 0; j < r_; ++j) {
    long cell = static_cast<long>(std::floor(a[j] * static_cast<double>(subdiv[j])));
    cell = std::clamp(cell, 0L, subdiv[j] - 1);
    if (cell != k[j]) return false;
  }
  return true;
}

long double DomainCounter::twisted_minimum(const Ideal& lattice, const std::vector<Int>& k) const {
  std::vector<double> scale;
  for (const auto& b : base_domain_->beta_twist(k)) scale.push_back(b.mid());
  Lattice lat;
  lat.basis = hprime_rows(ideal_basis(lattice), scale);
  return std::sqrt(shortest_vector(lat).norm2);
}

Interval DomainCounter::hprime_covolume(const Ideal& lattice) const {
  long prec = base_emb_->precision();
  const FieldDescriptor& fd = ring_.field();
  Interval v = sqrt(Interval(Int(abs(fd.disc)), prec)) * Interval(lattice.norm, prec);
  for (int i = 0; i < fd.r2; ++i) v /= Interval(2L, prec);
  return v;
}

AlgebraicInt translate_for(const Ring& ring, const Ideal& a, const Ideal& q, const AlgebraicInt& b) {
  AlgebraicInt e = crt_one(ring, a, q);
  return reduce_mod(ideal_mul(ring, a, q), ring.mul(e, b));
}

Interval counting_main_term(const DomainCounter& counter, const Interval& regulator, const Int& norm_aq,
                            const Rational& t_power) {
  const FieldDescriptor& fd = counter.ring().field();
  long prec = regulator.precision();
  Interval two_pi = Interval(2L, prec) * Interval::pi(prec);
  Interval v = regulator * Interval(t_power, prec);
  for (int i = 0; i < fd.r2; ++i) v *= two_pi;
  return v / (sqrt(Interval(4L, prec) * Interval(Int(abs(fd.disc)), prec)) * Interval(norm_aq, prec));
}

Interval counting_error_bound(int n, const Interval& ncinv, const Interval& t, const Int& norm_aq,
                              const Int& m_product, bool include_m_term) {
  long prec = ncinv.precision();
  Interval nn(static_cast<long>(n), prec);
  Interval c = exp(Interval(static_cast<long>(n * n + 8 * n), prec)) *
               pow(nn, Rational(3 * n * n + 11 * n - 1, 2));
  Interval v = c * ncinv * pow(t, static_cast<unsigned>(n - 1)) /
               pow(Interval(norm_aq, prec), Rational(n - 1, n));
  if (include_m_term) v += Interval(m_product, prec);
  return v;
}

CountCellReport count_S(const DomainCounter& counter, const Ideal& a, const Modulus& q, const AlgebraicInt& b,
                        const std::vector<int>& signs, const Rational& t_power, const Interval& ncinv) {
  const Ring& ring = counter.ring();
  const RayContext& ctx = counter.context();
  const int n = ring.degree();
  const int r = ctx.r;
  long prec = ncinv.precision();
  CountCellReport rep;
  CellSpec cell{ideal_mul(ring, a, q.ideal), translate_for(ring, a, q.ideal, b), {}, signs, t_power};
  rep.count = 0;
  for (const auto& k : twist_vectors(ctx.m)) {
    cell.k = k;
    rep.count += counter.enumerate_in_cell(cell);
    rep.max_delta1 = std::max(rep.max_delta1, counter.twisted_minimum(cell.lattice, k));
  }
  Interval reg = q1_regulator(ring, counter.embeddings(), ctx);
  rep.main_term = counting_main_term(counter, reg, cell.lattice.norm, t_power);
  Interval t = pow(Interval(t_power, prec), Rational(1, n));
  Interval denom = sqrt(Interval(static_cast<long>(n), prec)) *
                   (Interval(2L, prec) * Interval::pi(prec) + Interval(static_cast<long>(r), prec)) *
                   exp(Interval(static_cast<long>(r), prec));
  Interval delta = Interval::from_double(static_cast<double>(rep.max_delta1), prec) *
                   Interval::from_double(1 + 1e-9, prec);
  rep.m_term_dropped = q.is_unit() || certainly_less_equal(delta / denom, t);
  rep.error_bound = counting_error_bound(n, ncinv, t, cell.lattice.norm, ctx.m_product(), !rep.m_term_dropped);
  rep.holds = certainly_less_equal(abs(Interval(rep.count, prec) - rep.main_term), rep.error_bound);
  return rep;
}

Interval minkowski_t_threshold(const FieldDescriptor& fd, const RayContext& ctx, const Int& norm_aq, long precision) {
  Interval v = sqrt(Interval(Int(abs(fd.disc)), precision)) * Interval(norm_aq, precision);
  Interval two_over_pi = Interval(2L, precision) / Interval::pi(precision);
  for (int i = 0; i < fd.r2; ++i) v *= two_over_pi;
  v = pow(v, Rational(1, fd.degree));
  Int excess = 0;
  for (const auto& m : ctx.m) excess += m - 1;
  v *= exp(Interval(excess, precision));
  return v / sqrt(Interval(static_cast<long>(fd.degree * (ctx.r + 1)), precision));
}

std::vector<std::vector<Int>> twist_vectors(const std::vector<Int>& m) {
  std::vector<std::vector<Int>> out{{}};
  for (const auto& mj : m) {
    std::vector<std::vector<Int>> next;
    for (const auto& k : out) {
      for (Int v = 0; v < mj; ++v) {
        auto e = k;
        e.push_back(v);
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<int>> sign_patterns(int r1) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << r1); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < r1; ++i) s.push_back((mask >> i) & 1u ? -1 : 1);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace raylat
