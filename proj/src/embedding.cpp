#include "raylat/embedding.hpp"

#include "raylat/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace raylat {

namespace {

using cld = std::complex<long double>;

std::vector<cld> approximate_roots(const IntPoly& f) {
  const int n = degree(f);
  std::vector<long double> c(f.size());
  long double bound = 1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    c[i] = f[i].convert_to<long double>();
    if (static_cast<int>(i) < n) bound = std::max(bound, 1 + std::fabs(c[i]));
  }
  auto eval = [&](cld z) {
    cld v = 0;
    for (int k = n; k >= 0; --k) v = v * z + c[static_cast<std::size_t>(k)];
    return v;
  };
  std::vector<cld> z(static_cast<std::size_t>(n));
  cld seed(0.4L, 0.9L);
  cld w = 1;
  for (int k = 0; k < n; ++k) {
    w *= seed;
    z[static_cast<std::size_t>(k)] = w * bound;
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double change = 0;
    for (int k = 0; k < n; ++k) {
      cld denom = 1;
      for (int j = 0; j < n; ++j) {
        if (j != k) denom *= z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
      }
      cld step = eval(z[static_cast<std::size_t>(k)]) / denom;
      z[static_cast<std::size_t>(k)] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-17L) break;
  }
  return z;
}

ComplexInterval point(long double re, long double im, long precision) {
  return {Interval::from_double(static_cast<double>(re), precision),
          Interval::from_double(static_cast<double>(im), precision)};
}

ComplexInterval collapse(const ComplexInterval& z) { return {z.re.midpoint(), z.im.midpoint()}; }

ComplexInterval divide(const ComplexInterval& a, const ComplexInterval& b) {
  Interval d = b.norm2();
  ComplexInterval num = a * b.conj();
  return {num.re / d, num.im / d};
}

ComplexInterval horner(const IntPoly& f, const ComplexInterval& z) {
  const int n = degree(f);
  long prec = z.precision();
  ComplexInterval v(prec);
  for (int k = n; k >= 0; --k) {
    v = v * z;
    v.re += Interval(f[static_cast<std::size_t>(k)], prec);
  }
  return v;
}

ComplexInterval horner_derivative(const IntPoly& f, const ComplexInterval& z) {
  const int n = degree(f);
  long prec = z.precision();
  ComplexInterval v(prec);
  for (int k = n; k >= 1; --k) {
    v = v * z;
    v.re += Interval(Int(f[static_cast<std::size_t>(k)] * k), prec);
  }
  return v;
}

}  // namespace

Embeddings::Embeddings(const Ring& ring, long precision) : precision_(precision) {
  const FieldDescriptor& fd = ring.field();
  const IntPoly& f = fd.poly;
  const int n = raylat::degree(f);
  r1_ = fd.r1;
  r2_ = fd.r2;
  const long wp = precision + 64;

  // Classify approximate roots; real candidates get real Newton refinement.
  std::vector<cld> approx = approximate_roots(f);
  std::vector<ComplexInterval> all;
  std::vector<bool> is_real;
  for (const auto& z : approx) {
    long double scale = std::max<long double>(1, std::abs(z));
    if (std::fabs(z.imag()) < 1e-9L * scale) {
      all.push_back(point(z.real(), 0, wp));
      is_real.push_back(true);
    } else if (z.imag() > 0) {
      all.push_back(point(z.real(), z.imag(), wp));
      is_real.push_back(false);
    }
  }
  int real_count = static_cast<int>(std::count(is_real.begin(), is_real.end(), true));
  if (real_count != r1_ || static_cast<int>(all.size()) != r1_ + r2_) {
    throw Error("fielddata.signature", "polynomial has " + std::to_string(real_count) +
                                           " real roots but the signature declares r1 = " + std::to_string(r1_));
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (int iter = 0; iter < 64; ++iter) {
      ComplexInterval step = divide(horner(f, all[i]), horner_derivative(f, all[i]));
      if (is_real[i]) step.im = Interval(wp);
      all[i] = collapse(all[i] - step);
      double size = std::max(std::fabs(step.re.mid()), std::fabs(step.im.mid()));
      if (size == 0 || std::log2(size) < -static_cast<double>(wp)) break;
    }
  }

  // Full root list including conjugates, for the inclusion test.
  std::vector<ComplexInterval> full;
  for (std::size_t i = 0; i < all.size(); ++i) {
    full.push_back(all[i]);
    if (!is_real[i]) full.push_back(all[i].conj());
  }
  std::vector<Interval> radius;
  for (std::size_t i = 0; i < full.size(); ++i) {
    ComplexInterval prod{Interval(1L, wp), Interval(wp)};
    for (std::size_t j = 0; j < full.size(); ++j) {
      if (j != i) prod = prod * (full[i] - full[j]);
    }
    ComplexInterval w = divide(horner(f, full[i]), prod);
    radius.push_back(Interval(static_cast<long>(n), wp) * w.abs());
  }
  for (std::size_t i = 0; i < full.size(); ++i) {
    for (std::size_t j = i + 1; j < full.size(); ++j) {
      if (!certainly_less(radius[i] + radius[j], (full[i] - full[j]).abs())) {
        throw Error("unitlog.roots", "could not isolate the roots of the defining polynomial");
      }
    }
  }

  // Enclosures: disks of radius rho around each centre, as boxes.
  std::vector<std::pair<ComplexInterval, bool>> certified;
  std::size_t k = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Interval rho = Interval::hull(-radius[k], radius[k]);
    ComplexInterval box{all[i].re + rho, is_real[i] ? Interval(wp) : all[i].im + rho};
    certified.emplace_back(box, is_real[i]);
    k += is_real[i] ? 1 : 2;
  }
  std::stable_sort(certified.begin(), certified.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second;
    return a.first.re.mid() < b.first.re.mid();
  });
  for (auto& c : certified) roots_.push_back(c.first);

  // Images of the integral basis.
  const auto& basis = ring.basis_to_power();
  images_.assign(static_cast<std::size_t>(places()), {});
  table_re_.assign(static_cast<std::size_t>(places()), {});
  table_im_.assign(static_cast<std::size_t>(places()), {});
  for (int place = 0; place < places(); ++place) {
    const ComplexInterval& z = roots_[static_cast<std::size_t>(place)];
    for (int b = 0; b < n; ++b) {
      ComplexInterval v(wp);
      ComplexInterval power{Interval(1L, wp), Interval(wp)};
      for (int m = 0; m < n; ++m) {
        const Rational& c = basis[b][m];
        if (c != 0) v += Interval(c, wp) * power;
        power = power * z;
      }
      images_[place].push_back(v);
      table_re_[place].push_back(v.re.mid());
      table_im_[place].push_back(v.im.mid());
    }
  }
}

ComplexInterval Embeddings::sigma(const AlgebraicInt& x, int place) const {
  const auto& img = images_[static_cast<std::size_t>(place)];
  long wp = img[0].precision();
  ComplexInterval v(wp);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] != 0) v += Interval(x[k], wp) * img[k];
  }
  return v;
}

Interval Embeddings::sigma_real(const AlgebraicInt& x, int place) const { return sigma(x, place).re; }

Interval Embeddings::abs_sigma(const AlgebraicInt& x, int place) const {
  ComplexInterval v = sigma(x, place);
  if (place < r1_) return abs(v.re);
  return v.abs();
}

Interval Embeddings::log_abs(const AlgebraicInt& x, int place) const {
  if (place < r1_) return log(abs(sigma(x, place).re));
  // log|z| = log(|z|^2)/2 avoids the square root.
  return log(sigma(x, place).norm2()) / Interval(2L, precision_);
}

std::vector<Interval> Embeddings::log_vector(const AlgebraicInt& x) const {
  std::vector<Interval> out;
  for (int i = 0; i < places(); ++i) out.push_back(log_abs(x, i));
  return out;
}

int Embeddings::real_sign(const AlgebraicInt& x, int place) const { return sigma(x, place).re.sign(); }

}  // namespace raylat
