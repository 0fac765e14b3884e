#pragma once

#include "raylat/latcount.hpp"
#include "raylat/oracle.hpp"
#include "raylat/unitlog.hpp"

#include <string>
#include <vector>

namespace raylat {

/// R_K from the fundamental units; exactly 1 when the unit rank is 0.
Interval field_regulator(const Ring& ring, long precision = 128);

/// Residue of zeta_K at 1: 2^{r1} (2 pi)^{r2} h_K R_K / (|mu_K| sqrt|d_K|).
Interval residue_alpha_K(const Ring& ring, long precision = 128);

/// 2^{r1} phi(q) h_K / h_{K,q}; throws Error("raycount.inconsistent") when
/// it is below 1.
Rational F_constant(const FieldDescriptor& fd, const RayContext& ctx);

/// 1000 n^{12n^2} (R/w)^{1/n} [log((2n)^{4n} R/w)]^n.
Interval E_constant(const FieldDescriptor& fd, const Interval& regulator);

/// E F^{1/n} log(3F)^n (x/Nq)^{1-1/n} + n^{8n} (R/w) F.
Interval error_bound(const FieldDescriptor& fd, const RayContext& ctx, const Interval& regulator, const Rational& x);

/// The bound before the field and modulus contributions are separated:
/// e^{n^2+8n} n^{(3n^2+11n-1)/2} 6n (yR/w F)^{1/n} log(yR/w F)^{(n-1)^2/n} (x/Nq)^{1-1/n} + yR/w F
/// with y = (2n)^{4n}.
Interval proof_internal_bound(const FieldDescriptor& fd, const RayContext& ctx, const Interval& regulator,
                              const Rational& x);

/// alpha_K phi(q) x / (h_{K,q} Nq).
Interval main_term(const Interval& alpha_K, const RayContext& ctx, const Rational& x);

/// e^{n^2+8n} n^{(3n^2+11n-1)/2} 6n (2n)^4 <= 500 n^{12n^2}, certified.
bool proof_constant_holds(int n, long precision = 128);
/// a + b <= 2ab, certified.
bool sum_product_holds(const Interval& a, const Interval& b);

/// 6n y^{1/n} (log y)^{(n-1)^2/n}; throws Error("raycount.range") for y < 2.
Interval ncinv_bound(const Interval& y, int n);

/// Sum of N(b)^{-(n-1)/n} over the m_product smallest-norm integral ideals
/// b with b * member principal, i.e. b in the inverse of member's class.
/// Ties at the last norm do not change the sum.
Interval ncinv_exact(const RayOracle& oracle, const Ideal& member, const Int& m_product, long precision = 128);

/// Unit-rank-1 integral of
/// max_i(|sigma_i(eta)|^{x/m} |sigma_i(alpha)|)^{-(n-1)} over R by
/// double-exponential quadrature, and the closed form
/// m (n/(n-1)) / (R_{K,q1} |N(alpha)|^{(n-1)/n}).
struct UnitIntegral {
  double quadrature = 0;
  double closed_form = 0;
};
UnitIntegral unit_integral(const Ring& ring, const RayContext& ctx, const AlgebraicInt& alpha);

/// Ideals of norm <= x in the ray class inverse to [c], for each x of the
/// ascending grid: elements of c congruent to 1 mod q, totally positive, in
/// the fundamental domain with |N| <= x Nc, divided by mu_{q1}.
std::vector<Int> count_ray_class_lattice(const DomainCounter& counter, const Ideal& c, const std::vector<Int>& xs,
                                         int jobs = 1);

/// Same count assembled from dyadic shells (t^n/2, t^n] of the counting
/// theorem, t^n = x Nc / 2^k down to 1, with the summed main terms and bounds.
struct ShellCount {
  Int count;
  Interval main_term;
  Interval bound;
  bool holds = false;
};
ShellCount count_ray_class_shells(const DomainCounter& counter, const Ideal& c, const Int& x, const Interval& ncinv);

struct ClassRow {
  std::string representative;  // an ideal of the class
  std::string inverse;         // c with [c] = [b]^{-1}
  Int x;
  std::optional<Int> lattice;
  std::optional<Int> oracle;
  std::optional<Int> shell;
  Interval main_term;
  Interval abs_error;
  Interval bound;
  Interval internal_bound;
  std::optional<Interval> shell_bound;
  bool verdict = false;
};

struct CountReport {
  std::string field;
  std::string modulus;
  std::vector<Int> xs;
  Int phi;
  Int h_Kq;
  Int empirical_h_Kq;
  Int norm_q;
  Interval alpha_K;
  Interval regulator;
  Interval regulator_q1;
  Interval E;
  Rational F;
  std::vector<Int> m;
  Int mu_q1;
  std::vector<Interval> ncinv_exact;  // per class
  Interval ncinv_bound;
  bool proof_constant = false;
  bool sum_product = false;
  std::vector<double> density;  // per class at the largest x
  std::vector<ClassRow> rows;
  bool verdict = false;
};

struct VerifyOptions {
  bool lattice = true;
  bool oracle = true;
  Int shell_max_x = 1000;  // shell mode only for x up to this
  int jobs = 1;
  PrecisionPolicy policy;
  /// Target classes by an ideal in each; empty means every class.
  std::vector<Ideal> classes;
};

/// Counts every requested class at every x both ways and checks the explicit
/// error bound, the identities and the constant checks.
CountReport verify_asymptotic(const Ring& ring, const Modulus& q, const std::vector<Int>& xs,
                              const VerifyOptions& options);

std::string report_tsv(const CountReport& report);
std::string report_json(const CountReport& report);

}  // namespace raylat
