#include "qprod/bounds.hpp"

#include <algorithm>

#include "detail_dilog.hpp"
#include "qprod/errors.hpp"

namespace qprod::bounds {

namespace {

using detail::dilog_real;

BoundReport failed(const std::string& id, mpfr_prec_t bits) {
  return BoundReport{id, false, Real::nan_value(bits)};
}

}  // namespace

BoundReport crude_log_bound(const ComplexValue& t, const ComplexValue& x) {
  mpfr_prec_t bits = std::max(t.prec(), x.prec());
  Real ax = x.abs();
  Real atx = (t * x).abs();
  if (!(ax < 1L) || !(atx < 1L)) return failed("crude_log", bits);
  return BoundReport{"crude_log", true, -log1p(-atx) / (1L - ax)};
}

LambertSums lambert_sums(const Real& x, const PrecisionContext& ctx) {
  mpfr_prec_t bits = ctx.bits();
  if (x.is_negative() || x >= 1L)
    throw domain_error("lambert_sums: x must lie in [0, 1)");
  Real xv = x.at_prec(bits);
  Real s(bits), s1(bits), s2(bits);
  Real thr = pow_si(Real(10L, bits), -(ctx.working_digits + 5));

  // Running powers: xk = x^k, xkm1 = x^{k-1}, xkm2 = x^{k-2} (k >= 2).
  Real xk = xv, xkm1 = Real(1L, bits), xkm2(bits);
  long k = 1;
  while (true) {
    Real d = 1L - xk;
    Real d2 = d * d;
    Real d3 = d2 * d;
    Real tS = xk / (k * d);
    Real tS1 = xkm1 / d2;
    Real tS2(bits);
    if (k == 1) {
      tS2 = Real(2L, bits) / d3;
    } else {
      tS2 = ((k - 1) * xkm2 + (k + 1) * xkm1 * xkm1) / d3;
    }
    s = s + tS;
    s1 = s1 + tS1;
    s2 = s2 + tS2;
    if (k >= 3 && tS < thr && tS1 < thr && tS2 < thr) break;
    xkm2 = xkm1;
    xkm1 = xk;
    xk = xk * xv;
    ++k;
    if (k > 200'000'000)
      throw domain_error("lambert_sums: x too close to 1 for requested precision");
  }
  return LambertSums{s, s1, s2};
}

BoundReport apriori_abs(const ComplexValue& t, const ComplexValue& x, long n) {
  mpfr_prec_t bits = std::max(t.prec(), x.prec());
  Real ax = x.abs();
  if (!(ax < 1L) || !ax.is_positive() || n < 0) return failed("apriori_abs", bits);
  Real g = -log(ax);
  Real at = t.abs();
  Real exn1 = exp(-(n + 1) * g);
  Real denom = 1L - at * exn1;
  if (!denom.is_positive()) return failed("apriori_abs", bits);  // |t| >= e^{(N+1)g}
  Real pi = Real::pi(bits);
  Real expo = pi * pi / (6 * g) - Real(n, bits) * (n + 1) * g / 2;
  Real atn = at.is_zero() && n == 0 ? Real(1L, bits) : pow_si(at, n);
  return BoundReport{"apriori_abs", true, atn * exp(expo) / denom};
}

BoundReport apriori_rel(const ComplexValue& t, const ComplexValue& x, long n) {
  mpfr_prec_t bits = std::max(t.prec(), x.prec());
  Real ax = x.abs();
  if (!(ax < 1L) || !ax.is_positive() || n < 0) return failed("apriori_rel", bits);
  Real g = -log(ax);
  Real at = t.abs();
  Real pi = Real::pi(bits);
  Real expo = pi * pi / (3 * g) - Real(n, bits) * (n + 1) * g / 2;
  Real denom = 1L - exp(-(n + 1) * g);
  Real base = exp(expo) / denom;
  if (at <= 1L) return BoundReport{"apriori_rel", true, base};
  Real edge = 1L - at * exp(-g);
  if (edge.is_positive())  // 1 < |t| < e^{g}
    return BoundReport{"apriori_rel", true, base / edge};
  return failed("apriori_rel", bits);
}

PosterioriBounds aposteriori(const ComplexValue& t, const ComplexValue& x, long n,
                             const ComplexValue& a_prev, const ComplexValue& s_n) {
  mpfr_prec_t bits = std::max(t.prec(), x.prec());
  Real ax = x.abs();
  if (!(ax < 1L) || !ax.is_positive() || n < 1)
    return PosterioriBounds{failed("aposteriori_abs", bits), failed("aposteriori_rel", bits)};
  Real g = -log(ax);
  Real at = t.abs();
  Real q = exp(-Real(n, bits) * g);
  Real denom = 1L - (1L + at) * q;
  if (!denom.is_positive())  // requires N > log(1+|t|)/gamma
    return PosterioriBounds{failed("aposteriori_abs", bits), failed("aposteriori_rel", bits)};
  Real abs_bound = a_prev.abs() * at * q / denom;
  BoundReport abs_rep{"aposteriori_abs", true, abs_bound};
  Real sn = s_n.abs();
  if (sn.is_zero())
    return PosterioriBounds{abs_rep, failed("aposteriori_rel", bits)};
  return PosterioriBounds{abs_rep, BoundReport{"aposteriori_rel", true, abs_bound / sn}};
}

Real largest_term_exponent(const Real& t_mod) {
  if (!t_mod.is_positive()) throw domain_error("largest_term_exponent: t must be positive");
  mpfr_prec_t bits = t_mod.prec();
  long working = std::max<long>(16, static_cast<long>(bits / 3.32));
  // Stationary point of log b_n over n*gamma = v: v* = log(1+t), where
  //   log b_n ~ [v log t - v^2/2 + pi^2/6 - Li2(e^{-v})]/gamma,
  // giving C(t) = log^2(1+t)/2 + Li2(t/(1+t)).  C(1) = pi^2/12 via the
  // half-argument dilog value; C(t) -> 0 as t -> 0.  Cross-checked against
  // the direct maximum of b_n at small gamma.
  Real lp = log1p(t_mod);                       // log(1+t)
  Real u = t_mod / (1L + t_mod);
  return lp * lp / 2 + dilog_real(u, bits, working);
}

long largest_term_peak_index(const Real& t_mod, const GammaParam& gamma) {
  if (!t_mod.is_positive()) throw domain_error("largest_term_peak_index: t must be positive");
  if (!gamma.value.is_positive()) throw domain_error("largest_term_peak_index: gamma must be positive");
  return (log1p(t_mod) / gamma.value).floor_long();
}

Real dilog(const Real& u, const PrecisionContext& ctx) {
  if (u.is_negative() || u > 1L) throw domain_error("dilog: argument must lie in [0, 1]");
  return dilog_real(u.at_prec(ctx.bits()), ctx.bits(), ctx.working_digits);
}

LogSandwich sandwich_logR_real(const Real& t, const GammaParam& gamma,
                               const PrecisionContext& ctx) {
  if (t.is_negative() || t > 1L) throw domain_error("sandwich_logR_real: t must lie in [0, 1]");
  if (!gamma.value.is_positive()) throw domain_error("sandwich_logR_real: gamma must be positive");
  mpfr_prec_t bits = ctx.bits();
  Real g = gamma.value.at_prec(bits);
  Real tv = t.at_prec(bits);
  Real u_hi = tv * exp(-g / 2);
  Real u_lo = tv * exp(-g);
  // -log R <= Li2(t e^{-g/2})/g  and  -log R >= Li2(t e^{-g})/g - log(1 - t e^{-g})/2.
  Real minus_log_upper = dilog_real(u_hi, bits, ctx.working_digits) / g;
  Real minus_log_lower =
      dilog_real(u_lo, bits, ctx.working_digits) / g - log1p(-u_lo) / 2;
  return LogSandwich{-minus_log_upper, -minus_log_lower};
}

PartialProductBound partial_product_lower(long n, const GammaParam& gamma,
                                          const PrecisionContext& ctx) {
  if (n < 1) throw domain_error("partial_product_lower: n must be >= 1");
  if (!gamma.value.is_positive())
    throw domain_error("partial_product_lower: gamma must be positive");
  mpfr_prec_t bits = ctx.bits();
  Real g = gamma.value.at_prec(bits);
  Real pi = Real::pi(bits);
  Real eng = exp(-Real(n, bits) * g);
  Real half_root = sqrt(1L - eng);
  Real general =
      exp((dilog_real(eng, bits, ctx.working_digits) - pi * pi / 6) / g) * half_root;
  PartialProductBound out{general, std::nullopt};
  if (Real(n, bits) * g <= Real::ln2(bits)) {
    Real l2 = Real::ln2(bits);
    out.small_exponent = exp((-l2 * l2 / 2 - pi * pi / 12) / g) * half_root;
  }
  return out;
}

}  // namespace qprod::bounds
