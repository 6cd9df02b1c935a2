#include "qprod/eta.hpp"

#include <algorithm>
#include <mutex>
#include <vector>

#include "detail_dilog.hpp"
#include "qprod/errors.hpp"
#include "qprod/euler.hpp"

namespace qprod::eta {

namespace {

void require_unit_interval(const Real& x, const char* who) {
  if (!x.is_positive() || x >= 1L)
    throw domain_error(std::string(who) + ": x must lie in (0, 1)");
}

// Evaluate R(1, e^{-2 pi w}) for w >= 1 and return its log; gamma = 2 pi w is
// large, so the certified series needs only a handful of terms.
Real log_R1_at(const Real& w, const PrecisionContext& ctx) {
  mpfr_prec_t bits = ctx.bits();
  Real x = exp(-2 * Real::pi(bits) * w);
  Real k = (ctx.requested_digits + 2) * Real::ln10(bits);
  euler::EvalCertificate cert = euler::evaluate(
      ComplexValue(1L, bits), ComplexValue::from_real(x), ctx, k);
  return log(cert.value.re());
}

}  // namespace

Real r0_plus(const Real& x, const PrecisionContext& ctx) {
  require_unit_interval(x, "r0_plus");
  mpfr_prec_t bits = ctx.bits();
  Real xv = x.at_prec(bits);
  Real l = log(xv);  // negative
  Real pi = Real::pi(bits);
  return exp(pi * pi / (6 * l)) * rootn(1L + 4 * pi * pi / (l * l), 4);
}

Real r0_minus(const Real& x, const PrecisionContext& ctx) {
  require_unit_interval(x, "r0_minus");
  mpfr_prec_t bits = ctx.bits();
  Real xv = x.at_prec(bits);
  Real l = log(xv);
  Real pi = Real::pi(bits);
  Real num = 1L + pi * pi / (l * l);
  Real den = 1L + 4 * pi * pi / (l * l);
  return exp(-pi * pi / (12 * l)) * rootn(num / den, 4);
}

Real f_of(const Real& z, const PrecisionContext& ctx) {
  if (!z.is_positive()) throw domain_error("f_of: z must be positive");
  mpfr_prec_t bits = ctx.bits();
  Real zv = z.at_prec(bits);
  Real w = zv < 1L ? 1L / zv : zv;  // f(z) = f(1/z)
  return log_R1_at(w, ctx) + Real::pi(bits) / (12 * w) - log1p(1L / (w * w)) / 4;
}

Real g_of(const Real& z, const PrecisionContext& ctx) {
  if (!z.is_positive()) throw domain_error("g_of: z must be positive");
  mpfr_prec_t bits = ctx.bits();
  Real zv = z.at_prec(bits);
  Real s2 = sqrt(Real(2L, bits));
  return f_of(zv * s2, ctx) - f_of(zv / s2, ctx);
}

Real eta_imag(const Real& y, const PrecisionContext& ctx) {
  if (!y.is_positive()) throw domain_error("eta_imag: y must be positive");
  mpfr_prec_t bits = ctx.bits();
  Real yv = y.at_prec(bits);
  if (yv < 1L) return eta_imag(1L / yv, ctx) / sqrt(yv);
  Real pi = Real::pi(bits);
  return exp(-pi * yv / 12 + log_R1_at(yv, ctx));
}

SharpAsymptotic sharp_log_R1(const GammaParam& gamma, const PrecisionContext& ctx) {
  if (!gamma.value.is_positive()) throw domain_error("sharp_log_R1: gamma must be positive");
  mpfr_prec_t bits = ctx.bits();
  Real g = gamma.value.at_prec(bits);
  Real pi = Real::pi(bits);
  Real value = -pi * pi / (6 * g) - log(g) / 2 + log(2 * pi) / 2 + g / 24;
  return SharpAsymptotic{value, exp(-4 * pi * pi / g)};
}

SharpAsymptotic sharp_log_Rminus1(const GammaParam& gamma, const PrecisionContext& ctx) {
  if (!gamma.value.is_positive())
    throw domain_error("sharp_log_Rminus1: gamma must be positive");
  mpfr_prec_t bits = ctx.bits();
  Real g = gamma.value.at_prec(bits);
  Real pi = Real::pi(bits);
  Real value = pi * pi / (12 * g) - Real::ln2(bits) / 2 + g / 24;
  return SharpAsymptotic{value, exp(-pi * pi / g)};
}

mpq_class bernoulli(unsigned long m) {
  static std::mutex mu;
  static std::vector<mpq_class> cache;  // cache[j] = B_j
  std::lock_guard<std::mutex> lock(mu);
  if (cache.empty()) {
    cache.emplace_back(1);      // B_0
    cache.emplace_back(-1, 2);  // B_1
  }
  while (cache.size() <= m) {
    unsigned long j = cache.size();
    if (j % 2 == 1) {
      cache.emplace_back(0);
      continue;
    }
    // sum_{i<=j} C(j+1, i) B_i = 0  =>  B_j = -(1/(j+1)) sum_{i<j} C(j+1, i) B_i.
    mpq_class acc(0);
    mpz_class binom;
    for (unsigned long i = 0; i < j; ++i) {
      mpz_bin_uiui(binom.get_mpz_t(), j + 1, i);
      acc += mpq_class(binom) * cache[i];
    }
    acc /= static_cast<long>(j + 1);
    mpq_class b = -acc;
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[m];
}

AsymptoticResult asymptotic_log_R(const Real& t, const GammaParam& gamma, long max_m,
                                  const PrecisionContext& ctx) {
  mpfr_prec_t bits = ctx.bits();
  Real tv = t.at_prec(bits);
  Real eps(1e-3, bits);
  if (abs(tv) > 1L - eps)
    throw domain_error("asymptotic_log_R: requires real |t| <= 1 - 1e-3");
  if (!gamma.value.is_positive())
    throw domain_error("asymptotic_log_R: gamma must be positive");
  if (max_m < 0) throw domain_error("asymptotic_log_R: max_m must be >= 0");
  Real g = gamma.value.at_prec(bits);
  Real omt = 1L - tv;

  // Negative-order polylogs via the derivative ladder Li_{-(j+1)} = (t d/dt) Li_{-j}:
  // Li_{-j}(t) = A_j(t)/(1-t)^{j+1} with integer polynomials
  // A_{j+1} = t [ (1-t) A_j' + (j+1) A_j ],  A_0 = t.
  std::vector<std::vector<mpz_class>> apolys;  // apolys[j] = coeffs of A_j
  apolys.push_back({mpz_class(0), mpz_class(1)});
  auto li_negative = [&](long j) -> Real {
    while (static_cast<long>(apolys.size()) <= j) {
      const std::vector<mpz_class>& a = apolys.back();
      long jj = static_cast<long>(apolys.size()) - 1;
      size_t deg = a.size() - 1;
      std::vector<mpz_class> next(deg + 2, mpz_class(0));
      // t * (A' - t A' + (jj+1) A): assemble coefficient-wise.
      for (size_t i = 0; i <= deg; ++i) {
        if (i + 1 <= deg) next[i + 1] += mpz_class(static_cast<long>(i + 1)) * a[i + 1];
        if (i >= 1) next[i + 1] -= mpz_class(static_cast<long>(i)) * a[i];
        next[i + 1] += mpz_class(jj + 1) * a[i];
      }
      apolys.push_back(std::move(next));
    }
    const std::vector<mpz_class>& a = apolys[j];
    Real horner(bits);
    for (size_t i = a.size(); i-- > 0;) {
      Real c(bits);
      mpfr_set_z(c.raw(), a[i].get_mpz_t(), MPFR_RNDN);
      horner = horner * tv + c;
    }
    return horner / pow_si(omt, j + 1);
  };

  Real value(bits);
  Real g_pow = 1L / g;  // g^{m-1}
  Real last_abs = Real::nan_value(bits);
  long used = 0;
  for (long m = 0; m <= max_m; ++m) {
    if (m >= 3 && m % 2 == 1) {
      g_pow = g_pow * g;
      continue;
    }
    Real li(bits);
    if (m == 0)
      li = detail::dilog_real(tv, bits, ctx.working_digits);
    else if (m == 1)
      li = -log1p(-tv);
    else
      li = li_negative(m - 2);
    mpq_class coef = bernoulli(static_cast<unsigned long>(m));
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    coef /= mpq_class(fact);
    Real c(bits);
    mpfr_set_q(c.raw(), coef.get_mpq_t(), MPFR_RNDN);
    Real term = c * li * g_pow;
    Real ta = abs(term);
    // Asymptotic truncation: once terms start growing, adding more only hurts.
    if (used > 0 && !last_abs.is_nan() && ta >= last_abs && m >= 2) break;
    value = value + term;
    last_abs = ta;
    ++used;
    g_pow = g_pow * g;
  }
  return AsymptoticResult{value, last_abs, used};
}

Real find_f_inflection(double lo, double hi, long digits) {
  PrecisionContext ctx = plan_precision(digits, GammaParam{Real(1.0, bits_for_digits(digits))});
  mpfr_prec_t bits = ctx.bits();
  Real h(1e-4, bits);
  auto d2 = [&](const Real& z) {
    return f_of(z + h, ctx) - 2 * f_of(z, ctx) + f_of(z - h, ctx);
  };
  Real a(lo, bits), b(hi, bits);
  Real da = d2(a), db = d2(b);
  if (da.sign() == db.sign())
    throw domain_error("find_f_inflection: no sign change of f'' on [lo, hi]");
  Real width_target(1e-4, bits);
  while (b - a > width_target) {
    Real mid = (a + b) / 2;
    Real dm = d2(mid);
    if (dm.sign() == da.sign()) {
      a = mid;
      da = dm;
    } else {
      b = mid;
    }
  }
  return (a + b) / 2;
}

GPeak find_g_peak(double lo, double hi, long digits) {
  PrecisionContext ctx = plan_precision(digits, GammaParam{Real(1.0, bits_for_digits(digits))});
  mpfr_prec_t bits = ctx.bits();
  Real a(lo, bits), b(hi, bits);
  Real phi = (sqrt(Real(5L, bits)) - 1L) / 2;  // 0.618...
  Real c = b - phi * (b - a);
  Real d = a + phi * (b - a);
  Real fc = abs(g_of(c, ctx)), fd = abs(g_of(d, ctx));
  Real width_target(1e-6, bits);
  while (b - a > width_target) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = abs(g_of(d, ctx));
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = abs(g_of(c, ctx));
    }
  }
  Real z = (a + b) / 2;
  return GPeak{z, abs(g_of(z, ctx))};
}

}  // namespace qprod::eta
