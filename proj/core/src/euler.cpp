#include "qprod/euler.hpp"

#include <algorithm>

#include "qprod/bounds.hpp"
#include "qprod/errors.hpp"

namespace qprod::euler {

namespace {

constexpr long kMaxPlannedTerms = 100'000'000;

EvalCertificate make_exact(ComplexValue value, long terms, long steps, mpfr_prec_t bits) {
  EvalCertificate cert{std::move(value), Real(bits), Real(bits),
                       BoundAuthority::exact,  terms,      Real(bits)};
  cert.t_reduction_steps = steps;
  if (terms > 0) cert.max_abs_term = Real(1L, bits);
  return cert;
}

}  // namespace

TruncationPlan plan_truncation(const ComplexValue& t, const ComplexValue& x, const Real& k) {
  mpfr_prec_t bits = std::max({t.prec(), x.prec(), k.prec()});
  Real ax = x.abs();
  if (!(ax < 1L) || ax.is_zero())
    throw domain_error("plan_truncation: |x| must lie in (0, 1)");
  Real at = t.abs();
  // The a priori count assumes the reduced regime; allow a hair of rounding slack.
  if (at * (1L - pow_si(Real(2L, bits), -(static_cast<long>(bits) - 4))) > 1L)
    throw domain_error("plan_truncation: requires |t| <= 1 (apply reduce_t first)");
  if (k.is_negative()) throw domain_error("plan_truncation: K must be >= 0");

  Real g = -log(ax);
  Real pi = Real::pi(bits);
  Real n_real = sqrt(2 * pi * pi / (3 * g * g) + 2 * k / g);
  if (n_real > Real(kMaxPlannedTerms, bits))
    throw domain_error("plan_truncation: planned term count exceeds supported size");
  return TruncationPlan{std::max(2L, n_real.ceil_long()),
                        (log1p(2 * at) / g).ceil_long(), k};
}

Reduction reduce_t(const ComplexValue& t, const ComplexValue& x) {
  mpfr_prec_t bits = std::max(t.prec(), x.prec());
  Real ax = x.abs();
  if (!(ax < 1L)) throw domain_error("reduce_t: |x| must be < 1");
  ComplexValue prefix(1L, bits);
  ComplexValue tr = t.at_prec(bits);
  long steps = 0;
  if (x.is_zero() || t.is_zero()) return Reduction{prefix, tr, 0};
  Real at = tr.abs();
  if (at > 1L && log(at) / -log(ax) > Real(kMaxPlannedTerms, bits))
    throw domain_error("reduce_t: reduction step count exceeds supported size");
  while (tr.abs() > 1L) {
    tr = tr * x;               // t x^{k} after k passes
    prefix = prefix * (1L - tr);
    ++steps;
    if (prefix.is_zero()) return Reduction{ComplexValue(bits), tr, steps};
    if (steps > kMaxPlannedTerms)
      throw domain_error("reduce_t: reduction failed to terminate");
  }
  return Reduction{prefix, tr, steps};
}

TermRatio term_ratio(const ComplexValue& t, const ComplexValue& x, long n) {
  if (n < 1) throw domain_error("term_ratio: n must be >= 1");
  mpfr_prec_t bits = std::max(t.prec(), x.prec());
  Real ax = x.abs();
  if (!(ax < 1L)) throw domain_error("term_ratio: |x| must be < 1");
  ComplexValue xn = pow_ui(x.at_prec(bits), static_cast<unsigned long>(n));
  ComplexValue denom = 1L - xn;
  if (denom.is_zero()) throw domain_error("term_ratio: 1 - x^n vanishes");
  Real g = ax.is_zero() ? Real(bits) : -log(ax);
  Real q = ax.is_zero() ? Real(bits) : exp(-Real(n, bits) * g);
  Real bound = ax.is_zero() ? Real(bits) : t.abs() * q / (1L - q);
  return TermRatio{-(t.at_prec(bits) * xn) / denom, bound};
}

EvalCertificate evaluate(const ComplexValue& t, const ComplexValue& x,
                         const PrecisionContext& ctx, const Real& k,
                         const EvalOptions& opts) {
  mpfr_prec_t bits = ctx.bits();
  ComplexValue tv = t.at_prec(bits);
  ComplexValue xv = x.at_prec(bits);
  if (!tv.is_finite() || !xv.is_finite())
    throw domain_error("evaluate: non-finite input");
  if (xv.is_zero() || tv.is_zero())
    return make_exact(ComplexValue(1L, bits), 1, 0, bits);
  Real ax = xv.abs();
  if (!(ax < 1L)) throw domain_error("evaluate: |x| must be < 1");
  Real kk = k.at_prec(bits);
  if (kk.is_negative()) throw domain_error("evaluate: K must be >= 0");

  Reduction red = reduce_t(tv, xv);
  if (red.prefix.is_zero())
    return make_exact(ComplexValue(bits), 0, red.steps, bits);

  TruncationPlan plan = plan_truncation(red.t_reduced, xv, kk);
  Real e_k = exp(-kk);
  // Stopping threshold on the partial-sum-relative tail delta': requiring
  // delta' <= e^{-K}/(1+e^{-K}) makes the true-value-relative bound
  // delta'/(1-delta') come out <= e^{-K}.  The extra (1 - 2^-10) margin
  // leaves room for the arithmetic-rounding term added to the final bound.
  Real stop_thr = e_k * (1L - pow_si(Real(2L, bits), -10)) / (1L + e_k);

  ComplexValue a(1L, bits);   // a_0
  ComplexValue s(1L, bits);   // S_1
  ComplexValue xn = xv;       // x^n for the term being built
  Real max_term(1L, bits);
  long n_terms = 1;
  bool certified_early = false;

  while (n_terms < plan.n_apriori) {
    a = a * (-(red.t_reduced * xn)) / (1L - xn);
    s = s + a;
    ++n_terms;
    Real aa = a.abs();
    if (aa > max_term) max_term = aa;
    xn = xn * xv;
    if (!opts.force_apriori_terms && n_terms >= plan.n_posteriori_min) {
      bounds::PosterioriBounds post =
          bounds::aposteriori(red.t_reduced, xv, n_terms, a, s);
      if (post.rel.hypotheses_met && post.rel.value < stop_thr) {
        certified_early = true;
        break;
      }
    }
  }

  // Final bounds: min-combine the a priori statement with the a posteriori
  // one (converted from partial-sum-relative to true-value-relative).
  bounds::PosterioriBounds post = bounds::aposteriori(red.t_reduced, xv, n_terms, a, s);
  bounds::BoundReport pri_rel = bounds::apriori_rel(red.t_reduced, xv, n_terms);
  bounds::BoundReport pri_abs = bounds::apriori_abs(red.t_reduced, xv, n_terms);

  bool have_rel = false;
  Real rel_bound(bits);
  if (post.rel.hypotheses_met && post.rel.value < 1L) {
    rel_bound = post.rel.value / (1L - post.rel.value);
    have_rel = true;
  }
  if (pri_rel.hypotheses_met && (!have_rel || pri_rel.value < rel_bound)) {
    rel_bound = pri_rel.value;
    have_rel = true;
  }

  bool have_abs = false;
  Real tail_abs(bits);
  if (post.abs.hypotheses_met) {
    tail_abs = post.abs.value;
    have_abs = true;
  }
  if (pri_abs.hypotheses_met && (!have_abs || pri_abs.value < tail_abs)) {
    tail_abs = pri_abs.value;
    have_abs = true;
  }
  if (!have_rel && !have_abs)
    throw internal_error("evaluate: no valid tail bound at final term count");
  if (!certified_early && have_rel && !(rel_bound <= e_k * (1L + pow_si(Real(2L, bits), -20))))
    throw internal_error("evaluate: a priori plan failed to certify e^{-K}");

  // Arithmetic-rounding envelope.  Each term costs a bounded number of
  // roundings at unit roundoff u = 2^{1-p}; the 1 - x^m subtraction loses at
  // most a factor 2/(1-|x|), and cancellation against the largest term scales
  // the absolute error of the partial sum.  The envelope is deliberately fat
  // (n^2 instead of a sharp per-term sum); it is still orders of magnitude
  // below the 2^-10 stop margin whenever the precision was planned for K.
  Real u = pow_si(Real(2L, bits), 1L - static_cast<long>(bits));
  Real cq = Real(24L, bits) + Real(2L, bits) / (1L - ax);
  Real nn(n_terms, bits);
  Real round_abs_s = u * (nn * nn * (cq + 1L) * max_term);
  Real prefix_rel = Real(red.steps + 1, bits) * cq * u;
  Real inflate = 1L + pow_si(Real(2L, bits), -6);

  ComplexValue value = red.prefix * s;
  Real abs_bound =
      (red.prefix.abs() * (tail_abs + round_abs_s) + value.abs() * prefix_rel) * inflate;
  if (have_rel && !s.is_zero())
    rel_bound = (rel_bound + round_abs_s / s.abs() + prefix_rel) * inflate;

  EvalCertificate cert{value, rel_bound, abs_bound, BoundAuthority::relative,
                       n_terms, max_term};
  cert.t_reduction_steps = red.steps;
  if (!have_rel || s.is_zero()) cert.authoritative = BoundAuthority::absolute;
  return cert;
}

EvalCertificate evaluate_digits(const ComplexValue& t, const ComplexValue& x,
                                long digits, const EvalOptions& opts) {
  if (x.is_zero() || t.is_zero()) {
    mpfr_prec_t bits = bits_for_digits(digits + 10);
    return evaluate(t.at_prec(bits), x.at_prec(bits),
                    PrecisionContext{digits, digits + 10, 10}, Real(bits), opts);
  }
  GammaParam g = gamma_of(x);
  PrecisionContext ctx = plan_precision(digits, g);
  Real k = (digits + 2) * Real::ln10(ctx.bits());
  return evaluate(t, x, ctx, k, opts);
}

}  // namespace qprod::euler
