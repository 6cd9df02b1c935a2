#include "qprod/baselines.hpp"

#include <string>

#include "qprod/errors.hpp"

namespace qprod::baselines {

namespace {

constexpr long kMaxSeriesTerms = 200000000L;

void require_unit_disc(const ComplexValue& x, const char* who) {
  if (!(x.abs() < 1L)) throw domain_error(std::string(who) + ": |x| must be < 1");
}

}  // namespace

ComplexValue direct_product(const ComplexValue& t, const ComplexValue& x, long n_terms,
                            const PrecisionContext& ctx) {
  require_unit_disc(x, "direct_product");
  if (n_terms < 0) throw domain_error("direct_product: negative factor count");
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue tw = t.at_prec(bits), xw = x.at_prec(bits);
  ComplexValue acc(1L, bits);
  ComplexValue xp(1L, bits);
  for (long n = 1; n <= n_terms; ++n) {
    xp = xp * xw;
    acc = acc * (1L - tw * xp);
  }
  return acc;
}

ComplexValue corrected_product(const ComplexValue& t, const ComplexValue& x, long n_terms,
                               const PrecisionContext& ctx) {
  require_unit_disc(x, "corrected_product");
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue tw = t.at_prec(bits), xw = x.at_prec(bits);
  ComplexValue base = direct_product(tw, xw, n_terms, ctx);
  ComplexValue xp = pow_ui(xw, static_cast<unsigned long>(n_terms) + 1);
  return base * (1L - tw * xp / (1L - xw));
}

BaselineValue lambert_log(const ComplexValue& t, const ComplexValue& x,
                          const PrecisionContext& ctx, const Real& tol) {
  require_unit_disc(x, "lambert_log");
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue tw = t.at_prec(bits), xw = x.at_prec(bits);
  Real ax = xw.abs(), atx = (tw * xw).abs();
  if (!(atx < 1L)) throw domain_error("lambert_log: |t x| must be < 1");
  if (tw.is_zero() || xw.is_zero()) return {ComplexValue(1L, bits), 0};

  // sum_{k} (t x)^k / (k (1 - x^k)); tail after K terms is bounded by
  // |tx|^{K+1} / ((K+1)(1-|x|)(1-|tx|)).
  ComplexValue sum(0L, bits);
  ComplexValue p(1L, bits);   // (t x)^k
  ComplexValue xk(1L, bits);  // x^k
  const ComplexValue txw = tw * xw;
  const Real tail_den = (1L - ax) * (1L - atx);
  Real atx_pow = atx;  // |tx|^{k+1} with k the completed count
  long k = 0;
  while (true) {
    ++k;
    p = p * txw;
    xk = xk * xw;
    sum = sum + p / (1L - xk) / Real(k, bits);
    atx_pow = atx_pow * atx;
    if (atx_pow / (Real(k + 1, bits) * tail_den) < tol) break;
    if (k >= kMaxSeriesTerms)
      throw iteration_error("lambert_log: tail bound not reached within term budget");
  }
  return {exp(-sum), k};
}

GatteschiState gatteschi_init(const ComplexValue& t, const ComplexValue& x,
                              const ComplexValue& sigma, const PrecisionContext& ctx) {
  require_unit_disc(x, "gatteschi_init");
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue tw = t.at_prec(bits), xw = x.at_prec(bits), sg = sigma.at_prec(bits);
  if (sg.is_zero()) throw domain_error("gatteschi_init: sigma must be nonzero");
  ComplexValue den = sg - tw * xw;
  if (den.is_zero()) throw domain_error("gatteschi_init: sigma equals t*x, beta_0 undefined");
  return {0, ComplexValue(1L, bits), sg / den, sg};
}

GatteschiState gatteschi_step(const GatteschiState& state, const ComplexValue& t,
                              const ComplexValue& x) {
  (void)t;  // t enters only through the initial state
  const mpfr_prec_t bits = state.alpha.prec();
  ComplexValue xw = x.at_prec(bits);
  ComplexValue one(1L, bits);
  if (state.beta.is_zero())
    throw iteration_error("gatteschi_step: beta vanished at iteration " +
                          std::to_string(state.n));
  ComplexValue mix = xw * state.alpha + (one - xw) * state.beta;
  if (mix.is_zero())
    throw iteration_error("gatteschi_step: x*alpha + (1-x)*beta vanished at iteration " +
                          std::to_string(state.n));
  auto next = gatteschi_step_values(state.alpha, state.beta, state.sigma, xw, one);
  return {state.n + 1, next.first, next.second, state.sigma};
}

ComplexValue gatteschi_accelerated(const GatteschiState& state, const ComplexValue& t,
                                   const ComplexValue& x) {
  const mpfr_prec_t bits = state.alpha.prec();
  ComplexValue tw = t.at_prec(bits), xw = x.at_prec(bits);
  ComplexValue gap = state.sigma - tw * pow_ui(xw, static_cast<unsigned long>(state.n) + 1);
  if (gap.is_zero())
    throw iteration_error("gatteschi_accelerated: sigma equals t*x^{n+1} at iteration " +
                          std::to_string(state.n));
  ComplexValue lambda = 1L + state.sigma / (1L - xw);
  return lambda * state.alpha + (1L - lambda) * state.beta;
}

GatteschiState gatteschi_run(const ComplexValue& t, const ComplexValue& x,
                             const ComplexValue& sigma, long steps,
                             const PrecisionContext& ctx) {
  GatteschiState state = gatteschi_init(t, x, sigma, ctx);
  for (long i = 0; i < steps; ++i) state = gatteschi_step(state, t, x);
  return state;
}

SlaterResult slater_series(const ComplexValue& t, const ComplexValue& x,
                           const PrecisionContext& ctx, const Real& tol) {
  require_unit_disc(x, "slater_series");
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue tw = t.at_prec(bits), xw = x.at_prec(bits);
  Real ax = xw.abs(), atx = (tw * xw).abs();
  if (!(atx < 1L)) throw domain_error("slater_series: |t x| must be < 1, series diverges");

  ComplexValue u(1L, bits);  // u_m = t^m x^m / ((1-x)...(1-x^m))
  ComplexValue s = u;
  ComplexValue xm(1L, bits);  // x^m
  const ComplexValue txw = tw * xw;
  Real min_mod = s.abs();
  Real ax_pow = ax;  // |x|^{m+1}
  long m = 0;
  if (!tw.is_zero() && !xw.is_zero()) {
    while (true) {
      ++m;
      xm = xm * xw;
      u = u * txw / (1L - xm);
      s = s + u;
      Real smod = s.abs();
      if (smod.is_zero())
        throw iteration_error("slater_series: partial sum vanished at term " +
                              std::to_string(m) + "; reciprocal form unstable");
      min_mod = min(min_mod, smod);
      ax_pow = ax_pow * ax;
      // Terms beyond m shrink at least geometrically with ratio
      // q = |tx| / (1 - |x|^{m+1}), so the tail is <= |u_m| q/(1-q).
      Real q = atx / (1L - ax_pow);
      if (q < 1L && u.abs() * q / (1L - q) < tol * smod) break;
      if (m >= kMaxSeriesTerms)
        throw iteration_error("slater_series: tail bound not reached within term budget");
    }
  }
  return {ComplexValue(1L, bits) / s, m + 1, min_mod};
}

}  // namespace qprod::baselines
