#ifndef QPROD_ETA_HPP
#define QPROD_ETA_HPP

#include <gmpxx.h>

#include "qprod/precision.hpp"
#include "qprod/real.hpp"

namespace qprod::eta {

// Closed-form envelopes for the product at t = +/-1, real x in (0,1):
//   R0_plus(x)  = e^{pi^2/(6 log x)} (1 + 4 pi^2 / log^2 x)^{1/4}
//   R0_minus(x) = R0_plus(x^2)/R0_plus(x)
//               = e^{-pi^2/(12 log x)} ((1 + pi^2/log^2 x)/(1 + 4 pi^2/log^2 x))^{1/4}
// R0_plus(x) < R(1,x) < e^{f(1)} R0_plus(x) with e^{f(1)} ~ 1.0905039.
Real r0_plus(const Real& x, const PrecisionContext& ctx);
Real r0_minus(const Real& x, const PrecisionContext& ctx);

// f(z) = log R(1, e^{-2 pi z}) + pi/(12 z) - (1/4) log(1 + 1/z^2); the modular
// inversion law makes f(z) = f(1/z), so evaluation reduces z to max(z, 1/z)
// where the series converges fastest.  f(1) = pi/6 - (1/4) log 2 + log eta(i).
Real f_of(const Real& z, const PrecisionContext& ctx);

// g(z) = f(sqrt(2) z) - f(z / sqrt(2)) = log R(-1, e^{-sqrt(2) pi z})
//        - pi/(12 sqrt(2) z) + (1/4) log((z^2 + 2)/(z^2 + 1/2));
// antisymmetric under z -> 1/z, zero at z = 1, |g| maxed ~0.0251707 near
// log z ~ +/-1.180158.
Real g_of(const Real& z, const PrecisionContext& ctx);

// Dedekind eta on the imaginary axis: eta(iy) = e^{-pi y/12} R(1, e^{-2 pi y}),
// computed through the inversion eta(iy) = eta(i/y)/sqrt(y) when y < 1.
Real eta_imag(const Real& y, const PrecisionContext& ctx);

// Sharp small-gamma asymptotics with their remainder scales:
//   log R( 1, e^{-g}) = -pi^2/(6g) - log(g)/2 + log(2 pi)/2 + g/24 + O(e^{-4 pi^2/g})
//   log R(-1, e^{-g}) =  pi^2/(12g) - log(2)/2 + g/24          + O(e^{-pi^2/g})
// remainder_scale is an order of magnitude, not a certified bound.
struct SharpAsymptotic {
  Real value;
  Real remainder_scale;
};
SharpAsymptotic sharp_log_R1(const GammaParam& gamma, const PrecisionContext& ctx);
SharpAsymptotic sharp_log_Rminus1(const GammaParam& gamma, const PrecisionContext& ctx);

// Exact Bernoulli number B_m (B_1 = -1/2).  Cached; safe for concurrent use.
mpq_class bernoulli(unsigned long m);

// Divergent-but-asymptotic diagnostic expansion
//   -log R(t, e^{-g}) ~ sum_{m>=0} (B_m/m!) Li_{2-m}(t) g^{m-1}
// for real |t| <= 1 - eps (eps = 1e-3).  Truncates at max_m or at the
// smallest-term index, whichever comes first; last_term_abs reports the final
// included magnitude (the classical error heuristic for asymptotic series).
struct AsymptoticResult {
  Real value;
  Real last_term_abs;
  long terms_used = 0;
};
AsymptoticResult asymptotic_log_R(const Real& t, const GammaParam& gamma, long max_m,
                                  const PrecisionContext& ctx);

// Bisection for the inflection point of f (sign change of the second central
// difference, step h = 1e-4) inside [lo, hi]; ~1.974174 for [1.9, 2.1].
Real find_f_inflection(double lo, double hi, long digits);

// Golden-section maximization of |g| on [lo, hi] (unimodal on [2, 5]).
struct GPeak {
  Real z;
  Real g_abs;
};
GPeak find_g_peak(double lo, double hi, long digits);

}  // namespace qprod::eta

#endif
