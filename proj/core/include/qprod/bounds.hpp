#ifndef QPROD_BOUNDS_HPP
#define QPROD_BOUNDS_HPP

#include <optional>
#include <string>

#include "qprod/complex_value.hpp"
#include "qprod/precision.hpp"
#include "qprod/real.hpp"

namespace qprod::bounds {

// A certified inequality: `value` bounds the named quantity from above
// provided `hypotheses_met`.  When the hypotheses fail the value is NaN and
// must not be used.
struct BoundReport {
  std::string bound_id;
  bool hypotheses_met = false;
  Real value;
};

// |log R(t,x)| <= -log(1 - |tx|) / (1 - |x|); needs |x| < 1 and |tx| < 1.
BoundReport crude_log_bound(const ComplexValue& t, const ComplexValue& x);

// The log-derivative sums of the x-only product at real x in [0, 1):
//   S  = sum x^k / (k (1 - x^k))           ( = -log R(1,x) )
//   S1 = sum x^{k-1} / (1 - x^k)^2         ( = S'(x) )
//   S2 = sum ((k-1) x^{k-2} + (k+1) x^{2k-2}) / (1 - x^k)^3   ( = S''(x) )
struct LambertSums {
  Real S, S1, S2;
};
LambertSums lambert_sums(const Real& x, const PrecisionContext& ctx);

// A priori truncation-tail bounds for the quadratically convergent series,
// with gamma = -log|x|.
//   abs:  Delta_N = |S_N - R| <= |t|^N e^{pi^2/(6g) - N(N+1)g/2} / (1 - |t| e^{-(N+1)g})
//         (needs |t| < e^{(N+1)g})
//   rel:  Delta_N/|R| <= e^{pi^2/(3g) - N(N+1)g/2} / (1 - e^{-(N+1)g})  for |t| <= 1,
//         with an extra factor 1/(1 - |t| e^{-g}) for 1 < |t| < e^{g}.
BoundReport apriori_abs(const ComplexValue& t, const ComplexValue& x, long n);
BoundReport apriori_rel(const ComplexValue& t, const ComplexValue& x, long n);

// A posteriori bounds from the last computed term a_{N-1} and partial sum S_N:
//   abs: Delta_N <= |a_{N-1}| |t| e^{-Ng} / (1 - (1+|t|) e^{-Ng})   (needs N > log(1+|t|)/g)
//   rel: abs / |S_N|  (tail relative to the partial sum, not the true value)
struct PosterioriBounds {
  BoundReport abs, rel;
};
PosterioriBounds aposteriori(const ComplexValue& t, const ComplexValue& x, long n,
                             const ComplexValue& a_prev, const ComplexValue& s_n);

// Closed-form exponent C(t) of the largest series term, exp[C(|t|)/gamma + O(1)]:
//   C(t) = (1/2) log^2(1+t) + Li2(t/(1+t)),   C(1) = pi^2/12.
Real largest_term_exponent(const Real& t_mod);
// Index of the largest term, floor(log(1+t)/gamma).
long largest_term_peak_index(const Real& t_mod, const GammaParam& gamma);

// Dilogarithm Li2(u) for u in [0, 1]: power series below 1/2, the reflection
// Li2(u) + Li2(1-u) = pi^2/6 - log u log(1-u) above, Li2(1) = pi^2/6.
Real dilog(const Real& u, const PrecisionContext& ctx);

// Two-sided enclosure of log R(t, e^{-gamma}) for real t in [0, 1]:
//   -log R <= Li2(t e^{-g/2}) / g
//   -log R >= Li2(t e^{-g}) / g - (1/2) log(1 - t e^{-g})
struct LogSandwich {
  Real lower, upper;
};
LogSandwich sandwich_logR_real(const Real& t, const GammaParam& gamma,
                               const PrecisionContext& ctx);

// Lower bound for the partial product prod_{k<=n}(1 - e^{-k gamma}):
//   general:        exp[(Li2(e^{-n g}) - pi^2/6)/g] (1 - e^{-n g})^{1/2}
//   for n g <= log 2: exp[(-(log 2)^2/2 - pi^2/12)/g] (1 - e^{-n g})^{1/2}
struct PartialProductBound {
  Real general;
  std::optional<Real> small_exponent;
};
PartialProductBound partial_product_lower(long n, const GammaParam& gamma,
                                          const PrecisionContext& ctx);

}  // namespace qprod::bounds

#endif
