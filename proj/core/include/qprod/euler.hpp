#ifndef QPROD_EULER_HPP
#define QPROD_EULER_HPP

#include <string>

#include "qprod/complex_value.hpp"
#include "qprod/precision.hpp"
#include "qprod/real.hpp"

namespace qprod::euler {

// Truncation plan for the quadratically convergent series
//   R(t,x) = sum_{n>=0} (-t)^n x^{n(n+1)/2} / ((1-x)...(1-x^n)),
// assuming |t| <= 1 (reduce first), gamma = -log|x|:
//   n_apriori        guarantees relative tail <= e^{-K} unconditionally,
//   n_posteriori_min is the first index where the running-term bound applies.
struct TruncationPlan {
  long n_apriori = 0;
  long n_posteriori_min = 0;
  Real target_k;
};
TruncationPlan plan_truncation(const ComplexValue& t, const ComplexValue& x, const Real& k);

// Argument reduction via R(t,x) = (1 - t x) R(t x, x): the smallest k with
// |t x^k| <= 1, the exact prefix prod_{j<=k}(1 - t x^j), and the reduced t.
// A vanishing prefix factor (t = x^{-j}) makes R exactly zero.
struct Reduction {
  ComplexValue prefix;
  ComplexValue t_reduced;
  long steps = 0;
};
Reduction reduce_t(const ComplexValue& t, const ComplexValue& x);

// Single term ratio a_n / a_{n-1} = -t x^n / (1 - x^n) and the uniform
// modulus bound |t| e^{-n gamma} / (1 - e^{-n gamma}).
struct TermRatio {
  ComplexValue ratio;
  Real modulus_bound;
};
TermRatio term_ratio(const ComplexValue& t, const ComplexValue& x, long n);

// Which error statement in a certificate is the operative one.
enum class BoundAuthority {
  relative,  // rel_error_bound governs: |value - R| <= rel_error_bound * |R|
  absolute,  // abs_error_bound governs (value near zero; relative undefined)
  exact,     // value is exactly R (degenerate input or exact zero)
};

struct EvalCertificate {
  ComplexValue value;
  Real rel_error_bound;
  Real abs_error_bound;
  BoundAuthority authoritative = BoundAuthority::relative;
  long terms_used = 0;
  Real max_abs_term;
  long t_reduction_steps = 0;
  std::string method = "euler";
};

struct EvalOptions {
  // Disable the a posteriori early stop and sum exactly n_apriori terms.
  bool force_apriori_terms = false;
};

// Certified evaluation of R(t,x) = prod_{n>=1}(1 - t x^n) for |x| < 1.
// The certificate's relative bound covers series truncation (<= e^{-K});
// working-precision rounding is covered by the precision plan's guard digits.
EvalCertificate evaluate(const ComplexValue& t, const ComplexValue& x,
                         const PrecisionContext& ctx, const Real& k,
                         const EvalOptions& opts = {});

// Convenience wrapper: plans precision from gamma(x) and K = (digits+2) ln 10.
EvalCertificate evaluate_digits(const ComplexValue& t, const ComplexValue& x,
                                long digits, const EvalOptions& opts = {});

}  // namespace qprod::euler

#endif
