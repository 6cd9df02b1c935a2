#ifndef QPROD_BASELINES_HPP
#define QPROD_BASELINES_HPP

#include <utility>

#include "qprod/complex_value.hpp"
#include "qprod/precision.hpp"
#include "qprod/real.hpp"

namespace qprod::baselines {

// Reference algorithms for R(t,x) = prod_{n>=1}(1 - t x^n).  None of them
// emits a certificate; they exist for cross-validation and benchmarking
// against the certified series evaluator.

struct BaselineValue {
  ComplexValue value;
  long terms = 0;
};

// Partial product prod_{n=1}^{N}(1 - t x^n); linearly convergent, the
// relative error is of order |t| |x|^{N+1} / (1 - |x|).
ComplexValue direct_product(const ComplexValue& t, const ComplexValue& x, long n_terms,
                            const PrecisionContext& ctx);

// direct_product(N) * (1 - t x^{N+1}/(1-x)): the extra factor cancels the
// leading tail term, leaving an error of order x^{2N}.
ComplexValue corrected_product(const ComplexValue& t, const ComplexValue& x, long n_terms,
                               const PrecisionContext& ctx);

// exp(-sum_{k>=1} (t^k/k) x^k/(1-x^k)), summed until the geometric tail
// bound |tx|^{K+1} / ((K+1)(1-|x|)(1-|tx|)) falls below tol.  Valid only
// for |tx| < 1 (else the log-series representation diverges).
BaselineValue lambert_log(const ComplexValue& t, const ComplexValue& x,
                          const PrecisionContext& ctx, const Real& tol);

// Two-sequence product iteration with free parameter sigma:
//   alpha_0 = 1,  beta_0 = sigma/(sigma - t x)
//   alpha' = alpha (sigma alpha + (1-sigma) beta) / beta
//   beta'  = alpha (sigma alpha + (1-sigma) beta) / (x alpha + (1-x) beta)
// Closed forms at every step:
//   alpha_n = prod_{k=1}^{n}(1 - t x^k),   beta_n = sigma/(sigma - t x^{n+1}) alpha_n.
struct GatteschiState {
  long n = 0;
  ComplexValue alpha;
  ComplexValue beta;
  ComplexValue sigma;
};

// One iteration step in any field type T (exact rationals included);
// `one` supplies the multiplicative identity.  Returns (alpha', beta').
template <typename T>
std::pair<T, T> gatteschi_step_values(const T& alpha, const T& beta, const T& sigma,
                                      const T& x, const T& one) {
  T num = sigma * alpha + (one - sigma) * beta;
  T den = x * alpha + (one - x) * beta;
  return {alpha * num / beta, alpha * num / den};
}

// Requires sigma not in {0, t x} (both make beta_0 undefined).
GatteschiState gatteschi_init(const ComplexValue& t, const ComplexValue& x,
                              const ComplexValue& sigma, const PrecisionContext& ctx);

// Advances the state once; reports which denominator vanished on breakdown.
GatteschiState gatteschi_step(const GatteschiState& state, const ComplexValue& t,
                              const ComplexValue& x);

// Accelerated combination lambda alpha_n + (1-lambda) beta_n with
// lambda = 1 + sigma/(1-x); cancels the O(x^{n+1}) error term of alpha_n,
// leaving O(x^{2n}).  Equivalent closed form:
//   [1 - sigma t x^{n+1} / ((1-x)(sigma - t x^{n+1}))] alpha_n,
// which breaks down when sigma = t x^{n+1}.
ComplexValue gatteschi_accelerated(const GatteschiState& state, const ComplexValue& t,
                                   const ComplexValue& x);

// Convenience: run `steps` iterations from the initial state.
GatteschiState gatteschi_run(const ComplexValue& t, const ComplexValue& x,
                             const ComplexValue& sigma, long steps,
                             const PrecisionContext& ctx);

// Reciprocal-series evaluation: R(t,x) = 1 / sum_{m>=0} u_m with
// u_0 = 1 and u_m = u_{m-1} t x / (1 - x^m).  Stops once the geometric
// tail estimate drops below tol relative to the running sum.  Requires
// |tx| < 1.  The running partial sums are the divisions' denominators;
// the smallest modulus seen is reported as the conditioning hazard of
// the reciprocal form.
struct SlaterResult {
  ComplexValue value;
  long terms = 0;
  Real min_denominator_modulus;
};
SlaterResult slater_series(const ComplexValue& t, const ComplexValue& x,
                           const PrecisionContext& ctx, const Real& tol);

}  // namespace qprod::baselines

#endif
