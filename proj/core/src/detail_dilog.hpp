#ifndef QPROD_DETAIL_DILOG_HPP
#define QPROD_DETAIL_DILOG_HPP

#include "qprod/errors.hpp"
#include "qprod/real.hpp"

namespace qprod::detail {

// Li2 on [-1, 1]: power series for |u| <= 1/2 (one bit per term or better),
// the Euler reflection Li2(u) + Li2(1-u) = pi^2/6 - log u log(1-u) for
// u in (1/2, 1), the Landen map u -> u/(u-1) for u in [-1, -1/2), and the
// exact value pi^2/6 at u = 1.  Recursion depth is at most one.
inline Real dilog_real(const Real& u, mpfr_prec_t bits, long working_digits) {
  if (u == 1L) {
    Real pi = Real::pi(bits);
    return pi * pi / 6;
  }
  if (abs(u) > 1L) throw domain_error("dilog_real: |u| must be <= 1");
  Real au = abs(u);
  if (au <= Real(1L, bits) / 2) {
    Real sum(bits), up = u;
    long k = 1;
    Real thr = pow_si(Real(10L, bits), -(working_digits + 5));
    while (true) {
      Real term = up / (k * k);
      sum = sum + term;
      if (abs(term) < thr) break;
      up = up * u;
      ++k;
      if (k > 64 * working_digits + 256)
        throw internal_error("dilog_real: series failed to converge");
    }
    return sum;
  }
  if (u > 0L) {
    Real pi = Real::pi(bits);
    Real omu = 1L - u;
    return pi * pi / 6 - log(u) * log(omu) - dilog_real(omu, bits, working_digits);
  }
  Real l = log(1L - u);
  return -dilog_real(u / (u - 1L), bits, working_digits) - l * l / 2;
}

}  // namespace qprod::detail

#endif
