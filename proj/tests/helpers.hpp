#ifndef QPROD_TESTS_HELPERS_HPP
#define QPROD_TESTS_HELPERS_HPP

#include <mpfr.h>

#include <algorithm>
#include <string>

#include "qprod/complex_value.hpp"
#include "qprod/precision.hpp"
#include "qprod/real.hpp"
#include "qprod/rng.hpp"

namespace qtest {

using qprod::ComplexValue;
using qprod::PrecisionContext;
using qprod::Real;

inline PrecisionContext ctx_digits(long requested, long working) {
  return PrecisionContext{requested, working, working - requested};
}

// Decimal literal at a chosen working precision (reference values are stored
// as strings so they survive any compiler float rounding).
inline Real real_at(const char* decimal, long working_digits) {
  Real r(qprod::bits_for_digits(working_digits));
  mpfr_set_str(r.raw(), decimal, 10, MPFR_RNDN);
  return r;
}

inline Real real_of(double v, mpfr_prec_t bits = 128) { return Real(v, bits); }

// |v - ref| <= tol * |ref|, reference given as a decimal literal.
inline bool rel_close(const Real& v, const char* ref, double tol) {
  long digits = std::max<long>(60, static_cast<long>(v.prec() / 3));
  Real r = real_at(ref, digits);
  if (r.is_zero()) return abs(v) <= Real(tol, r.prec());
  return abs(v - r) <= Real(tol, r.prec()) * abs(r);
}

inline bool abs_close(const Real& v, const char* ref, double tol) {
  Real r = real_at(ref, 80);
  return abs(v - r) <= Real(tol, r.prec());
}

// Relative distance |a - b| / |b| as a double (for diagnostics and loose
// comparisons; exact comparisons go through Real arithmetic).
inline double rel_diff(const ComplexValue& a, const ComplexValue& b) {
  Real den = b.abs();
  if (den.is_zero()) return (a - b).abs().to_double();
  return ((a - b).abs() / den).to_double();
}

inline double rel_diff(const Real& a, const Real& b) {
  Real den = abs(b);
  if (den.is_zero()) return abs(a).to_double();
  return (abs(a - b) / den).to_double();
}

inline ComplexValue polar(const Real& modulus, const Real& angle) {
  return ComplexValue(modulus * cos(angle), modulus * sin(angle));
}

// Deterministic complex sample with modulus in [lo, hi] and uniform phase.
inline ComplexValue sample_complex(qprod::SplitMix64& rng, double lo, double hi,
                                   mpfr_prec_t bits) {
  Real m(lo + (hi - lo) * rng.uniform01(), bits);
  Real phase = Real(2L, bits) * Real::pi(bits) * Real(rng.uniform01(), bits);
  return polar(m, phase);
}

}  // namespace qtest

#endif  // QPROD_TESTS_HELPERS_HPP
