#ifndef QPROD_PRECISION_HPP
#define QPROD_PRECISION_HPP

#include <string>

#include "qprod/complex_value.hpp"
#include "qprod/real.hpp"

namespace qprod {

// Decay rate gamma = -log|x| of the base point; positive iff |x| < 1.
struct GammaParam {
  Real value;
};

// gamma for a base point inside the open unit disc.  x == 0 raises
// degenerate_input (the product is identically 1 and callers short-circuit);
// |x| >= 1 raises domain_error.
GammaParam gamma_of(const ComplexValue& x);

// Decimal-digit precision plan.  working >= requested + guard always holds;
// the middle term compensates the largest intermediate series term, which
// grows like exp(pi^2/(12 gamma)) as gamma -> 0 (about 1.07/gamma decimal
// digits), so small gamma demands a wider mantissa than the requested output.
struct PrecisionContext {
  long requested_digits = 0;
  long working_digits = 0;
  long guard_digits = 0;

  mpfr_prec_t bits() const;
};

// Environment-configurable ceiling on working precision (decimal digits).
// QPROD_MAX_WORKING_DIGITS, default 10000.  Exceeding it is an error, never a
// silent clamp: a clamped mantissa would falsify certified error bounds.
long max_working_digits();

PrecisionContext plan_precision(long requested_digits, const GammaParam& gamma);

// Parses "a", "bi", "a+bi", "a-bi" (decimal literals, optional exponent) and
// the polar form "m@theta" (theta in radians).  Throws parse_error naming the
// offending token.  The result carries the context's working precision.
ComplexValue parse_complex(const std::string& text, const PrecisionContext& ctx);

// Decimal string with up to `digits` significant digits, trailing zeros
// trimmed (printf %g conventions); "0" never signed.
std::string format_real(const Real& v, long digits);

// Bits needed to carry `digits` decimal digits, with a small constant margin.
mpfr_prec_t bits_for_digits(long digits);

}  // namespace qprod

#endif
