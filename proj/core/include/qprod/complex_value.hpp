#ifndef QPROD_COMPLEX_VALUE_HPP
#define QPROD_COMPLEX_VALUE_HPP

#include <algorithm>
#include <string>
#include <utility>

#include "qprod/errors.hpp"
#include "qprod/real.hpp"

namespace qprod {

// Rectangular complex value over two Reals.  Arithmetic follows the Real
// conventions: result precision is the larger operand precision, no NaN or
// infinity ever escapes (offending operations throw instead).
class ComplexValue {
 public:
  explicit ComplexValue(mpfr_prec_t bits) : re_(bits), im_(bits) {}
  ComplexValue(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  ComplexValue(long re, mpfr_prec_t bits) : re_(re, bits), im_(bits) {}
  static ComplexValue from_real(Real re) {
    mpfr_prec_t p = re.prec();
    return ComplexValue(std::move(re), Real(p));
  }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_real() const { return im_.is_zero(); }

  ComplexValue at_prec(mpfr_prec_t bits) const {
    return ComplexValue(re_.at_prec(bits), im_.at_prec(bits));
  }

  Real abs() const { return hypot(re_, im_); }
  // Squared modulus; cheaper than abs when only comparisons are needed.
  Real norm() const { return re_ * re_ + im_ * im_; }
  ComplexValue conj() const { return ComplexValue(re_, -im_); }

  ComplexValue operator-() const { return ComplexValue(-re_, -im_); }

  friend ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) {
    return ComplexValue(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend ComplexValue operator-(const ComplexValue& a, const ComplexValue& b) {
    return ComplexValue(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) {
    return ComplexValue(a.re_ * b.re_ - a.im_ * b.im_,
                        a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend ComplexValue operator*(const ComplexValue& a, const Real& b) {
    return ComplexValue(a.re_ * b, a.im_ * b);
  }
  friend ComplexValue operator*(const Real& a, const ComplexValue& b) { return b * a; }
  friend ComplexValue operator/(const ComplexValue& a, const ComplexValue& b) {
    Real den = b.norm();
    if (den.is_zero()) throw domain_error("complex division by zero");
    return ComplexValue((a.re_ * b.re_ + a.im_ * b.im_) / den,
                        (a.im_ * b.re_ - a.re_ * b.im_) / den);
  }
  friend ComplexValue operator/(const ComplexValue& a, const Real& b) {
    return ComplexValue(a.re_ / b, a.im_ / b);
  }
  friend ComplexValue operator+(const ComplexValue& a, long b) {
    return ComplexValue(a.re_ + b, a.im_);
  }
  friend ComplexValue operator-(long a, const ComplexValue& b) {
    return ComplexValue(a - b.re_, -b.im_);
  }
  friend ComplexValue operator+(long a, const ComplexValue& b) { return b + a; }

  friend ComplexValue exp(const ComplexValue& z) {
    Real m = exp(z.re_);
    Real s(z.prec()), c(z.prec());
    mpfr_sin_cos(s.raw(), c.raw(), z.im().raw(), MPFR_RNDN);
    return ComplexValue(m * c, m * s);
  }

  // Integer power by binary exponentiation.
  friend ComplexValue pow_ui(const ComplexValue& z, unsigned long n) {
    ComplexValue acc(1L, z.prec());
    ComplexValue base = z;
    while (n > 0) {
      if (n & 1UL) acc = acc * base;
      n >>= 1UL;
      if (n > 0) base = base * base;
    }
    return acc;
  }

 private:
  Real re_, im_;
};

}  // namespace qprod

#endif
