#ifndef QPROD_REAL_HPP
#define QPROD_REAL_HPP

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "qprod/errors.hpp"

namespace qprod {

// Value-semantic arbitrary-precision real over mpfr_t.
//
// Every value carries its own precision in bits; binary operations round to
// the larger operand precision (round-to-nearest throughout).  There is no
// hidden global precision state, so values may move freely across threads.
class Real {
 public:
  static constexpr mpfr_prec_t kMinBits = 24;

  explicit Real(mpfr_prec_t bits) {
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_zero(v_, 1);
  }
  Real(long value, mpfr_prec_t bits) {
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(double value, mpfr_prec_t bits) {
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, kMinBits);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real pi(mpfr_prec_t bits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static Real ln2(mpfr_prec_t bits) {
    Real r(bits);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
  }
  static Real ln10(mpfr_prec_t bits) { return log(Real(10L, bits)); }
  static Real nan_value(mpfr_prec_t bits) {
    Real r(bits);
    mpfr_set_nan(r.v_);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_negative() const { return mpfr_sgn(v_) < 0; }
  bool is_positive() const { return mpfr_sgn(v_) > 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Nearest integer >= / <= value, as a long.
  long ceil_long() const {
    Real r(prec());
    mpfr_ceil(r.v_, v_);
    if (!mpfr_fits_slong_p(r.v_, MPFR_RNDN))
      throw domain_error("ceil_long: value does not fit a machine integer");
    return mpfr_get_si(r.v_, MPFR_RNDN);
  }
  long floor_long() const {
    Real r(prec());
    mpfr_floor(r.v_, v_);
    if (!mpfr_fits_slong_p(r.v_, MPFR_RNDN))
      throw domain_error("floor_long: value does not fit a machine integer");
    return mpfr_get_si(r.v_, MPFR_RNDN);
  }

  // Round this value to a (usually lower) target precision.
  Real at_prec(mpfr_prec_t bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

#define QPROD_REAL_BINOP(op, fn, fn_si, si_fn)                        \
  friend Real operator op(const Real& a, const Real& b) {             \
    Real r(std::max(a.prec(), b.prec()));                             \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                  \
    return r;                                                         \
  }                                                                   \
  friend Real operator op(const Real& a, long b) {                    \
    Real r(a.prec());                                                 \
    fn_si(r.v_, a.v_, b, MPFR_RNDN);                                  \
    return r;                                                         \
  }                                                                   \
  friend Real operator op(long a, const Real& b) {                    \
    Real r(b.prec());                                                 \
    si_fn(r.v_, a, b.v_, MPFR_RNDN);                                  \
    return r;                                                         \
  }

  QPROD_REAL_BINOP(+, mpfr_add, mpfr_add_si, qprod_si_add)
  QPROD_REAL_BINOP(-, mpfr_sub, mpfr_sub_si, mpfr_si_sub)
  QPROD_REAL_BINOP(*, mpfr_mul, mpfr_mul_si, qprod_si_mul)
#undef QPROD_REAL_BINOP

  friend Real operator/(const Real& a, const Real& b) {
    if (b.is_zero()) throw domain_error("division by zero");
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, long b) {
    if (b == 0) throw domain_error("division by zero");
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long a, const Real& b) {
    if (b.is_zero()) throw domain_error("division by zero");
    Real r(b.prec());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  friend Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    if (a.is_negative()) throw domain_error("sqrt of negative value");
    Real r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  // n-th root, used for quartic envelope factors.
  friend Real rootn(const Real& a, unsigned long n) {
    Real r(a.prec());
    mpfr_rootn_ui(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend Real log(const Real& a) {
    if (!a.is_positive()) throw domain_error("log of non-positive value");
    Real r(a.prec());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real log1p(const Real& a) {
    if (a <= -1L) throw domain_error("log1p of value <= -1");
    Real r(a.prec());
    mpfr_log1p(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real exp(const Real& a) {
    Real r(a.prec());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real expm1(const Real& a) {
    Real r(a.prec());
    mpfr_expm1(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real pow(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real pow_si(const Real& a, long n) {
    Real r(a.prec());
    mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend Real sin(const Real& a) {
    Real r(a.prec());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real cos(const Real& a) {
    Real r(a.prec());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real hypot(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
  friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

 private:
  static mpfr_prec_t clamp_bits(mpfr_prec_t bits) { return std::max(bits, kMinBits); }
  // mpfr has no si_add/si_mul spellings; both operations commute.
  static int qprod_si_add(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t rnd) {
    return mpfr_add_si(r, b, a, rnd);
  }
  static int qprod_si_mul(mpfr_ptr r, long a, mpfr_srcptr b, mpfr_rnd_t rnd) {
    return mpfr_mul_si(r, b, a, rnd);
  }

  mpfr_t v_;
};

}  // namespace qprod

#endif
