#include "qprod/precision.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <regex>

#include "qprod/errors.hpp"

namespace qprod {

namespace {

constexpr double kLog2Of10 = 3.321928094887362;  // log2(10)

// Decimal digits of extra mantissa needed to absorb the largest series term,
// ~ (pi^2/4) / (gamma ln 10) ~ 1.07/gamma.  Vanishes for large gamma.
long term_growth_digits(double gamma) {
  double d = 1.07 / gamma;
  if (d < 1e-6) return 0;
  return static_cast<long>(std::ceil(d));
}

}  // namespace

mpfr_prec_t bits_for_digits(long digits) {
  if (digits < 1) digits = 1;
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * kLog2Of10)) + 8;
}

mpfr_prec_t PrecisionContext::bits() const { return bits_for_digits(working_digits); }

long max_working_digits() {
  static const long cap = [] {
    const char* env = std::getenv("QPROD_MAX_WORKING_DIGITS");
    if (env == nullptr || *env == '\0') return 10000L;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || v < 1) return 10000L;
    return v;
  }();
  return cap;
}

GammaParam gamma_of(const ComplexValue& x) {
  if (x.is_zero()) throw degenerate_input("gamma_of: x == 0 (product degenerates to 1)");
  Real ax = x.abs();
  if (ax >= 1L) throw domain_error("gamma_of: |x| >= 1 is outside the open unit disc");
  return GammaParam{-log(ax)};
}

PrecisionContext plan_precision(long requested_digits, const GammaParam& gamma) {
  if (requested_digits < 1) throw domain_error("plan_precision: requested_digits must be >= 1");
  if (!gamma.value.is_positive())
    throw domain_error("plan_precision: gamma must be positive");

  double g = gamma.value.to_double();
  long extra = term_growth_digits(g);

  // Estimated term count for a target tail of K ~ (requested+2) ln 10,
  // using the quadratic-convergence count sqrt(2 pi^2/(3 g^2) + 2K/g).
  double k_est = (static_cast<double>(requested_digits) + 2.0) * std::log(10.0);
  double n_est = std::sqrt(2.0 * M_PI * M_PI / (3.0 * g * g) + 2.0 * k_est / g);
  long guard = 10;
  if (n_est > 1.0) guard += static_cast<long>(std::ceil(std::log10(n_est)));

  PrecisionContext ctx;
  ctx.requested_digits = requested_digits;
  ctx.guard_digits = guard;
  ctx.working_digits = requested_digits + extra + guard;
  if (ctx.working_digits > max_working_digits())
    throw domain_error("plan_precision: working precision " +
                       std::to_string(ctx.working_digits) +
                       " digits exceeds QPROD_MAX_WORKING_DIGITS=" +
                       std::to_string(max_working_digits()));
  return ctx;
}

namespace {

const std::regex& real_literal_re() {
  static const std::regex re(R"(^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$)");
  return re;
}

Real parse_real_token(const std::string& tok, const std::string& whole, mpfr_prec_t bits) {
  if (!std::regex_match(tok, real_literal_re()))
    throw parse_error("unrecognized numeric token '" + tok + "' in '" + whole + "'");
  Real r(bits);
  mpfr_set_str(r.raw(), tok.c_str(), 10, MPFR_RNDN);
  return r;
}

// Splits "a+bi"-style text at the sign that separates real and imaginary
// parts: the last '+'/'-' that is not the leading sign and not an exponent
// sign.  Returns npos when there is no such split.
size_t find_split_sign(const std::string& s) {
  for (size_t i = s.size(); i-- > 1;) {
    char c = s[i];
    if ((c == '+' || c == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') return i;
  }
  return std::string::npos;
}

}  // namespace

ComplexValue parse_complex(const std::string& text, const PrecisionContext& ctx) {
  mpfr_prec_t bits = ctx.bits();
  std::string s = text;
  // Trim surrounding whitespace only; embedded spaces are malformed.
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw parse_error("empty complex literal");
  s = s.substr(b, e - b + 1);

  if (size_t at = s.find('@'); at != std::string::npos) {
    std::string m_tok = s.substr(0, at);
    std::string th_tok = s.substr(at + 1);
    Real m = parse_real_token(m_tok, s, bits);
    Real th = parse_real_token(th_tok, s, bits);
    return ComplexValue(m * cos(th), m * sin(th));
  }

  if (!s.empty() && (s.back() == 'i' || s.back() == 'I')) {
    std::string body = s.substr(0, s.size() - 1);
    size_t split = find_split_sign(body);
    if (split == std::string::npos) {
      // Pure imaginary: "bi", "i", "+i", "-i".
      Real im(bits);
      if (body.empty() || body == "+")
        im = Real(1L, bits);
      else if (body == "-")
        im = Real(-1L, bits);
      else
        im = parse_real_token(body, s, bits);
      return ComplexValue(Real(bits), std::move(im));
    }
    std::string re_tok = body.substr(0, split);
    std::string im_tok = body.substr(split);
    Real re = parse_real_token(re_tok, s, bits);
    Real im(bits);
    if (im_tok == "+")
      im = Real(1L, bits);
    else if (im_tok == "-")
      im = Real(-1L, bits);
    else
      im = parse_real_token(im_tok, s, bits);
    return ComplexValue(std::move(re), std::move(im));
  }

  return ComplexValue::from_real(parse_real_token(s, s, bits));
}

std::string format_real(const Real& v, long digits) {
  if (digits < 1) digits = 1;
  if (v.is_zero()) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", static_cast<int>(digits), v.raw());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace qprod
