#include "qprod/identities.hpp"

#include <utility>

#include "qprod/errors.hpp"
#include "qprod/euler.hpp"
#include "qprod/rng.hpp"

namespace qprod::identities {

namespace {

constexpr long kMaxSumTerms = 100000000L;

ComplexValue eval_R(const ComplexValue& t, const ComplexValue& x, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits();
  Real k = Real(ctx.requested_digits + 2, bits) * Real::ln10(bits);
  return euler::evaluate(t, x, ctx, k).value;
}

ComplexValue cpow(const ComplexValue& base, long e) {
  return pow_ui(base, static_cast<unsigned long>(e));
}

// Common comparison tail: tolerance 10^{-(requested-5)} plus any caller
// slack (e.g. a truncated-product tail), both absolute and relative forms.
IdentityReport finish(std::string id, const ComplexValue& lhs, const ComplexValue& rhs,
                      const PrecisionContext& ctx, const Real& extra_tol) {
  const mpfr_prec_t bits = lhs.prec();
  Real tol = pow_si(Real(10L, bits), -(ctx.requested_digits - 5)) + extra_tol;
  Real ad = (lhs - rhs).abs();
  Real scale = max(lhs.abs(), rhs.abs());
  Real rd = scale.is_zero() ? Real(0L, bits) : ad / scale;
  bool ok = ad <= tol || rd <= tol;
  return {std::move(id), lhs, rhs, ad, rd, tol, ok};
}

IdentityReport finish(std::string id, const ComplexValue& lhs, const ComplexValue& rhs,
                      const PrecisionContext& ctx) {
  return finish(std::move(id), lhs, rhs, ctx, Real(0L, lhs.prec()));
}

Real term_threshold(const PrecisionContext& ctx, mpfr_prec_t bits) {
  return pow_si(Real(10L, bits), -(ctx.working_digits + 3));
}

}  // namespace

IdentityReport check_pentagonal(const ComplexValue& x, const PrecisionContext& ctx,
                                const CheckOptions& opts) {
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue xw = x.at_prec(bits);
  ComplexValue lhs = eval_R(ComplexValue(1L, bits), xw, ctx);

  // sum over integer m of (-1)^m x^{m(3m+1)/2}; the exponent pair at +-m is
  // (m(3m+1)/2, m(3m-1)/2), advanced by the integer increments (3m-1, 3m-2).
  ComplexValue sum(1L, bits);
  Real ax = xw.abs();
  Real thresh = term_threshold(ctx, bits);
  long ep = 0, em = 0;
  long sign = 1;
  for (long m = 1; m <= kMaxSumTerms; ++m) {
    ep += 3 * m - 1;
    em += 3 * m - 2;
    sign = -sign;
    ComplexValue pair = cpow(xw, ep) + cpow(xw, em);
    if (opts.flip_sign && m == 1) pair = cpow(xw, em) - cpow(xw, ep);
    sum = (sign > 0) ? sum + pair : sum - pair;
    if (pow_si(ax, em) < thresh) break;
  }
  return finish("pentagonal", lhs, sum, ctx);
}

std::vector<IdentityReport> check_theta_identities(const ComplexValue& x,
                                                   const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue xw = x.at_prec(bits);
  ComplexValue one(1L, bits);
  ComplexValue r1 = eval_R(one, xw, ctx);
  ComplexValue r2 = eval_R(one, xw * xw, ctx);
  ComplexValue r4 = eval_R(one, cpow(xw, 4), ctx);

  Real ax = xw.abs();
  Real thresh = term_threshold(ctx, bits);

  // sum_{m>=0} (-1)^m (2m+1) x^{m(m+1)/2} and its sign-free companion.
  ComplexValue cube_sum(1L, bits), tri_sum(1L, bits);
  long e = 0;
  for (long m = 1; m <= kMaxSumTerms; ++m) {
    e += m;
    ComplexValue p = cpow(xw, e);
    tri_sum = tri_sum + p;
    ComplexValue weighted = Real(2 * m + 1, bits) * p;
    cube_sum = (m % 2 == 0) ? cube_sum + weighted : cube_sum - weighted;
    if (Real(2 * m + 3, bits) * pow_si(ax, e) < thresh) break;
  }

  // 1 + 2 sum_{m>=1} (+-1)^m x^{m^2}; square exponents advance by 2m-1.
  ComplexValue sq_sum(1L, bits), alt_sq_sum(1L, bits);
  e = 0;
  for (long m = 1; m <= kMaxSumTerms; ++m) {
    e += 2 * m - 1;
    ComplexValue p = Real(2L, bits) * cpow(xw, e);
    sq_sum = sq_sum + p;
    alt_sq_sum = (m % 2 == 0) ? alt_sq_sum + p : alt_sq_sum - p;
    if (pow_si(ax, e) < thresh) break;
  }

  std::vector<IdentityReport> out;
  out.push_back(finish("theta_cube", r1 * r1 * r1, cube_sum, ctx));
  out.push_back(finish("theta_triangular", r2 * r2 / r1, tri_sum, ctx));
  out.push_back(finish("theta_squares", cpow(r2, 5) / (r1 * r1 * r4 * r4), sq_sum, ctx));
  out.push_back(finish("theta_alternating_squares", r1 * r1 / r2, alt_sq_sum, ctx));
  return out;
}

std::pair<IdentityReport, IdentityReport> check_rogers_ramanujan(const ComplexValue& x,
                                                                 const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue xw = x.at_prec(bits);
  ComplexValue one(1L, bits);
  if (xw.is_zero()) {
    IdentityReport triv1 = finish("rogers_ramanujan_first", one, one, ctx);
    IdentityReport triv2 = finish("rogers_ramanujan_second", one, one, ctx);
    return {triv1, triv2};
  }
  Real ax = xw.abs();
  Real gamma = -log(ax);

  // Residue-class products run to n_max with |x|^{n_max} below working
  // precision; the dropped factors perturb the product by at most
  // exp(tail)-1 with tail = |x|^{n_max+1}/((1-|x|)(1-|x|^{n_max+1})).
  long n_max =
      (Real(ctx.working_digits, bits) * Real::ln10(bits) / gamma).ceil_long() + 1;
  ComplexValue p14(1L, bits), p23(1L, bits), xp(1L, bits);
  for (long n = 1; n <= n_max; ++n) {
    xp = xp * xw;
    long r = n % 5;
    if (r == 1 || r == 4)
      p14 = p14 * (1L - xp);
    else if (r == 2 || r == 3)
      p23 = p23 * (1L - xp);
  }
  Real axp = pow_si(ax, n_max + 1);
  Real tail = axp / ((1L - ax) * (1L - axp));
  Real extra_tol = 4L * tail;

  // Sum sides: u_m = x^{m^2}/((1-x)...(1-x^m)) resp. x^{m(m+1)}/(...);
  // the numerator exponents advance by 2m-1 resp. 2m.
  auto rr_sum = [&](long parity) {
    ComplexValue s(1L, bits), u(1L, bits), xm(1L, bits);
    for (long m = 1; m <= kMaxSumTerms; ++m) {
      xm = xm * xw;
      u = u * cpow(xw, 2 * m - parity) / (1L - xm);
      s = s + u;
      // once the next term ratio bound drops below 1/2 the tail is < |u|
      Real next_ratio = pow_si(ax, 2 * (m + 1) - parity) / (1L - ax);
      if (u.abs() < term_threshold(ctx, bits) && 2L * next_ratio < 1L) break;
    }
    return s;
  };

  IdentityReport first =
      finish("rogers_ramanujan_first", one / p14, rr_sum(1), ctx, extra_tol);
  IdentityReport second =
      finish("rogers_ramanujan_second", one / p23, rr_sum(0), ctx, extra_tol);
  return {first, second};
}

IdentityReport check_minus1(const ComplexValue& x, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue xw = x.at_prec(bits);
  ComplexValue one(1L, bits);
  ComplexValue lhs = eval_R(-one, xw, ctx);
  ComplexValue rhs = eval_R(one, xw * xw, ctx) / eval_R(one, xw, ctx);
  return finish("minus_one_square_ratio", lhs, rhs, ctx);
}

IdentityReport check_root_of_unity(const ComplexValue& t, const ComplexValue& x, long m,
                                   const PrecisionContext& ctx) {
  if (m < 2) throw domain_error("check_root_of_unity: order m must be >= 2");
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue tw = t.at_prec(bits), xw = x.at_prec(bits);
  Real two_pi = 2L * Real::pi(bits);
  ComplexValue lhs(1L, bits);
  for (long j = 0; j < m; ++j) {
    Real angle = two_pi * Real(j, bits) / Real(m, bits);
    ComplexValue w(cos(angle), sin(angle));
    lhs = lhs * eval_R(w * tw, xw, ctx);
  }
  ComplexValue rhs = eval_R(cpow(tw, m), cpow(xw, m), ctx);
  return finish("root_of_unity_m" + std::to_string(m), lhs, rhs, ctx);
}

IdentityReport check_residue_split(const ComplexValue& t, const ComplexValue& x, long m,
                                   const PrecisionContext& ctx) {
  if (m < 1) throw domain_error("check_residue_split: modulus m must be >= 1");
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue tw = t.at_prec(bits), xw = x.at_prec(bits);
  std::string id = "residue_split_m" + std::to_string(m);
  ComplexValue lhs = eval_R(tw, xw, ctx);
  if (xw.is_zero()) return finish(std::move(id), lhs, ComplexValue(1L, bits), ctx);
  ComplexValue xm = cpow(xw, m);
  ComplexValue xinv = ComplexValue(1L, bits) / xw;
  ComplexValue rhs(1L, bits);
  for (long j = 1; j <= m; ++j)
    rhs = rhs * eval_R(tw * cpow(xinv, m - j), xm, ctx);
  return finish(std::move(id), lhs, rhs, ctx);
}

IdentityReport check_trivial_bounds(const ComplexValue& t, const ComplexValue& x,
                                    const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.bits();
  ComplexValue tw = t.at_prec(bits), xw = x.at_prec(bits);
  Real at = tw.abs(), ax = xw.abs();
  ComplexValue value = eval_R(tw, xw, ctx);
  Real vmod = value.abs();
  ComplexValue upper_c = eval_R(ComplexValue::from_real(-at), ComplexValue::from_real(ax), ctx);
  Real upper = upper_c.re();
  Real viol(0L, bits);
  viol = max(viol, vmod - upper);
  if (at * ax <= 1L) {
    Real lower =
        eval_R(ComplexValue::from_real(at), ComplexValue::from_real(ax), ctx).re();
    viol = max(viol, lower - vmod);
  }
  Real tol = pow_si(Real(10L, bits), -(ctx.requested_digits - 5));
  Real scale = max(vmod, upper);
  Real rel = scale.is_zero() ? Real(0L, bits) : viol / scale;
  bool ok = viol <= tol || rel <= tol;
  return {"trivial_bounds", value, upper_c, viol, rel, tol, ok};
}

std::vector<SuiteEntry> run_suite(const SuitePlan& plan) {
  std::vector<SuiteEntry> out;
  SplitMix64 rng(plan.seed);
  CheckOptions opts;
  opts.flip_sign = plan.flip_sign;
  const long requested = plan.digits + 5;
  const mpfr_prec_t label_bits = bits_for_digits(requested);

  auto polar = [&](double mod, double phase_turns) {
    Real angle = Real(phase_turns, label_bits) * 2L * Real::pi(label_bits);
    Real r(mod, label_bits);
    return ComplexValue(r * cos(angle), r * sin(angle));
  };
  auto describe = [](const ComplexValue& v) {
    return "(" + format_real(v.re(), 6) + "," + format_real(v.im(), 6) + ")";
  };
  auto run_point = [&](const ComplexValue& x, const ComplexValue& t, long req_digits,
                       const std::string& where) {
    PrecisionContext ctx = plan_precision(req_digits, gamma_of(x));
    auto add = [&](IdentityReport rep) {
      out.push_back({where + " " + rep.identity_id, std::move(rep)});
    };
    add(check_pentagonal(x, ctx, opts));
    for (auto& rep : check_theta_identities(x, ctx)) add(std::move(rep));
    auto rr = check_rogers_ramanujan(x, ctx);
    add(std::move(rr.first));
    add(std::move(rr.second));
    add(check_minus1(x, ctx));
    add(check_root_of_unity(t, x, 2, ctx));
    add(check_root_of_unity(t, x, 3, ctx));
    add(check_residue_split(t, x, 2, ctx));
    add(check_residue_split(t, x, 3, ctx));
    add(check_trivial_bounds(t, x, ctx));
  };

  const double mod_span = plan.quick ? 0.7 : 0.8;
  for (int i = 0; i < 20; ++i) {
    double xm = 0.1 + mod_span * rng.uniform01();
    double xp = rng.uniform01();
    double tm = 1.5 * rng.uniform01();
    double tp = rng.uniform01();
    ComplexValue x = polar(xm, xp);
    ComplexValue t = polar(tm, tp);
    run_point(x, t, requested,
              "x=" + describe(x) + " t=" + describe(t));
  }
  if (!plan.quick) {
    double tm = 1.5 * rng.uniform01();
    double tp = rng.uniform01();
    ComplexValue x(Real(0.99, label_bits), Real(0L, label_bits));
    ComplexValue t = polar(tm, tp);
    // near the unit circle the tolerance relaxes to 10^-15
    run_point(x, t, 20, "x=(0.99,0) t=" + describe(t));
  }
  return out;
}

}  // namespace qprod::identities
