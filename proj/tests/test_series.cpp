#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <thread>
#include <vector>

#include "helpers.hpp"
#include "qprod/bounds.hpp"
#include "qprod/errors.hpp"
#include "qprod/euler.hpp"
#include "qprod/precision.hpp"

using namespace qprod;
using namespace qprod::euler;
using qtest::ctx_digits;
using qtest::real_at;
using qtest::rel_close;

namespace {

struct Frozen {
  const char* t;
  const char* x_log;  // x = exp(x_log), or nullptr to use x_lit
  const char* x_lit;
  const char* value;
};

// Reference values computed with an independent arbitrary-precision library.
const Frozen kReferences[] = {
    {"1", nullptr, "0.5", "0.288788095086602421278899721929230780088912"},
    {"1", "-0.5", nullptr, "0.134859379483221599318658258461469639105215"},
    {"1", nullptr, "0.9", "1.286067434276617627459593913983281666985e-6"},
    {"0.5", "-0.2", nullptr, "0.0756808184149512665675444095670913835015072"},
};

ComplexValue creal(const Real& v) { return ComplexValue(v, Real(v.prec())); }

}  // namespace

TEST_CASE("evaluate_digits reproduces frozen references to 30 digits") {
  const mpfr_prec_t in_bits = bits_for_digits(70);
  for (const Frozen& f : kReferences) {
    Real tv = real_at(f.t, 70);
    Real xv = f.x_log ? exp(real_at(f.x_log, 70)) : real_at(f.x_lit, 70);
    EvalCertificate cert =
        evaluate_digits(creal(tv.at_prec(in_bits)), creal(xv.at_prec(in_bits)), 30);
    CHECK(rel_close(cert.value.re(), f.value, 1e-30));
    CHECK(abs(cert.value.im()) <= cert.value.abs() * pow_si(Real(10L, 128), -30));
    CHECK(cert.authoritative == BoundAuthority::relative);
    CHECK(cert.rel_error_bound <= real_at("1.000001e-32", 20));
    CHECK(cert.terms_used >= 2);
    CHECK(cert.t_reduction_steps == 0);
  }
}

TEST_CASE("exact short-circuits: t = 0, x = 0, and zero prefixes") {
  const mpfr_prec_t bits = 192;
  PrecisionContext ctx = ctx_digits(20, 30);
  Real k = Real(22L, bits) * Real::ln10(bits);

  EvalCertificate t0 = evaluate(ComplexValue(bits), ComplexValue(Real(0.5, bits), Real(bits)),
                                ctx, k);
  CHECK(t0.value.re() == 1L);
  CHECK(t0.value.im().is_zero());
  CHECK(t0.authoritative == BoundAuthority::exact);
  CHECK(t0.rel_error_bound.is_zero());
  CHECK(t0.abs_error_bound.is_zero());

  EvalCertificate x0 = evaluate(ComplexValue(3L, bits), ComplexValue(bits), ctx, k);
  CHECK(x0.value.re() == 1L);
  CHECK(x0.authoritative == BoundAuthority::exact);

  // t = 2, x = 1/2: the first reduction factor 1 - tx vanishes identically.
  EvalCertificate z1 = evaluate(ComplexValue(2L, bits),
                                ComplexValue(Real(0.5, bits), Real(bits)), ctx, k);
  CHECK(z1.value.is_zero());
  CHECK(z1.authoritative == BoundAuthority::exact);
  CHECK(z1.t_reduction_steps == 1);
  CHECK(z1.terms_used == 0);
  CHECK(z1.abs_error_bound.is_zero());

  // t = 8 = (1/2)^{-3}: the third factor vanishes (8 and 0.5^k are exact binary).
  EvalCertificate z3 = evaluate(ComplexValue(8L, bits),
                                ComplexValue(Real(0.5, bits), Real(bits)), ctx, k);
  CHECK(z3.value.is_zero());
  CHECK(z3.t_reduction_steps == 3);
}

TEST_CASE("reduce_t peels factors until |t x^k| <= 1") {
  const mpfr_prec_t bits = 192;
  ComplexValue half(Real(0.5, bits), Real(bits));

  Reduction r0 = reduce_t(half, half);
  CHECK(r0.steps == 0);
  CHECK(r0.prefix.re() == 1L);
  CHECK(r0.t_reduced.re() == Real(0.5, bits));

  Reduction r2 = reduce_t(ComplexValue(4L, bits), half);
  CHECK(r2.steps == 2);
  CHECK(r2.prefix.is_zero());  // (1-2)(1-1) = 0
  CHECK(r2.t_reduced.re() == 1L);

  Reduction r1 = reduce_t(ComplexValue(3L, bits), half);
  CHECK(r1.steps == 2);
  CHECK(r1.prefix.re() == Real(-0.125, bits));  // (1 - 3/2)(1 - 3/4)
  CHECK(r1.t_reduced.re() == Real(0.75, bits));

  CHECK_THROWS_AS(reduce_t(half, ComplexValue(1L, bits)), domain_error);
}

TEST_CASE("term_ratio matches the recurrence factor") {
  const mpfr_prec_t bits = 192;
  ComplexValue one(1L, bits);
  ComplexValue half(Real(0.5, bits), Real(bits));

  TermRatio t1 = term_ratio(one, half, 1);
  CHECK(t1.ratio.re() == -1L);
  CHECK(t1.ratio.im().is_zero());
  CHECK(rel_close(t1.modulus_bound, "1", 1e-40));

  TermRatio t2 = term_ratio(one, half, 2);
  CHECK(rel_close(t2.ratio.re(),
                  "-0.33333333333333333333333333333333333333333333333333", 1e-40));
  CHECK(rel_close(t2.modulus_bound,
                  "0.33333333333333333333333333333333333333333333333333", 1e-40));
  CHECK(t2.ratio.abs() <= t2.modulus_bound * (1L + pow_si(Real(10L, bits), -40)));

  // The bound |t| q^n/(1-q^n) dominates |ratio| for complex inputs too.
  SplitMix64 rng(5);
  for (long i = 0; i < 30; ++i) {
    ComplexValue t = qtest::sample_complex(rng, 0.1, 1.0, bits);
    ComplexValue x = qtest::sample_complex(rng, 0.1, 0.9, bits);
    long n = 1 + static_cast<long>(rng.uniform01() * 20);
    TermRatio tr = term_ratio(t, x, n);
    CHECK(tr.ratio.abs() <= tr.modulus_bound * (1L + pow_si(Real(10L, bits), -35)));
  }

  CHECK_THROWS_AS(term_ratio(one, half, 0), domain_error);
  CHECK_THROWS_AS(term_ratio(one, ComplexValue(1L, bits), 1), domain_error);
}

TEST_CASE("plan_truncation counts") {
  const mpfr_prec_t bits = 256;
  ComplexValue one(1L, bits);

  ComplexValue x01(exp(Real(-0.1, bits)), Real(bits));
  TruncationPlan p = plan_truncation(one, x01, log(real_at("1e10", 40)).at_prec(bits));
  CHECK(p.n_apriori == 34);
  CHECK(p.n_posteriori_min == 11);  // ceil(log 3 / 0.1)

  // K = 0 still plans the fixed-cost floor ceil(sqrt(2 pi^2 / (3 gamma^2))).
  Real g = Real::pi(bits) / sqrt(Real(3L, bits));
  ComplexValue xg(exp(-g), Real(bits));
  TruncationPlan q = plan_truncation(one, xg, Real(bits));
  CHECK(q.n_apriori == 2);

  TruncationPlan z = plan_truncation(ComplexValue(bits), x01, Real(20L, bits));
  CHECK(z.n_posteriori_min == 0);

  CHECK_THROWS_AS(plan_truncation(one, ComplexValue(1L, bits), Real(1L, bits)),
                  domain_error);
  CHECK_THROWS_AS(plan_truncation(one, ComplexValue(bits), Real(1L, bits)), domain_error);
  CHECK_THROWS_AS(plan_truncation(ComplexValue(2L, bits), x01, Real(1L, bits)),
                  domain_error);
  CHECK_THROWS_AS(plan_truncation(one, x01, Real(-1L, bits)), domain_error);
}

TEST_CASE("certificates are sound against a higher-precision self-oracle") {
  SplitMix64 rng(2025);
  const mpfr_prec_t in_bits = 1200;
  int checked = 0;
  for (long i = 0; i < 100; ++i) {
    ComplexValue t = qtest::sample_complex(rng, 0.0, 2.0, in_bits);
    ComplexValue x = qtest::sample_complex(rng, 0.02, 0.95, in_bits);
    PrecisionContext ctx = plan_precision(30, gamma_of(x));
    Real k = Real(30L, ctx.bits()) * Real::ln10(ctx.bits());

    EvalCertificate cert = evaluate(t, x, ctx, k);
    PrecisionContext wide = ctx_digits(90, 3 * ctx.working_digits);
    EvalCertificate oracle = evaluate(t, x, wide, 2L * k.at_prec(wide.bits()));

    if (cert.authoritative == BoundAuthority::exact) {
      // Exact zeros/units must agree with the oracle outright.
      CHECK((cert.value - oracle.value).abs() <= pow_si(Real(10L, 128), -55));
      continue;
    }
    REQUIRE(oracle.value.abs().is_positive());
    Real measured = (cert.value - oracle.value).abs() / oracle.value.abs();
    CHECK(measured <= cert.rel_error_bound * (1L + pow_si(Real(10L, 128), -10)) +
                          real_at("1e-58", 20));
    CHECK(cert.rel_error_bound <= real_at("1e-30", 20));
    ++checked;
  }
  CHECK(checked >= 95);  // nearly all draws are generic
}

TEST_CASE("functional equation R(t,x) = (1 - tx) R(tx, x)") {
  const mpfr_prec_t bits = 320;
  PrecisionContext ctx = ctx_digits(30, 60);
  Real k = Real(30L, bits) * Real::ln10(bits);
  Real tol = real_at("5e-30", 20);

  std::vector<std::pair<ComplexValue, ComplexValue>> cases;
  cases.emplace_back(ComplexValue(Real(1.7, bits), Real(bits)),
                     ComplexValue(Real(0.5, bits), Real(bits)));
  cases.emplace_back(ComplexValue(Real(0.9, bits), Real(0.3, bits)),
                     ComplexValue(Real(0.2, bits), Real(-0.4, bits)));
  SplitMix64 rng(8);
  for (long i = 0; i < 10; ++i)
    cases.emplace_back(qtest::sample_complex(rng, 0.1, 1.8, bits),
                       qtest::sample_complex(rng, 0.1, 0.8, bits));

  for (const auto& [t, x] : cases) {
    ComplexValue lhs = evaluate(t, x, ctx, k).value;
    ComplexValue rhs = (1L - t * x) * evaluate(t * x, x, ctx, k).value;
    REQUIRE(lhs.abs().is_positive());
    CHECK((lhs - rhs).abs() / lhs.abs() <= tol);
  }
}

TEST_CASE("truncation error decays quadratically in N at t=1, x=0.9") {
  const mpfr_prec_t bits = bits_for_digits(70);
  ComplexValue one(1L, bits);
  ComplexValue x(Real(0.9, bits), Real(bits));
  Real g = -log(Real(0.9, bits));
  Real pi = Real::pi(bits);

  ComplexValue oracle = evaluate_digits(one, x, 60).value;

  ComplexValue a(1L, bits), s(1L, bits), xn = ComplexValue(Real(0.9, bits), Real(bits));
  Real prev_delta(bits);
  for (long n = 1; n <= 40; ++n) {
    // s currently holds S_n (terms a_0 .. a_{n-1}).
    Real delta = (s - oracle).abs();
    Real envelope = exp(pi * pi / (6L * g) - Real(n, bits) * (n + 1) * g / 2L) /
                    (1L - exp(-Real(n + 1, bits) * g));
    CHECK(delta <= envelope * (1L + pow_si(Real(10L, bits), -10)));
    if (n > 12) CHECK(delta < prev_delta);  // decay sets in well before the peak ends
    prev_delta = delta;

    a = a * (-(one * xn)) / (1L - xn);
    s = s + a;
    xn = xn * x;
  }
  Real final_delta = (s - oracle).abs();
  CHECK(final_delta <= real_at("1e-29", 20));
}

TEST_CASE("forced a-priori truncation agrees with the early-stopped value") {
  const mpfr_prec_t bits = 256;
  for (double gv : {1.0, 0.1}) {
    ComplexValue one(1L, bits);
    ComplexValue x(exp(Real(-gv, bits)), Real(bits));
    PrecisionContext ctx = plan_precision(25, gamma_of(x));
    Real k = Real(25L, ctx.bits()) * Real::ln10(ctx.bits());

    EvalCertificate quick = evaluate(one, x, ctx, k);
    EvalCertificate full = evaluate(one, x, ctx, k, EvalOptions{true});
    TruncationPlan plan = plan_truncation(one, x.at_prec(ctx.bits()), k);

    CHECK(full.terms_used == plan.n_apriori);
    CHECK(quick.terms_used <= full.terms_used);
    Real tol = (quick.rel_error_bound + full.rel_error_bound) *
               (1L + pow_si(Real(10L, 128), -10));
    CHECK((quick.value - full.value).abs() <= quick.value.abs() * tol);
  }
}

TEST_CASE("largest-term growth and total decay near the unit circle") {
  // For gamma -> 0 at t = 1: log(max_n |a_n|) ~ pi^2/(12 gamma) and
  // log R ~ -pi^2/(6 gamma).
  for (double gv : {0.05, 0.03, 0.02}) {
    const mpfr_prec_t bits = 256;
    ComplexValue one(1L, bits);
    ComplexValue x(exp(Real(-gv, bits)), Real(bits));
    EvalCertificate cert = evaluate_digits(one, x, 25);
    Real pi = Real::pi(bits);
    Real peak = pi * pi / (12L * Real(gv, bits));
    Real lm = log(cert.max_abs_term);
    CHECK(lm >= Real(0.85, bits) * peak);
    CHECK(lm <= Real(1.15, bits) * peak);

    Real lr = log(cert.value.abs());
    Real target = -(pi * pi) / (6L * Real(gv, bits));
    CHECK(lr <= Real(0.9, bits) * target);   // target is negative
    CHECK(lr >= Real(1.1, bits) * target);
  }
}

TEST_CASE("evaluation is reproducible across threads") {
  std::vector<std::string> serial(8);
  auto value_at = [](int j) {
    const mpfr_prec_t bits = 192;
    ComplexValue t(Real(0.7, bits), Real(0.1, bits));
    ComplexValue x(Real(0.30 + 0.05 * j, bits), Real(0.05, bits));
    EvalCertificate cert = evaluate_digits(t, x, 25);
    return format_real(cert.value.re(), 30) + "|" + format_real(cert.value.im(), 30);
  };
  for (int j = 0; j < 8; ++j) serial[j] = value_at(j);

  std::vector<std::string> threaded(8);
  std::vector<std::thread> pool;
  pool.reserve(8);
  for (int j = 0; j < 8; ++j)
    pool.emplace_back([&, j] { threaded[j] = value_at(j); });
  for (auto& th : pool) th.join();

  for (int j = 0; j < 8; ++j) CHECK(threaded[j] == serial[j]);
}

TEST_CASE("evaluate input validation") {
  const mpfr_prec_t bits = 128;
  PrecisionContext ctx = ctx_digits(10, 20);
  ComplexValue one(1L, bits);
  CHECK_THROWS_AS(evaluate(one, ComplexValue(1L, bits), ctx, Real(1L, bits)), domain_error);
  CHECK_THROWS_AS(evaluate(one, ComplexValue(Real(1.2, bits), Real(bits)), ctx,
                           Real(1L, bits)),
                  domain_error);
  CHECK_THROWS_AS(evaluate(one, ComplexValue(Real(0.5, bits), Real(bits)), ctx,
                           Real(-2L, bits)),
                  domain_error);
}
