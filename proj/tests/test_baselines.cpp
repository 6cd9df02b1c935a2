#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "helpers.hpp"
#include "qprod/baselines.hpp"
#include "qprod/bounds.hpp"
#include "qprod/errors.hpp"
#include "qprod/euler.hpp"
#include "qprod/precision.hpp"

using namespace qprod;
using namespace qprod::baselines;
using qtest::ctx_digits;
using qtest::real_at;
using qtest::rel_close;

namespace {

ComplexValue creal(double v, mpfr_prec_t bits) {
  return ComplexValue(Real(v, bits), Real(bits));
}

// prod_{k=1}^{n} (1 - t x^k) computed directly at the state's precision.
ComplexValue factor_product(const ComplexValue& t, const ComplexValue& x, long n) {
  mpfr_prec_t bits = std::max(t.prec(), x.prec());
  ComplexValue acc(1L, bits);
  ComplexValue xk(1L, bits);
  for (long k = 1; k <= n; ++k) {
    xk = xk * x;
    acc = acc * (1L - t * xk);
  }
  return acc;
}

}  // namespace

TEST_CASE("direct_product exact small cases") {
  const mpfr_prec_t bits = 192;
  PrecisionContext ctx = ctx_digits(30, 45);
  ComplexValue one(1L, bits);
  ComplexValue half = creal(0.5, bits);

  ComplexValue p3 = direct_product(one, half, 3, ctx);
  CHECK(p3.re() == Real(0.328125, bits));  // (1/2)(3/4)(7/8), exact in binary
  CHECK(p3.im().is_zero());

  CHECK(direct_product(one, half, 0, ctx).re() == 1L);
  CHECK(direct_product(ComplexValue(2L, bits), half, 1, ctx).is_zero());

  CHECK_THROWS_AS(direct_product(one, ComplexValue(1L, bits), 3, ctx), domain_error);
  CHECK_THROWS_AS(direct_product(one, half, -1, ctx), domain_error);
}

TEST_CASE("corrected_product cancels the leading tail factor") {
  const mpfr_prec_t bits = 256;
  PrecisionContext ctx = ctx_digits(30, 45);
  ComplexValue one(1L, bits);
  ComplexValue half = creal(0.5, bits);

  CHECK(corrected_product(ComplexValue(bits), half, 4, ctx).re() == 1L);  // t = 0
  CHECK(corrected_product(one, half, 0, ctx).is_zero());  // factor 1 - tx/(1-x)

  // At t=1, x=0.8 the corrected error is O(x^{2N}) with a moderate constant,
  // and the corrected/direct error ratio keeps shrinking with N.
  ComplexValue x8 = creal(0.8, bits);
  ComplexValue r = euler::evaluate_digits(one, x8, 40).value;
  Real prev_ratio(bits);
  bool first = true;
  for (long n : {5L, 10L, 15L, 20L}) {
    Real dc = (1L - corrected_product(one, x8, n, ctx) / r).abs();
    Real dd = (1L - direct_product(one, x8, n, ctx) / r).abs();
    CHECK(dc <= 25L * pow_si(Real(0.8, bits), 2 * n));
    CHECK(dc < dd);
    Real ratio = dc / dd;
    if (!first) CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
    first = false;
  }
}

TEST_CASE("lambert_log equals exp(-S) and guards its domain") {
  const mpfr_prec_t bits = 256;
  PrecisionContext ctx = ctx_digits(30, 45);
  Real tol = real_at("1e-30", 20);

  BaselineValue z = lambert_log(ComplexValue(bits), creal(0.5, bits), ctx, tol);
  CHECK(z.value.re() == 1L);
  CHECK(z.terms == 0);

  BaselineValue lv = lambert_log(ComplexValue(1L, bits), creal(0.5, bits), ctx, tol);
  CHECK(rel_close(lv.value.re(), "0.288788095086602421278899721929230780089", 1e-28));
  CHECK(lv.terms >= 50);

  // Cross-check against the log-derivative sum oracle: value = exp(-S(1/2)).
  bounds::LambertSums ls = bounds::lambert_sums(Real(0.5, bits), ctx);
  CHECK((lv.value.re() - exp(-ls.S)).to_double() == doctest::Approx(0.0).epsilon(1e-25));

  CHECK_THROWS_AS(lambert_log(creal(1.5, bits), creal(0.8, bits), ctx, tol), domain_error);
  CHECK_THROWS_AS(lambert_log(ComplexValue(2L, bits), creal(0.5, bits), ctx, tol),
                  domain_error);
  CHECK_THROWS_AS(lambert_log(ComplexValue(1L, bits), creal(1.0, bits), ctx, tol),
                  domain_error);
}

TEST_CASE("gatteschi_init and a single step") {
  const mpfr_prec_t bits = 192;
  PrecisionContext ctx = ctx_digits(25, 40);
  ComplexValue one(1L, bits);
  ComplexValue half = creal(0.5, bits);

  GatteschiState s0 = gatteschi_init(one, half, ComplexValue(2L, bits), ctx);
  CHECK(s0.n == 0);
  CHECK(s0.alpha.re() == 1L);
  CHECK(rel_close(s0.beta.re(), "1.3333333333333333333333333333333333333", 1e-35));

  GatteschiState s1 = gatteschi_step(
      gatteschi_init(one, half, ComplexValue(1L, bits), ctx), one, half);
  CHECK(s1.n == 1);
  CHECK(s1.alpha.re() == Real(0.5, bits));  // 1 - tx

  CHECK_THROWS_AS(gatteschi_init(one, half, ComplexValue(bits), ctx), domain_error);
  CHECK_THROWS_AS(gatteschi_init(one, half, half, ctx), domain_error);  // sigma = t x
}

TEST_CASE("gatteschi closed forms hold along complex iterations") {
  const mpfr_prec_t bits = 320;
  PrecisionContext ctx = ctx_digits(40, 60);
  SplitMix64 rng(41);
  Real slack = pow_si(Real(10L, bits), -54);
  for (long rep = 0; rep < 10; ++rep) {
    ComplexValue t = qtest::sample_complex(rng, 0.2, 1.0, bits);
    ComplexValue x = qtest::sample_complex(rng, 0.2, 0.8, bits);
    ComplexValue sigma = qtest::sample_complex(rng, 0.9, 2.0, bits);

    GatteschiState st = gatteschi_init(t, x, sigma, ctx);
    for (long n = 1; n <= 8; ++n) {
      st = gatteschi_step(st, t, x);
      ComplexValue alpha_ref = factor_product(t, x, n);
      ComplexValue beta_ref =
          sigma / (sigma - t * pow_ui(x, static_cast<unsigned long>(n + 1))) * alpha_ref;
      CHECK((st.alpha - alpha_ref).abs() <= alpha_ref.abs() * slack);
      CHECK((st.beta - beta_ref).abs() <= beta_ref.abs() * slack);
    }
  }
}

TEST_CASE("gatteschi iteration is exact over the rationals") {
  // t = 1/3, x = 1/2, sigma = 1: every alpha_n must equal
  // prod_{k=1}^n (1 - (1/3) 2^{-k}) as an exact fraction.
  const mpq_class t(1, 3), x(1, 2), sigma(1), one(1);
  mpq_class alpha(1);
  mpq_class beta = sigma / (sigma - t * x);
  mpq_class expected(1);
  mpq_class xpow = x;
  for (long n = 1; n <= 8; ++n) {
    std::pair<mpq_class, mpq_class> next =
        gatteschi_step_values<mpq_class>(alpha, beta, sigma, x, one);
    alpha = next.first;
    beta = next.second;
    expected *= one - t * xpow;
    xpow *= x;
    CHECK(alpha == expected);
    CHECK(beta == sigma / (sigma - t * xpow) * expected);
  }
}

TEST_CASE("gatteschi acceleration: equivalence, t = 0, and breakdown") {
  const mpfr_prec_t bits = 256;
  PrecisionContext ctx = ctx_digits(30, 45);
  ComplexValue one(1L, bits);
  ComplexValue half = creal(0.5, bits);

  // Combination form lambda alpha + (1-lambda) beta equals the closed form.
  ComplexValue sigma = creal(0.7, bits);
  GatteschiState st = gatteschi_run(one, half, sigma, 6, ctx);
  ComplexValue acc = gatteschi_accelerated(st, one, half);
  ComplexValue lambda = 1L + sigma / (1L - half);
  ComplexValue combo = lambda * st.alpha + (1L - lambda) * st.beta;
  CHECK((acc - combo).abs() <= acc.abs() * pow_si(Real(10L, bits), -40));

  GatteschiState zt = gatteschi_run(ComplexValue(bits), half, sigma, 4, ctx);
  ComplexValue zacc = gatteschi_accelerated(zt, ComplexValue(bits), half);
  CHECK((1L - zacc).abs() <= pow_si(Real(10L, bits), -40));

  // sigma = t x^3 = 1/8: the second step divides by x alpha + (1-x) beta = 0.
  ComplexValue sig8 = creal(0.125, bits);
  GatteschiState b0 = gatteschi_init(one, half, sig8, ctx);
  GatteschiState b1 = gatteschi_step(b0, one, half);
  CHECK_THROWS_AS(gatteschi_step(b1, one, half), iteration_error);
  CHECK_THROWS_AS(gatteschi_run(one, half, sig8, 2, ctx), iteration_error);

  // sigma = t x^{n+1} with n = 2 breaks the accelerated combination itself.
  GatteschiState manual{2, factor_product(one, half, 2), ComplexValue(1L, bits), sig8};
  CHECK_THROWS_AS(gatteschi_accelerated(manual, one, half), iteration_error);
}

TEST_CASE("acceleration doubles the geometric error rate") {
  const mpfr_prec_t bits = 256;
  PrecisionContext ctx = ctx_digits(30, 45);
  ComplexValue one(1L, bits);
  ComplexValue x = creal(0.8, bits);
  ComplexValue r = euler::evaluate_digits(one, x, 40).value;
  Real log_x = log(Real(0.8, bits));

  auto slope_between = [&](long n0, long n1, bool accel) {
    auto err = [&](long n) {
      GatteschiState st = gatteschi_run(one, x, ComplexValue(1L, bits), n, ctx);
      ComplexValue v = accel ? gatteschi_accelerated(st, one, x) : st.alpha;
      return log((1L - v / r).abs());
    };
    return (err(n1) - err(n0)) / (n1 - n0);
  };

  for (auto [n0, n1] : std::vector<std::pair<long, long>>{{10, 20}, {20, 30}}) {
    Real fast = slope_between(n0, n1, true);
    CHECK(abs(fast - 2L * log_x) <= abs(2L * log_x) * Real(0.15, bits));
    Real plain = slope_between(n0, n1, false);
    CHECK(abs(plain - log_x) <= abs(log_x) * Real(0.15, bits));
  }
}

TEST_CASE("slater reciprocal series: values, hazard report, zero crossing") {
  const mpfr_prec_t bits = 256;
  PrecisionContext ctx = ctx_digits(30, 45);
  Real tol = real_at("1e-30", 20);
  ComplexValue one(1L, bits);
  ComplexValue half = creal(0.5, bits);

  SlaterResult z = slater_series(ComplexValue(bits), half, ctx, tol);
  CHECK(z.value.re() == 1L);
  CHECK(z.min_denominator_modulus == 1L);

  SlaterResult sv = slater_series(one, half, ctx, tol);
  CHECK(rel_close(sv.value.re(), "0.288788095086602421278899721929230780089", 1e-25));
  CHECK(sv.terms >= 10);
  CHECK(sv.min_denominator_modulus == 1L);  // partial sums grow from s_0 = 1

  // t = -1, x = 1/2: u_1 = -1 makes the first partial sum vanish exactly.
  CHECK_THROWS_AS(slater_series(ComplexValue(-1L, bits), half, ctx, tol),
                  iteration_error);

  CHECK_THROWS_AS(slater_series(ComplexValue(2L, bits), half, ctx, tol), domain_error);
  CHECK_THROWS_AS(slater_series(one, creal(1.0, bits), ctx, tol), domain_error);
}

TEST_CASE("all baselines agree with the certified evaluator on random samples") {
  const mpfr_prec_t bits = 320;
  PrecisionContext ctx = ctx_digits(30, 50);
  SplitMix64 rng(53);
  Real tol = real_at("1e-23", 20);
  Real agree = real_at("1e-18", 20);

  for (long i = 0; i < 50; ++i) {
    ComplexValue t = qtest::sample_complex(rng, 0.1, 1.0, bits);
    ComplexValue x = qtest::sample_complex(rng, 0.1, 0.9, bits);
    Real g = -log(x.abs());
    long n_dir = (Real(23L, bits) * Real::ln10(bits) / g).ceil_long() + 5;
    long n_half = n_dir / 2 + 5;

    ComplexValue ref = euler::evaluate_digits(t, x, 25).value;
    Real scale = ref.abs();
    REQUIRE(scale.is_positive());

    CHECK((direct_product(t, x, n_dir, ctx) - ref).abs() <= scale * agree);
    CHECK((corrected_product(t, x, n_half, ctx) - ref).abs() <= scale * agree);
    CHECK((lambert_log(t, x, ctx, tol).value - ref).abs() <= scale * agree);
    GatteschiState st = gatteschi_run(t, x, ComplexValue(1L, bits), n_half, ctx);
    CHECK((gatteschi_accelerated(st, t, x) - ref).abs() <= scale * agree);
    CHECK((slater_series(t, x, ctx, tol).value - ref).abs() <= scale * agree);
  }
}
