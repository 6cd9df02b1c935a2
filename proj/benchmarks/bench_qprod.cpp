// Wall-time comparison of every evaluation method at a 30-digit target over
// the gamma sweep {1, 0.3, 0.1, 0.03, 0.01}, t = 1, x = e^{-gamma}.  The
// certified series also records apriori_over_truth, the ratio between its
// planned a-priori tail bound and the error actually measured against a
// high-precision reference — a tightness diagnostic, deliberately not an
// assertion.  Run manually; not part of the ctest suite.

#include <benchmark/benchmark.h>

#include "qprod/baselines.hpp"
#include "qprod/bounds.hpp"
#include "qprod/euler.hpp"
#include "qprod/precision.hpp"

namespace {

using namespace qprod;

constexpr double kGammas[] = {1.0, 0.3, 0.1, 0.03, 0.01};
constexpr long kDigits = 30;

struct Point {
  ComplexValue t;
  ComplexValue x;
  PrecisionContext ctx;
  Real k;
  long factors;  // direct-product count for the same target accuracy
};

Point point_for(double gamma) {
  mpfr_prec_t seed_bits = bits_for_digits(kDigits + 10);
  Real g(gamma, seed_bits);
  ComplexValue x = ComplexValue::from_real(exp(-g));
  PrecisionContext ctx = plan_precision(kDigits, gamma_of(x));
  const mpfr_prec_t bits = ctx.bits();
  Real k = Real(kDigits + 2, bits) * Real::ln10(bits);
  long factors = (Real(kDigits + 2, bits) * Real::ln10(bits) / g).ceil_long() + 5;
  return {ComplexValue(1L, bits), x.at_prec(bits), ctx, k, factors};
}

void set_gamma_counter(benchmark::State& state) {
  state.counters["gamma"] = kGammas[state.range(0)];
}

void BM_series_certified(benchmark::State& state) {
  Point p = point_for(kGammas[state.range(0)]);
  long terms = 0;
  for (auto _ : state) {
    euler::EvalCertificate cert = euler::evaluate(p.t, p.x, p.ctx, p.k);
    terms = cert.terms_used;
    benchmark::DoNotOptimize(cert.value);
  }
  set_gamma_counter(state);
  state.counters["terms"] = static_cast<double>(terms);

  // Tightness of the planned tail bound vs the truth at the planned N.
  euler::TruncationPlan plan = euler::plan_truncation(p.t, p.x, p.k);
  euler::EvalOptions forced;
  forced.force_apriori_terms = true;
  euler::EvalCertificate at_plan = euler::evaluate(p.t, p.x, p.ctx, p.k, forced);
  euler::EvalCertificate oracle = euler::evaluate_digits(p.t, p.x, 3 * kDigits);
  Real truth = (at_plan.value - oracle.value).abs() / oracle.value.abs();
  bounds::BoundReport apriori = bounds::apriori_rel(p.t, p.x, plan.n_apriori);
  if (apriori.hypotheses_met && truth.is_positive())
    state.counters["apriori_over_truth"] = (apriori.value / truth).to_double();
}
BENCHMARK(BM_series_certified)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_direct_product(benchmark::State& state) {
  Point p = point_for(kGammas[state.range(0)]);
  for (auto _ : state) {
    ComplexValue v = baselines::direct_product(p.t, p.x, p.factors, p.ctx);
    benchmark::DoNotOptimize(v);
  }
  set_gamma_counter(state);
  state.counters["terms"] = static_cast<double>(p.factors);
}
BENCHMARK(BM_direct_product)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_corrected_product(benchmark::State& state) {
  Point p = point_for(kGammas[state.range(0)]);
  long n = p.factors / 2 + 5;
  for (auto _ : state) {
    ComplexValue v = baselines::corrected_product(p.t, p.x, n, p.ctx);
    benchmark::DoNotOptimize(v);
  }
  set_gamma_counter(state);
  state.counters["terms"] = static_cast<double>(n);
}
BENCHMARK(BM_corrected_product)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_lambert_log(benchmark::State& state) {
  Point p = point_for(kGammas[state.range(0)]);
  Real tol = pow_si(Real(10L, p.ctx.bits()), -kDigits);
  long terms = 0;
  for (auto _ : state) {
    baselines::BaselineValue v = baselines::lambert_log(p.t, p.x, p.ctx, tol);
    terms = v.terms;
    benchmark::DoNotOptimize(v.value);
  }
  set_gamma_counter(state);
  state.counters["terms"] = static_cast<double>(terms);
}
BENCHMARK(BM_lambert_log)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_gatteschi_accelerated(benchmark::State& state) {
  Point p = point_for(kGammas[state.range(0)]);
  ComplexValue sigma(1L, p.ctx.bits());
  long n = p.factors / 2 + 5;
  for (auto _ : state) {
    baselines::GatteschiState st = baselines::gatteschi_run(p.t, p.x, sigma, n, p.ctx);
    ComplexValue v = baselines::gatteschi_accelerated(st, p.t, p.x);
    benchmark::DoNotOptimize(v);
  }
  set_gamma_counter(state);
  state.counters["terms"] = static_cast<double>(n);
}
BENCHMARK(BM_gatteschi_accelerated)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_slater_reciprocal(benchmark::State& state) {
  Point p = point_for(kGammas[state.range(0)]);
  Real tol = pow_si(Real(10L, p.ctx.bits()), -kDigits);
  long terms = 0;
  for (auto _ : state) {
    baselines::SlaterResult v = baselines::slater_series(p.t, p.x, p.ctx, tol);
    terms = v.terms;
    benchmark::DoNotOptimize(v.value);
  }
  set_gamma_counter(state);
  state.counters["terms"] = static_cast<double>(terms);
}
BENCHMARK(BM_slater_reciprocal)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
