// Command-line front end: certified evaluation of R(t,x) = prod (1 - t x^n),
// cross-method benchmarking, curve data emission, and the identity
// validation suite.  All output (JSON on stdout, CSV files) is deterministic
// for fixed flags; bench wall-clock columns are the sole exception.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qprod/baselines.hpp"
#include "qprod/errors.hpp"
#include "qprod/eta.hpp"
#include "qprod/euler.hpp"
#include "qprod/identities.hpp"
#include "qprod/precision.hpp"

namespace {

using nlohmann::ordered_json;
using qprod::ComplexValue;
using qprod::GammaParam;
using qprod::PrecisionContext;
using qprod::Real;

constexpr long kMaxBaselineTerms = 20000000L;

Real k_for_digits(long digits, mpfr_prec_t bits) {
  return Real(digits + 2, bits) * Real::ln10(bits);
}

// Wide enough to parse inputs before the gamma-aware plan exists.
PrecisionContext provisional_ctx(long digits) {
  return PrecisionContext{digits, digits + 40, 10};
}

Real parse_positive_real(const std::string& text, const PrecisionContext& ctx,
                         const char* what) {
  ComplexValue v = qprod::parse_complex(text, ctx);
  if (!v.is_real() || !v.re().is_positive())
    throw qprod::parse_error(std::string(what) + " must be a positive real, got '" + text + "'");
  return v.re();
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = item.find_last_not_of(" \t");
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

long default_factor_count(long digits, const Real& gamma, bool quadratic_order) {
  mpfr_prec_t bits = gamma.prec();
  Real n = Real(digits + 2, bits) * Real::ln10(bits) / gamma;
  if (quadratic_order) n = n / 2L;
  long count = n.ceil_long() + 2;
  if (count > kMaxBaselineTerms)
    throw qprod::domain_error(
        "requested baseline needs " + std::to_string(count) +
        " factors at this gamma; use --terms to override or --method euler");
  return count;
}

struct MethodResult {
  ComplexValue value;
  std::string rel_error_bound;  // decimal string, or "none" for uncertified methods
  long terms = 0;
  long reduction_steps = 0;
  std::string min_denominator;  // slater conditioning observation, else empty
};

MethodResult run_method(const std::string& method, const ComplexValue& t,
                        const ComplexValue& x, const PrecisionContext& ctx,
                        const Real& gamma, long digits, long terms_flag,
                        const ComplexValue& sigma) {
  const mpfr_prec_t bits = ctx.bits();
  const long fmt_digits = digits + 5;
  if (method == "euler") {
    auto cert = qprod::euler::evaluate(t, x, ctx, k_for_digits(digits, bits));
    std::string rel = cert.authoritative == qprod::euler::BoundAuthority::exact
                          ? "0"
                          : qprod::format_real(cert.rel_error_bound, fmt_digits);
    return {cert.value, std::move(rel), cert.terms_used, cert.t_reduction_steps, ""};
  }
  if (method == "product" || method == "corrected") {
    bool corrected = method == "corrected";
    long n = terms_flag > 0 ? terms_flag : default_factor_count(digits, gamma, corrected);
    ComplexValue v = corrected ? qprod::baselines::corrected_product(t, x, n, ctx)
                               : qprod::baselines::direct_product(t, x, n, ctx);
    return {v, "none", n, 0, ""};
  }
  if (method == "log") {
    Real tol = pow_si(Real(10L, bits), -(digits + 2));
    auto r = qprod::baselines::lambert_log(t, x, ctx, tol);
    return {r.value, "none", r.terms, 0, ""};
  }
  if (method == "gatteschi") {
    long n = terms_flag > 0 ? terms_flag : default_factor_count(digits, gamma, true);
    auto state = qprod::baselines::gatteschi_run(t, x, sigma, n, ctx);
    ComplexValue v = qprod::baselines::gatteschi_accelerated(state, t, x);
    return {v, "none", n, 0, ""};
  }
  if (method == "slater") {
    Real tol = pow_si(Real(10L, bits), -(digits + 2));
    auto r = qprod::baselines::slater_series(t, x, ctx, tol);
    return {r.value, "none", r.terms, 0,
            qprod::format_real(r.min_denominator_modulus, fmt_digits)};
  }
  throw qprod::domain_error("unknown method '" + method + "'");
}

int run_eval(const std::string& t_text, const std::string& x_text, long digits,
             const std::string& method, const std::string& sigma_text, long terms_flag) {
  if (digits < 1) throw qprod::domain_error("--digits must be >= 1");
  PrecisionContext pre = provisional_ctx(digits);
  ComplexValue x_probe = qprod::parse_complex(x_text, pre);
  if (!(x_probe.abs() < 1L)) throw qprod::domain_error("x outside open unit disc");

  ordered_json out;
  if (x_probe.is_zero()) {
    // empty product: exactly 1 under every method
    out = {{"value_re", "1"},       {"value_im", "0"},
           {"rel_error_bound", "0"}, {"terms_used", 0},
           {"working_digits", digits}, {"method", method},
           {"t_reduction_steps", 0}};
    std::cout << out.dump() << "\n";
    return 0;
  }

  PrecisionContext ctx = qprod::plan_precision(digits, qprod::gamma_of(x_probe));
  ComplexValue x = qprod::parse_complex(x_text, ctx);
  ComplexValue t = qprod::parse_complex(t_text, ctx);
  ComplexValue sigma = qprod::parse_complex(sigma_text, ctx);
  Real gamma = qprod::gamma_of(x).value;

  MethodResult r = run_method(method, t, x, ctx, gamma, digits, terms_flag, sigma);
  const long fmt_digits = digits + 5;
  out = {{"value_re", qprod::format_real(r.value.re(), fmt_digits)},
         {"value_im", qprod::format_real(r.value.im(), fmt_digits)},
         {"rel_error_bound", r.rel_error_bound},
         {"terms_used", r.terms},
         {"working_digits", ctx.working_digits},
         {"method", method},
         {"t_reduction_steps", r.reduction_steps}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_bench(const std::string& gamma_list, long digits, const std::string& methods_csv,
              const std::string& t_text, const std::string& sigma_text,
              const std::string& out_path) {
  if (digits < 1) throw qprod::domain_error("--digits must be >= 1");
  std::vector<std::string> methods = split_csv(methods_csv);
  if (methods.empty()) throw qprod::domain_error("empty method list");
  for (const auto& m : methods)
    if (m != "euler" && m != "product" && m != "corrected" && m != "log" &&
        m != "gatteschi" && m != "slater")
      throw qprod::domain_error("unknown method '" + m + "'");
  std::vector<std::string> gammas = split_csv(gamma_list);
  if (gammas.empty()) throw qprod::domain_error("empty gamma list");

  std::ofstream file(out_path);
  if (!file) throw qprod::domain_error("cannot open output file: " + out_path);
  file << "method,gamma,terms,wall_time_ns,rel_err_vs_reference,min_denominator_modulus\n";

  const long fmt_digits = digits + 5;
  PrecisionContext pre = provisional_ctx(digits + 10);
  for (const auto& method : methods) {
    for (const auto& gtext : gammas) {
      Real g_probe = parse_positive_real(gtext, pre, "gamma");
      GammaParam gp{g_probe};

      // reference value at ten extra digits
      PrecisionContext ref_ctx = qprod::plan_precision(digits + 10, gp);
      Real g_ref = g_probe.at_prec(ref_ctx.bits());
      ComplexValue x_ref = ComplexValue::from_real(exp(-g_ref));
      ComplexValue t_ref = qprod::parse_complex(t_text, ref_ctx);
      ComplexValue ref =
          qprod::euler::evaluate(t_ref, x_ref, ref_ctx, k_for_digits(digits + 10, ref_ctx.bits()))
              .value;
      Real ref_mod = ref.abs();
      if (ref_mod.is_zero())
        throw qprod::domain_error("reference value vanishes at gamma " + gtext +
                                  "; relative error undefined");

      PrecisionContext ctx = qprod::plan_precision(digits, gp);
      Real g = g_probe.at_prec(ctx.bits());
      ComplexValue x = ComplexValue::from_real(exp(-g));
      ComplexValue t = qprod::parse_complex(t_text, ctx);
      ComplexValue sigma = qprod::parse_complex(sigma_text, ctx);

      auto start = std::chrono::steady_clock::now();
      MethodResult r = run_method(method, t, x, ctx, g, digits, 0, sigma);
      auto stop = std::chrono::steady_clock::now();
      auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();

      Real rel = (r.value.at_prec(ref_ctx.bits()) - ref).abs() / ref_mod;
      file << method << ',' << qprod::format_real(g, fmt_digits) << ',' << r.terms << ','
           << ns << ',' << qprod::format_real(rel, fmt_digits) << ',' << r.min_denominator
           << "\n";
    }
  }
  if (!file.good()) throw qprod::domain_error("write failed: " + out_path);
  return 0;
}

int run_plot(const std::string& function, const std::string& zmin_text,
             const std::string& zmax_text, long points, long digits,
             const std::string& out_path) {
  if (digits < 1) throw qprod::domain_error("--digits must be >= 1");
  if (points < 1) throw qprod::domain_error("--points must be >= 1");
  PrecisionContext pre = provisional_ctx(digits);
  Real zmin = parse_positive_real(zmin_text, pre, "z-min");
  Real zmax = parse_positive_real(zmax_text, pre, "z-max");
  if (zmax < zmin) throw qprod::domain_error("z-max must be >= z-min");

  // the modular-symmetric evaluations run at gamma >= 2 pi regardless of z
  mpfr_prec_t pbits = qprod::bits_for_digits(digits + 10);
  PrecisionContext ctx = qprod::plan_precision(digits, GammaParam{2 * Real::pi(pbits)});
  const mpfr_prec_t bits = ctx.bits();

  std::ofstream file(out_path);
  if (!file) throw qprod::domain_error("cannot open output file: " + out_path);
  file << "z,log_z,value\n";

  const long fmt_digits = digits + 5;
  Real lmin = log(zmin.at_prec(bits)), lmax = log(zmax.at_prec(bits));
  for (long i = 0; i < points; ++i) {
    Real lz = points == 1
                  ? lmin
                  : lmin + (lmax - lmin) * Real(i, bits) / Real(points - 1, bits);
    Real z = exp(lz);
    Real value(bits);
    if (function == "f") {
      value = qprod::eta::f_of(z, ctx);
    } else if (function == "g") {
      value = qprod::eta::g_of(z, ctx);
    } else {
      // R(1, e^{-2 pi z}) / R0_plus(e^{-2 pi z}) equals e^{f(z)} identically;
      // evaluating through f keeps the series on the convergent side for all z.
      value = exp(qprod::eta::f_of(z, ctx));
    }
    file << qprod::format_real(z, fmt_digits) << ',' << qprod::format_real(lz, fmt_digits)
         << ',' << qprod::format_real(value, fmt_digits) << "\n";
  }
  if (!file.good()) throw qprod::domain_error("write failed: " + out_path);
  return 0;
}

int run_validate(long digits, unsigned long long seed, bool quick, bool flip) {
  if (digits < 6) throw qprod::domain_error("--digits must be >= 6");
  qprod::identities::SuitePlan plan;
  plan.digits = digits;
  plan.seed = seed;
  plan.quick = quick;
  plan.flip_sign = flip;
  auto entries = qprod::identities::run_suite(plan);

  long failures = 0;
  for (const auto& e : entries) {
    std::cout << (e.report.pass ? "PASS  " : "FAIL  ") << e.label
              << "  rel_discrepancy=" << qprod::format_real(e.report.rel_discrepancy, 3)
              << " tolerance=" << qprod::format_real(e.report.tolerance, 3) << "\n";
    if (!e.report.pass) ++failures;
  }
  std::cout << entries.size() << " checks, " << failures << " failed\n";
  if (failures == 0) return 0;
  for (const auto& e : entries) {
    if (e.report.pass) continue;
    ordered_json j = {
        {"label", e.label},
        {"identity_id", e.report.identity_id},
        {"lhs_re", qprod::format_real(e.report.lhs.re(), digits + 5)},
        {"lhs_im", qprod::format_real(e.report.lhs.im(), digits + 5)},
        {"rhs_re", qprod::format_real(e.report.rhs.re(), digits + 5)},
        {"rhs_im", qprod::format_real(e.report.rhs.im(), digits + 5)},
        {"abs_discrepancy", qprod::format_real(e.report.abs_discrepancy, 6)},
        {"rel_discrepancy", qprod::format_real(e.report.rel_discrepancy, 6)},
        {"tolerance", qprod::format_real(e.report.tolerance, 6)},
    };
    std::cout << j.dump() << "\n";
  }
  return 1;
}

void emit_error(const std::string& kind, const std::string& message) {
  ordered_json err = {{"error", message}, {"kind", kind}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qprod: arbitrary-precision evaluation of R(t,x) = prod_{n>=1}(1 - t x^n) "
      "for complex t and |x| < 1, with certified truncation error.\n"
      "Certified runs target relative error e^{-K} with K = (digits+2)*ln(10).\n"
      "Digits count relative (leading significant) figures; when |R| is tiny, add "
      "ln(1/|R|)/ln(10) digits to pin figures at a fixed decimal place."};
  app.require_subcommand(1);

  std::string t_text = "1", x_text, sigma_text = "1", method = "euler";
  long digits = 30, terms_flag = 0;

  auto* eval = app.add_subcommand("eval", "Evaluate R(t,x); JSON result on stdout");
  eval->add_option("--t", t_text, "complex t: 'a', 'a+bi', or polar 'm@theta' (radians)")
      ->required();
  eval->add_option("--x", x_text, "complex x with |x| < 1, same formats as --t")->required();
  eval->add_option("--digits", digits, "requested significant digits")->required();
  eval->add_option("--method", method, "algorithm (only euler emits a certified bound)")
      ->check(CLI::IsMember({"euler", "product", "corrected", "log", "gatteschi", "slater"}));
  eval->add_option("--sigma", sigma_text,
                   "free parameter of the gatteschi iteration (not 0 and not t*x)");
  eval->add_option("--terms", terms_flag,
                   "factor/iteration count override for product, corrected, gatteschi");

  std::string gamma_list, bench_methods = "euler,product,corrected,log,gatteschi,slater";
  std::string out_path;
  long bench_digits = 30;
  auto* bench = app.add_subcommand(
      "bench", "Time all methods at x = e^{-gamma} against a higher-precision reference");
  bench->add_option("--gamma-list", gamma_list, "comma-separated positive gamma values")
      ->required();
  bench->add_option("--digits", bench_digits, "target digits for every method");
  bench->add_option("--methods", bench_methods, "comma-separated method subset");
  bench->add_option("--t", t_text, "complex t (default 1)");
  bench->add_option("--sigma", sigma_text, "gatteschi parameter");
  bench->add_option("--out", out_path, "output CSV path")->required();

  std::string plot_function, zmin_text, zmax_text;
  long plot_points = 100, plot_digits = 30;
  auto* plot = app.add_subcommand(
      "plot", "Emit CSV curve data for the modular-symmetric functions");
  plot->add_option("--function", plot_function,
                   "f (symmetric log-correction), g (scaled antisymmetric difference), "
                   "or R0ratio (product over its closed-form approximant)")
      ->required()
      ->check(CLI::IsMember({"f", "g", "R0ratio"}));
  plot->add_option("--z-min", zmin_text, "grid start, > 0")->required();
  plot->add_option("--z-max", zmax_text, "grid end, >= z-min")->required();
  plot->add_option("--points", plot_points, "log-spaced point count");
  plot->add_option("--digits", plot_digits, "digits per emitted value");
  plot->add_option("--out", out_path, "output CSV path")->required();

  long validate_digits = 25;
  unsigned long long seed = 0;
  bool quick = false, inject_flip = false;
  auto* validate = app.add_subcommand(
      "validate", "Run the classical-identity suite over a seeded sample plan");
  validate->add_option("--digits", validate_digits, "identity tolerance digits");
  validate->add_option("--seed", seed, "sample-plan seed");
  validate->add_flag("--quick", quick, "restrict sample moduli to 0.8, skip the 0.99 leg");
  validate->add_flag("--inject-sign-flip", inject_flip)->group("");  // negative control

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  }

  try {
    if (eval->parsed())
      return run_eval(t_text, x_text, digits, method, sigma_text, terms_flag);
    if (bench->parsed())
      return run_bench(gamma_list, bench_digits, bench_methods, t_text, sigma_text, out_path);
    if (plot->parsed())
      return run_plot(plot_function, zmin_text, zmax_text, plot_points, plot_digits, out_path);
    return run_validate(validate_digits, seed, quick, inject_flip);
  } catch (const qprod::parse_error& e) {
    emit_error("parse", e.what());
  } catch (const qprod::iteration_error& e) {
    emit_error("iteration", e.what());
  } catch (const qprod::internal_error& e) {
    emit_error("internal", e.what());
  } catch (const std::invalid_argument& e) {  // domain and degenerate-input errors
    emit_error("domain", e.what());
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
  }
  return 2;
}
