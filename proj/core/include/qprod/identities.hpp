#ifndef QPROD_IDENTITIES_HPP
#define QPROD_IDENTITIES_HPP

#include <string>
#include <utility>
#include <vector>

#include "qprod/complex_value.hpp"
#include "qprod/precision.hpp"
#include "qprod/real.hpp"

namespace qprod::identities {

// Outcome of comparing the two sides of a classical identity, each side
// computed through a disjoint code path (series evaluator vs direct product
// vs theta sum).  pass <=> abs_discrepancy <= tolerance or
// rel_discrepancy <= tolerance; the tolerance leaves five digits of margin
// below the requested precision for accumulated rounding.
struct IdentityReport {
  std::string identity_id;
  ComplexValue lhs;
  ComplexValue rhs;
  Real abs_discrepancy;
  Real rel_discrepancy;
  Real tolerance;
  bool pass = false;
};

// Fault-injection hook for the validation suite's negative control: when
// set, one term of the pentagonal theta sum is negated, which must make
// check_pentagonal fail at any nonzero sample.
struct CheckOptions {
  bool flip_sign = false;
};

// R(1,x) = sum_m (-1)^m x^{m(3m+1)/2}  (m over all integers).
IdentityReport check_pentagonal(const ComplexValue& x, const PrecisionContext& ctx,
                                const CheckOptions& opts = {});

// The four theta-type identities, in order:
//   cube:                R(1,x)^3                    = sum_{m>=0} (-1)^m (2m+1) x^{m(m+1)/2}
//   triangular:          R(1,x^2)^2 / R(1,x)         = sum_{m>=0} x^{m(m+1)/2}
//   squares:             R(1,x^2)^5 / (R(1,x)^2 R(1,x^4)^2) = sum_{m in Z} x^{m^2}
//   alternating squares: R(1,x)^2 / R(1,x^2)         = sum_{m in Z} (-1)^m x^{m^2}
std::vector<IdentityReport> check_theta_identities(const ComplexValue& x,
                                                   const PrecisionContext& ctx);

// The two product-equals-sum identities over residue classes mod 5:
//   first:  prod_{n = 1,4 mod 5} (1-x^n)^{-1} = sum_m x^{m^2}   / ((1-x)...(1-x^m))
//   second: prod_{n = 2,3 mod 5} (1-x^n)^{-1} = sum_m x^{m(m+1)} / ((1-x)...(1-x^m))
std::pair<IdentityReport, IdentityReport> check_rogers_ramanujan(const ComplexValue& x,
                                                                 const PrecisionContext& ctx);

// R(-1,x) = R(1,x^2) / R(1,x).
IdentityReport check_minus1(const ComplexValue& x, const PrecisionContext& ctx);

// prod_{j=0}^{m-1} R(w^j t, x) = R(t^m, x^m) for w a primitive m-th root of unity.
IdentityReport check_root_of_unity(const ComplexValue& t, const ComplexValue& x, long m,
                                   const PrecisionContext& ctx);

// R(t,x) = prod_{j=1}^{m} R(t x^{j-m}, x^m): the factors split the product
// over residue classes of n mod m.  Inner t-arguments may exceed modulus 1;
// the evaluator's argument reduction absorbs them.
IdentityReport check_residue_split(const ComplexValue& t, const ComplexValue& x, long m,
                                   const PrecisionContext& ctx);

// R(|t|,|x|) <= |R(t,x)| <= R(-|t|,|x|), the lower bound applying when
// |t| <= 1/|x| (it degenerates to 0 at the zero locus).  The report's
// discrepancy is the violation magnitude, 0 when the chain holds.
IdentityReport check_trivial_bounds(const ComplexValue& t, const ComplexValue& x,
                                    const PrecisionContext& ctx);

// Deterministic sample plan for the full validation sweep.  digits sets the
// identity tolerance 10^{-digits} (evaluations run at digits+5 requested);
// quick restricts sample moduli to 0.8 and drops the near-unit-circle leg.
struct SuitePlan {
  long digits = 25;
  unsigned long long seed = 0;
  bool quick = false;
  bool flip_sign = false;
};

struct SuiteEntry {
  std::string label;
  IdentityReport report;
};

// Runs every check over 20 pseudo-random complex samples |x| <= 0.9 (with
// random phases, t moduli up to 1.5), then one real x = 0.99 leg at relaxed
// 10^-15 tolerance.  Entries appear in a fixed deterministic order.
std::vector<SuiteEntry> run_suite(const SuitePlan& plan);

}  // namespace qprod::identities

#endif
