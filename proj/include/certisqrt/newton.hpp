#pragma once

// Newton square-root algorithms, each returning its full per-iteration trace:
//
//   sqr_exact   until-loop from X := Y, exact arithmetic
//   isqr_exact  until-loop from a seed X := SUP(Y), exact arithmetic
//   fsqr_exact  for-loop of N iterations from SUP(Y), exact arithmetic
//   fix_sqr     for-loop of N iterations over the fix-point model
//   mix_sqr     fix_sqr with the minimal N for the table step
//   flt_sqr     mix_sqr on the mantissa, exponent halved
//
// The algorithms do not check their own postconditions; see verify.hpp.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "certisqrt/fixarith.hpp"
#include "certisqrt/floatmodel.hpp"
#include "certisqrt/lut.hpp"

namespace certisqrt {

struct IterationCount {
  std::int64_t value = 0;

  constexpr IterationCount() = default;
  constexpr explicit IterationCount(std::int64_t n) : value(n) {}
  friend constexpr auto operator<=>(IterationCount, IterationCount) = default;
};

/// One loop pass. For until-loops the last step is the exit test and is not
/// applied (x_after == x).
struct TraceStep {
  std::int64_t k = 0;
  Rational x;
  Rational correction;
  Rational x_after;
  bool applied = true;
};

struct Trace {
  std::string algorithm;
  Rational y;
  Rational eps;
  std::optional<Rational> stp;
  std::optional<Rational> seed;
  std::optional<IterationCount> n_planned;
  /// Set for fix-point traces: every x is a multiple of 1/grid_den.
  std::optional<BigInt> grid_den;
  std::vector<TraceStep> steps;
  Rational final_x;
  /// Extra named values (e.g. the exponent split of flt_sqr).
  std::vector<std::pair<std::string, std::string>> attributes;

  std::size_t applied_steps() const;
};

using SeedFn = std::function<Rational(const Rational&)>;

struct ExactRun {
  Rational x;
  Trace trace;
};

struct FixRun {
  FixVal x;
  Trace trace;
};

struct FloatRun {
  FloatVal b;
  Trace trace;
};

/// Flowchart: test D before applying it. CLoop: the do-while form that applies
/// D and then tests it; kept for comparison only.
enum class SqrForm { Flowchart, CLoop };

/// y >= 1, eps > 0.
ExactRun sqr_exact(const Rational& y, const Rational& eps, SqrForm form = SqrForm::Flowchart);

/// y > 1, eps > 0, sqrt(y) <= seed(y) <= y (SeedContract otherwise).
ExactRun isqr_exact(const Rational& y, const Rational& eps, const SeedFn& seed);

/// Smallest n >= 1 with 2^(n-1) * eps >= stp.
IterationCount min_iterations_for_step(const FixVal& stp, const FixVal& eps);

/// Smallest n >= 0 with 2^(n-1) * eps >= sup_y - sqrt(y).
IterationCount min_legal_iterations(const Rational& y, const Rational& eps, const Rational& sup_y);

enum class Budget { Enforce, Unchecked };

/// Exactly n steps X := X - (X^2 - Y)/(2X) from X := seed(y). With
/// Budget::Enforce an n below min_legal_iterations raises IterationBudget.
ExactRun fsqr_exact(const Rational& y, const Rational& eps, const SeedFn& seed, IterationCount n,
                    Budget budget = Budget::Enforce);

/// Seed from a root table, defined on rationals (see sup_exact).
SeedFn table_seed(const RootTable& table);
/// Seed returning a fixed value regardless of y.
SeedFn constant_seed(Rational value);

/// Preconditions checked up front: y on the grid with 1 < y <= sup_T,
/// 2 * SUP(y) <= sup_T, eps > 0, STEP for (table step, eps), and
/// n >= min_iterations_for_step.
FixRun fix_sqr(const FixVal& y, const FixVal& eps, const RootTable& table, IterationCount n);

/// eps >= 2 delta (2 + ceil(log2(stp/eps))) or EpsTooSmall; then fix_sqr with the minimal n.
FixRun mix_sqr(const FixVal& y, const FixVal& eps, const RootTable& table);

/// ZERO maps to ZERO. Otherwise Y := Man (even exponent) or Man (x) base (odd),
/// X := mix_sqr(Y), B := X * base^(Z/2). A result mantissa X <= 1 is renormalized
/// to (X * base, Z/2 - 1), which leaves the value unchanged.
FloatRun flt_sqr(const FloatVal& a, const FixVal& eps, const RootTable& table);

/// Largest grid eps with eps + delta/(2 sqrt(base)) < ulp/2, the mix_sqr
/// precondition, and stp a multiple of eps. NoFeasibleEps if none.
FixVal derive_eps_for_ulp(const Rational& ulp, const FloatProfile& profile, const FixVal& stp);

/// 2 delta (2 + ceil(log2(stp/eps))) <= eps.
bool mix_precondition_holds(const FixVal& stp, const FixVal& eps);

}  // namespace certisqrt
