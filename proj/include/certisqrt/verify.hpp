#pragma once

// Post-hoc checking of the correctness annotations on concrete runs. Every
// verdict is exact; the error magnitudes in sweep rows are display-only
// approximations from a 64-bit square-root enclosure.

#include <cstdint>
#include <optional>
#include <vector>

#include "certisqrt/newton.hpp"
#include "certisqrt/report.hpp"

namespace certisqrt {

/// For traces of sqr_exact (or isqr_exact): loop invariant sqrt(Y) <= X <= Y at
/// every boundary, halving of consecutive corrections, the final bound
/// |X - sqrt(Y)| <= eps, and the cap max(0, 1 + ceil(log2((top - sqrt(y))/eps)))
/// on applied corrections, where top is y (sqr) or the seed (isqr).
VerifyReport check_sqr_annotations(const Trace& trace, const Rational& y, const Rational& eps);

/// For fsqr_exact traces: invariant, progress X_j - sqrt(Y) <= (SUP(Y) - sqrt(Y))/2^j,
/// legality of N, and |X - sqrt(Y)| <= eps/2.
VerifyReport check_fsqr_annotations(const Trace& trace, const Rational& y, const Rational& eps,
                                    const Rational& sup_y);

/// |x - sqrt(y)| < eps/2 + n delta.
VerifyReport check_fix_postcondition(const FixRun& run, const FixVal& y, const FixVal& eps, IterationCount n);
/// |x - sqrt(y)| < eps.
VerifyReport check_mix_postcondition(const FixRun& run, const FixVal& y, const FixVal& eps);
/// |B - sqrt(A)| < (eps + delta/(2 sqrt(base))) * base^floor(Exp(A)/2), decided exactly.
VerifyReport check_flt_postcondition(const FloatVal& a, const FloatVal& b, const FixVal& eps);

struct AdjustmentRecord {
  std::int64_t k = 0;
  Rational x_exact;
  FixVal x_fix;
  Rational gap;
  Rational bound;
};

struct AdjustResult {
  std::vector<AdjustmentRecord> records;
  VerifyReport report;
};

/// Runs fsqr_exact and fix_sqr in lockstep from the same seed with the same n and
/// checks |x'_k - x''_k| <= k delta for every k plus the final fix_sqr bound.
AdjustResult adjust_runs(const FixVal& y, const FixVal& eps, const RootTable& table, IterationCount n);

struct ProbeRow {
  std::int64_t n = 0;
  FixVal x;
  Rational bound;
  bool within_bound = false;
  /// error(n) > error(n - 1); false on the first row.
  bool worse_than_previous = false;
  /// Display only.
  Rational error_display;
};

/// fix_sqr for every n in [n_min, n_max]; a report, not an assertion that error grows.
std::vector<ProbeRow> monotonicity_probe(const FixVal& y, const FixVal& eps, const RootTable& table,
                                         std::int64_t n_min, std::int64_t n_max);

/// ROOT over every index, ROUND over every grid u in (1, sup_T], and STEP.
VerifyReport check_table_properties(const RootTable& table, const FixProfile& profile, const FixVal& stp,
                                    const FixVal& eps);

struct BalanceRow {
  FixVal stp;
  bool valid = false;
  std::string invalid_reason;
  std::optional<BigInt> table_size;
  std::optional<IterationCount> n;
  std::optional<Rational> predicted_bound;
  /// Display only.
  std::optional<Rational> worst_error_display;
  std::optional<Rational> worst_y;
  bool observed_within_predicted = false;
  std::size_t inputs = 0;
};

/// For every candidate step: table size sup_T/stp, minimal n, predicted bound
/// stp/2^n + n delta, and the worst observed fix_sqr error over the inputs.
/// inputs_per_candidate == 0 scans every grid y in (1, sup_T]; otherwise an
/// evenly spaced subset of that size.
std::vector<BalanceRow> balance_sweep(const ProfileRef& profile, const FixVal& eps,
                                      const std::vector<FixVal>& stp_candidates,
                                      std::size_t inputs_per_candidate = 0);

}  // namespace certisqrt
