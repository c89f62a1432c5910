#pragma once

// Input corpora and aggregated verification suites shared by the CLI and the
// acceptance runner. Each suite folds its per-case reports into one summary
// check per name (case count, failure count, first failing witness).

#include <cstdint>
#include <vector>

#include "certisqrt/verify.hpp"

namespace certisqrt {

struct SqrCase {
  Rational y;
  Rational eps;
};

/// Seeded rationals y in (1, 10^6) and eps in (10^-6, 1).
std::vector<SqrCase> random_sqr_corpus(std::size_t count, std::uint64_t seed);

/// Grid values y with lo < y <= hi, ascending. A sampled budget draws that many
/// distinct values (fewer if the range is smaller).
std::vector<FixVal> grid_inputs(const ProfileRef& profile, const Rational& lo, const Rational& hi,
                                const AssumptionBudget& budget);

/// Every representable nonzero A with exponent in [exp_lo, exp_hi], or a sample.
std::vector<FloatVal> float_inputs(const FloatProfileRef& profile, std::int64_t exp_lo, std::int64_t exp_hi,
                                   const AssumptionBudget& budget);

VerifyReport sqr_suite(const std::vector<SqrCase>& cases);
/// fsqr_exact seeded by the table with the minimal legal N.
VerifyReport fsqr_suite(const std::vector<FixVal>& ys, const FixVal& eps, const RootTable& table);
/// adjust_runs for every y and every n in [n_min, n_max].
VerifyReport adjust_suite(const std::vector<FixVal>& ys, const FixVal& eps, const RootTable& table,
                          std::int64_t n_min, std::int64_t n_max);
VerifyReport mix_suite(const std::vector<FixVal>& ys, const FixVal& eps, const RootTable& table);
VerifyReport float_suite(const std::vector<FloatVal>& as, const FixVal& eps, const RootTable& table);

}  // namespace certisqrt
