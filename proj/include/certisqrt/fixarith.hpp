#pragma once

// Software model of a fix-point type T: the grid {n * delta : -inf <= n * delta <= sup}
// with exact add/sub/compare and round-half-even multiply/divide. Grid counts
// are arbitrary precision; no machine arithmetic participates in values.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "certisqrt/exact.hpp"
#include "certisqrt/report.hpp"

namespace certisqrt {

/// delta = 1/delta_den, inf = inf_count * delta, sup = sup_count * delta.
struct FixProfile {
  BigInt delta_den;
  BigInt inf_count;
  BigInt sup_count;

  Rational delta() const { return Rational(BigInt(1), delta_den); }
  Rational inf() const { return Rational(inf_count, delta_den); }
  Rational sup() const { return Rational(sup_count, delta_den); }

  friend bool operator==(const FixProfile& a, const FixProfile& b) {
    return a.delta_den == b.delta_den && a.inf_count == b.inf_count && a.sup_count == b.sup_count;
  }
};

using ProfileRef = std::shared_ptr<const FixProfile>;

/// Throws Domain naming the first violated assumption
/// (delta_den >= 3, inf > 2, sup > 2, all counts positive).
void require_valid(const FixProfile& profile);

/// Validated, shared profile.
ProfileRef make_fix_profile(BigInt delta_den, BigInt inf_count, BigInt sup_count);

/// Shares a profile without validating the fix-point assumptions; only positivity
/// of the fields is required. Used to probe candidate profiles.
ProfileRef share_unchecked(const FixProfile& profile);

class FixVal {
 public:
  /// Throws RangeOverflow when count * delta leaves [-inf, sup].
  FixVal(BigInt count, ProfileRef profile);

  static FixVal from_int(long value, ProfileRef profile);

  const BigInt& count() const { return count_; }
  const FixProfile& profile() const { return *profile_; }
  const ProfileRef& profile_ref() const { return profile_; }
  Rational value() const { return Rational(count_, profile_->delta_den); }
  int sign() const { return sgn(count_); }

  /// "count/delta_den", unreduced.
  std::string str() const;

  friend bool operator==(const FixVal& a, const FixVal& b);

 private:
  BigInt count_;
  ProfileRef profile_;
};

bool same_profile(const FixVal& a, const FixVal& b);

FixVal quantize(const Rational& q, const ProfileRef& profile, Rounding mode = Rounding::NearestEven);

FixVal fix_add(const FixVal& x, const FixVal& y);
FixVal fix_sub(const FixVal& x, const FixVal& y);
/// Correctly rounded product (nearest, ties to even count).
FixVal fix_mul(const FixVal& x, const FixVal& y);
/// Correctly rounded quotient (nearest, ties to even count).
FixVal fix_div(const FixVal& x, const FixVal& y);
Ordering fix_cmp(const FixVal& x, const FixVal& y);

/// nullopt samples means exhaustive over all grid pairs.
struct AssumptionBudget {
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;

  static AssumptionBudget exhaustive() { return {}; }
  static AssumptionBudget sampled(std::size_t n, std::uint64_t seed) { return {n, seed}; }
};

/// Structural assumptions on the profile plus the add/sub/mul/div contracts
/// checked over the budget. Never throws for a bad profile; failures are entries.
VerifyReport check_profile_assumptions(const FixProfile& profile, const AssumptionBudget& budget);

}  // namespace certisqrt
