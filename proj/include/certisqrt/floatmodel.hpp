#pragma once

// Software model of a floating-point type F over a fix-point type T: positive
// values are (mantissa, exponent) pairs with value man * base^exp, mantissa a
// grid value in (1, sup_T / base).

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>

#include "certisqrt/fixarith.hpp"

namespace certisqrt {

struct FloatProfile {
  BigInt base;
  ProfileRef fix;
  Rational inf_f;
  Rational sup_f;

  Rational base_value() const { return Rational(base); }
  /// Smallest legal exponent; excludes -inf_T itself when inf_T is an odd integer.
  std::int64_t min_exponent() const;
  std::int64_t max_exponent() const;
  /// sup_T / base, the exclusive upper end of the mantissa range.
  Rational mantissa_limit() const { return fix->sup() / base_value(); }
};

using FloatProfileRef = std::shared_ptr<const FloatProfile>;

/// base >= 2 and integral within T, sup_T > base^2, inf_F > 2, sup_F > 2, plus the fix profile.
VerifyReport check_float_profile(const FloatProfile& profile);

/// Throws Domain with the first failed check.
FloatProfileRef make_float_profile(BigInt base, ProfileRef fix, Rational inf_f, Rational sup_f);

class FloatVal {
 public:
  static FloatVal zero(FloatProfileRef profile);

  bool is_zero() const { return !man_.has_value(); }
  /// Throws Domain for ZERO.
  const FixVal& man() const;
  std::int64_t exp() const;
  const FloatProfile& profile() const { return *profile_; }
  const FloatProfileRef& profile_ref() const { return profile_; }

  friend bool operator==(const FloatVal& a, const FloatVal& b);

 private:
  friend FloatVal compose(const FixVal& man, std::int64_t exp, const FloatProfileRef& profile);
  FloatVal(FloatProfileRef profile, std::optional<FixVal> man, std::int64_t exp)
      : profile_(std::move(profile)), man_(std::move(man)), exp_(exp) {}

  FloatProfileRef profile_;
  std::optional<FixVal> man_;
  std::int64_t exp_ = 0;
};

/// Throws MantissaRange unless 1 < man < sup_T/base, ExponentRange unless exp is legal.
FloatVal compose(const FixVal& man, std::int64_t exp, const FloatProfileRef& profile);

/// Throws Domain for ZERO.
std::pair<FixVal, std::int64_t> decompose(const FloatVal& a);

Rational value_of(const FloatVal& a);

struct Encoded {
  FloatVal value;
  bool exact;
};

/// Normalizes q > 0 to the mantissa range (1, base] and rounds the mantissa to
/// the nearest grid value. Throws RangeOverflow when no legal exponent exists
/// or q exceeds sup_F.
Encoded encode_rational(const Rational& q, const FloatProfileRef& profile);

}  // namespace certisqrt
