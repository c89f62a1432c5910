#pragma once

// Exact rational arithmetic and decision procedures for comparing rationals
// against square roots. Nothing in here touches host floating point; every
// verdict produced elsewhere in the library bottoms out in these functions.

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "certisqrt/error.hpp"

namespace certisqrt {

using BigInt = mpz_class;

enum class Ordering { Less, Equal, Greater };

std::string_view ordering_name(Ordering o);

enum class Rounding { NearestEven, Up, Down };

enum class Strictness { NonStrict, Strict };

/// Canonical fraction num/den with den > 0 and gcd(|num|, den) = 1.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) : q_(static_cast<long>(v)) {}
  Rational(const BigInt& n) : q_(n) {}
  Rational(const BigInt& num, const BigInt& den);

  /// Accepts "n", "n/d", and plain decimals such as "-1.25".
  static Rational parse(std::string_view text);

  const BigInt& num() const { return q_.get_num(); }
  const BigInt& den() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return den() == 1; }
  Rational abs() const;
  /// Nearest-below double; display only.
  double approx() const { return q_.get_d(); }

  /// "num/den", always with the slash.
  std::string str() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

Rational pow_int(const Rational& base, std::int64_t exponent);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// num/den rounded to an integer in the given mode; den must be nonzero.
BigInt divide_rounded(const BigInt& num, const BigInt& den, Rounding mode);
BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

/// Decimal rendering for humans, rounded half-even to `digits` places.
std::string to_decimal(const Rational& q, int digits);

/// str() for fractions of moderate size; beyond that an approximate decimal
/// plus the bit length, so reports stay cheap for long exact runs.
std::string witness_str(const Rational& q);

// ---------------------------------------------------------------------------
// Square-root oracles

/// floor(sqrt(n)).
BigInt isqrt(const BigInt& n);
/// ceil(sqrt(n)).
BigInt ceil_sqrt(const BigInt& n);

bool is_perfect_square(const Rational& y);

/// Order of q relative to sqrt(y).
Ordering cmp_sqrt(const Rational& q, const Rational& y);

/// |q - sqrt(y)| <= bound (or < bound when strict).
bool within_of_sqrt(const Rational& q, const Rational& y, const Rational& bound,
                    Strictness strictness = Strictness::NonStrict);

struct SqrtEnclosure {
  Rational lo;
  Rational hi;
};

/// lo^2 <= y <= hi^2 and hi - lo <= 2^-bits.
SqrtEnclosure sqrt_enclosure(const Rational& y, unsigned bits);

/// Sign (-1, 0, 1) of c1 + c2 * sqrt(m), m >= 0.
int radical_sign(const Rational& c1, const Rational& c2, const Rational& m);

/// lhs < c1 + c2 * sqrt(m), m > 0.
bool decide_radical_lt(const Rational& lhs, const Rational& c1, const Rational& c2,
                       const Rational& m);

/// Order of sqrt(r) relative to c1 + c2 * sqrt(m).
Ordering cmp_sqrt_radical(const Rational& r, const Rational& c1, const Rational& c2,
                          const Rational& m);

/// Order of |a - sqrt(y)| relative to |b - sqrt(y)|.
Ordering compare_sqrt_distance(const Rational& a, const Rational& b, const Rational& y);

/// Smallest integer m with top - 2^m * scale <= sqrt(y), i.e. ceil(log2((top - sqrt(y)) / scale)).
/// Requires top > sqrt(y) and scale > 0.
std::int64_t ceil_log2_sqrt_gap(const Rational& top, const Rational& y, const Rational& scale);

/// Approximation of |q - sqrt(y)| for display; never used in a verdict.
Rational display_sqrt_distance(const Rational& q, const Rational& y);

}  // namespace certisqrt
