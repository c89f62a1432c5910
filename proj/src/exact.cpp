#include "certisqrt/exact.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

namespace certisqrt {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::RangeOverflow: return "RangeOverflow";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::MantissaRange: return "MantissaRange";
    case ErrorKind::ExponentRange: return "ExponentRange";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::SeedContract: return "SeedContract";
    case ErrorKind::IterationBudget: return "IterationBudget";
    case ErrorKind::EpsTooSmall: return "EpsTooSmall";
    case ErrorKind::NoFeasibleEps: return "NoFeasibleEps";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

std::string_view ordering_name(Ordering o) {
  switch (o) {
    case Ordering::Less: return "LESS";
    case Ordering::Equal: return "EQUAL";
    case Ordering::Greater: return "GREATER";
  }
  return "?";
}

namespace {

Ordering from_sign(int s) {
  return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
}

Rational pow2(std::int64_t m) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(m < 0 ? -m : m));
  return m < 0 ? Rational(BigInt(1), p) : Rational(p);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) raise(ErrorKind::Parse, "not a number: '" + std::string(whole) + "'");
  BigInt v(std::string(digits), 10);
  return (!s.empty() && s.front() == '-') ? BigInt(-v) : v;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) raise(ErrorKind::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) raise(ErrorKind::Parse, "empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) raise(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string_view mant = text;
  std::int64_t exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    BigInt e_val = parse_integer(text.substr(e + 1), text);
    if (!e_val.fits_slong_p() || ::abs(e_val) > 100000) raise(ErrorKind::Parse, "exponent too large in '" + std::string(text) + "'");
    exp10 = e_val.get_si();
    mant = text.substr(0, e);
  }
  bool negative = false;
  if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
    negative = mant.front() == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  if (auto dot = mant.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = mant.substr(0, dot);
    std::string_view frac_part = mant.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      raise(ErrorKind::Parse, "not a number: '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exp10 -= static_cast<std::int64_t>(frac_part.size());
  } else {
    if (!all_digits(mant)) raise(ErrorKind::Parse, "not a number: '" + std::string(text) + "'");
    digits = std::string(mant);
  }
  BigInt v(digits, 10);
  if (negative) v = -v;
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  return exp10 < 0 ? Rational(v, scale) : Rational(BigInt(v * scale));
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

std::string Rational::str() const { return num().get_str() + "/" + den().get_str(); }

Rational& Rational::operator+=(const Rational& o) { q_ += o.q_; return *this; }
Rational& Rational::operator-=(const Rational& o) { q_ -= o.q_; return *this; }
Rational& Rational::operator*=(const Rational& o) { q_ *= o.q_; return *this; }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) raise(ErrorKind::DivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational operator-(const Rational& a) {
  Rational r;
  r.q_ = -a.q_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.q_, b.q_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational pow_int(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base.is_zero()) raise(ErrorKind::DivisionByZero, "zero to a negative power");
    return Rational(1) / pow_int(base, -exponent);
  }
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

BigInt divide_rounded(const BigInt& num, const BigInt& den, Rounding mode) {
  if (den == 0) raise(ErrorKind::DivisionByZero, "division by zero");
  BigInt n = den < 0 ? BigInt(-num) : num;
  BigInt d = den < 0 ? BigInt(-den) : den;
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());  // 0 <= r < d
  switch (mode) {
    case Rounding::Down:
      return q;
    case Rounding::Up:
      return r == 0 ? q : BigInt(q + 1);
    case Rounding::NearestEven: {
      int c = cmp(BigInt(2 * r), d);
      if (c > 0) return q + 1;
      if (c < 0) return q;
      return mpz_odd_p(q.get_mpz_t()) ? BigInt(q + 1) : q;
    }
  }
  return q;
}

BigInt floor_of(const Rational& q) { return divide_rounded(q.num(), q.den(), Rounding::Down); }
BigInt ceil_of(const Rational& q) { return divide_rounded(q.num(), q.den(), Rounding::Up); }

std::string to_decimal(const Rational& q, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt scaled = divide_rounded(BigInt(q.num() * scale), q.den(), Rounding::NearestEven);
  bool negative = scaled < 0;
  std::string s = BigInt(negative ? BigInt(-scaled) : scaled).get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

std::string witness_str(const Rational& q) {
  const std::size_t bits = mpz_sizeinbase(q.num().get_mpz_t(), 2) + mpz_sizeinbase(q.den().get_mpz_t(), 2);
  if (bits <= 512) return q.str();
  std::ostringstream os;
  os.precision(17);
  os << "~" << q.approx() << " (" << bits << "-bit fraction)";
  return os.str();
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) raise(ErrorKind::Domain, "isqrt of negative integer " + n.get_str());
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

BigInt ceil_sqrt(const BigInt& n) {
  BigInt r = isqrt(n);
  return r * r == n ? r : BigInt(r + 1);
}

bool is_perfect_square(const Rational& y) {
  return y.sign() >= 0 && mpz_perfect_square_p(y.num().get_mpz_t()) &&
         mpz_perfect_square_p(y.den().get_mpz_t());
}

namespace {

// num/den against sqrt(y) for den > 0, without reducing num/den.
Ordering cmp_sqrt_raw(const BigInt& num, const BigInt& den, const Rational& y) {
  if (num < 0) return Ordering::Less;
  BigInt lhs = num * num * y.den();
  BigInt rhs = y.num() * den * den;
  return from_sign(cmp(lhs, rhs));
}

}  // namespace

Ordering cmp_sqrt(const Rational& q, const Rational& y) {
  if (y.sign() < 0) raise(ErrorKind::Domain, "cmp_sqrt of negative radicand " + y.str());
  return cmp_sqrt_raw(q.num(), q.den(), y);
}

bool within_of_sqrt(const Rational& q, const Rational& y, const Rational& bound,
                    Strictness strictness) {
  if (bound.sign() < 0) raise(ErrorKind::Domain, "negative bound " + bound.str());
  if (y.sign() < 0) raise(ErrorKind::Domain, "within_of_sqrt of negative radicand " + y.str());
  const BigInt den = q.den() * bound.den();
  const BigInt a = q.num() * bound.den();
  const BigInt b = bound.num() * q.den();
  Ordering lo = cmp_sqrt_raw(BigInt(a - b), den, y);
  Ordering hi = cmp_sqrt_raw(BigInt(a + b), den, y);
  if (strictness == Strictness::Strict) return lo == Ordering::Less && hi == Ordering::Greater;
  return lo != Ordering::Greater && hi != Ordering::Less;
}

SqrtEnclosure sqrt_enclosure(const Rational& y, unsigned bits) {
  if (y.sign() < 0) raise(ErrorKind::Domain, "sqrt_enclosure of negative radicand " + y.str());
  if (is_perfect_square(y)) {
    Rational r(isqrt(y.num()), isqrt(y.den()));
    return {r, r};
  }
  // One extra bit absorbs the floor/ceil slack of at most two units.
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits + 1);
  BigInt scaled_num = y.num() * scale * scale;
  BigInt lo_int = isqrt(divide_rounded(scaled_num, y.den(), Rounding::Down));
  BigInt hi_int = ceil_sqrt(divide_rounded(scaled_num, y.den(), Rounding::Up));
  return {Rational(lo_int, scale), Rational(hi_int, scale)};
}

int radical_sign(const Rational& c1, const Rational& c2, const Rational& m) {
  if (m.sign() < 0) raise(ErrorKind::Domain, "radical of negative number " + m.str());
  int s1 = c1.sign();
  int s2 = m.is_zero() ? 0 : c2.sign();
  if (s2 == 0) return s1;
  if (s1 >= 0 && s2 > 0) return 1;
  if (s1 <= 0 && s2 < 0) return -1;
  // Opposite signs: the term with the larger square wins.
  Rational lhs = c1 * c1;
  Rational rhs = c2 * c2 * m;
  if (lhs == rhs) return 0;
  return lhs > rhs ? s1 : s2;
}

bool decide_radical_lt(const Rational& lhs, const Rational& c1, const Rational& c2,
                       const Rational& m) {
  if (m.sign() <= 0) raise(ErrorKind::Domain, "decide_radical_lt needs m > 0, got " + m.str());
  return radical_sign(c1 - lhs, c2, m) > 0;
}

Ordering cmp_sqrt_radical(const Rational& r, const Rational& c1, const Rational& c2,
                          const Rational& m) {
  if (r.sign() < 0) raise(ErrorKind::Domain, "cmp_sqrt_radical of negative radicand " + r.str());
  int t = radical_sign(c1, c2, m);
  if (t < 0) return Ordering::Greater;
  if (t == 0) return r.is_zero() ? Ordering::Equal : Ordering::Greater;
  // Both sides non-negative: compare r with (c1 + c2 sqrt m)^2.
  return from_sign(radical_sign(r - c1 * c1 - c2 * c2 * m, Rational(-2) * c1 * c2, m));
}

Ordering compare_sqrt_distance(const Rational& a, const Rational& b, const Rational& y) {
  // (a - s)^2 - (b - s)^2 = (a - b)(a + b - 2s)
  int da = (a - b).sign();
  if (da == 0) return Ordering::Equal;
  Ordering mid = cmp_sqrt((a + b) / Rational(2), y);
  int dm = mid == Ordering::Less ? -1 : (mid == Ordering::Greater ? 1 : 0);
  return from_sign(da * dm);
}

std::int64_t ceil_log2_sqrt_gap(const Rational& top, const Rational& y, const Rational& scale) {
  if (scale.sign() <= 0) raise(ErrorKind::Domain, "ceil_log2_sqrt_gap needs scale > 0");
  if (cmp_sqrt(top, y) != Ordering::Greater) {
    raise(ErrorKind::Domain, "ceil_log2_sqrt_gap needs top > sqrt(y)");
  }
  auto holds = [&](std::int64_t m) { return cmp_sqrt(top - pow2(m) * scale, y) != Ordering::Greater; };
  // Gallop to a bracket (lo fails, hi holds), then bisect.
  std::int64_t lo = 0, hi = 0;
  if (holds(0)) {
    std::int64_t step = 1;
    lo = -1;
    while (holds(lo)) {
      hi = lo;
      lo -= step;
      step *= 2;
    }
  } else {
    std::int64_t step = 1;
    hi = 1;
    while (!holds(hi)) {
      lo = hi;
      hi += step;
      step *= 2;
    }
  }
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

Rational display_sqrt_distance(const Rational& q, const Rational& y) {
  SqrtEnclosure e = sqrt_enclosure(y, 64);
  return (q - (e.lo + e.hi) / Rational(2)).abs();
}

}  // namespace certisqrt
