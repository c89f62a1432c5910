#include "certisqrt/fixarith.hpp"

#include <functional>
#include <utility>

namespace certisqrt {

namespace {

void require_same_profile(const FixVal& x, const FixVal& y, const char* op) {
  if (!same_profile(x, y)) raise(ErrorKind::Usage, std::string(op) + ": operands belong to different fix-point profiles");
}

// Count on the grid nearest to num/den (counts already scaled by delta_den).
FixVal rounded(const BigInt& num, const BigInt& den, const ProfileRef& profile, const char* op) {
  // range is decided on the exact quotient, before rounding
  BigInt lo = -profile->inf_count * den, hi = profile->sup_count * den;
  bool out = den > 0 ? (num < lo || num > hi) : (num > lo || num < hi);
  if (out) {
    raise(ErrorKind::RangeOverflow, std::string(op) + ": result " + Rational(num, BigInt(den * profile->delta_den)).str() +
                                        " outside [-inf, sup]");
  }
  return FixVal(divide_rounded(num, den, Rounding::NearestEven), profile);
}

}  // namespace

void require_valid(const FixProfile& p) {
  if (p.delta_den <= 0 || p.inf_count <= 0 || p.sup_count <= 0) {
    raise(ErrorKind::Domain, "fix profile fields must be positive integers");
  }
  if (p.delta_den < 3) raise(ErrorKind::Domain, "fix profile violates 0 < delta < 1/2 (delta_den = " + p.delta_den.get_str() + ")");
  if (p.inf_count <= 2 * p.delta_den) raise(ErrorKind::Domain, "fix profile violates inf > 2 (inf = " + p.inf().str() + ")");
  if (p.sup_count <= 2 * p.delta_den) raise(ErrorKind::Domain, "fix profile violates sup > 2 (sup = " + p.sup().str() + ")");
}

ProfileRef make_fix_profile(BigInt delta_den, BigInt inf_count, BigInt sup_count) {
  FixProfile p{std::move(delta_den), std::move(inf_count), std::move(sup_count)};
  require_valid(p);
  return std::make_shared<const FixProfile>(std::move(p));
}

ProfileRef share_unchecked(const FixProfile& profile) {
  if (profile.delta_den <= 0 || profile.inf_count <= 0 || profile.sup_count <= 0) {
    raise(ErrorKind::Domain, "fix profile fields must be positive integers");
  }
  return std::make_shared<const FixProfile>(profile);
}

FixVal::FixVal(BigInt count, ProfileRef profile) : count_(std::move(count)), profile_(std::move(profile)) {
  if (!profile_) raise(ErrorKind::Usage, "fix value without a profile");
  if (count_ < -profile_->inf_count || count_ > profile_->sup_count) {
    raise(ErrorKind::RangeOverflow, "fix value " + Rational(count_, profile_->delta_den).str() + " outside [-inf, sup]");
  }
}

FixVal FixVal::from_int(long value, ProfileRef profile) {
  BigInt count = BigInt(value) * profile->delta_den;
  return FixVal(std::move(count), std::move(profile));
}

std::string FixVal::str() const { return count_.get_str() + "/" + profile_->delta_den.get_str(); }

bool operator==(const FixVal& a, const FixVal& b) { return same_profile(a, b) && a.count_ == b.count_; }

bool same_profile(const FixVal& a, const FixVal& b) {
  return a.profile_ref() == b.profile_ref() || a.profile() == b.profile();
}

FixVal quantize(const Rational& q, const ProfileRef& profile, Rounding mode) {
  BigInt n = divide_rounded(BigInt(q.num() * profile->delta_den), q.den(), mode);
  if (n < -profile->inf_count || n > profile->sup_count) {
    raise(ErrorKind::RangeOverflow, "quantize: " + q.str() + " rounds outside [-inf, sup]");
  }
  return FixVal(std::move(n), profile);
}

FixVal fix_add(const FixVal& x, const FixVal& y) {
  require_same_profile(x, y, "fix_add");
  BigInt n = x.count() + y.count();
  if (n < -x.profile().inf_count || n > x.profile().sup_count) raise(ErrorKind::RangeOverflow, "fix_add: " + x.str() + " + " + y.str() + " overflows");
  return FixVal(std::move(n), x.profile_ref());
}

FixVal fix_sub(const FixVal& x, const FixVal& y) {
  require_same_profile(x, y, "fix_sub");
  BigInt n = x.count() - y.count();
  if (n < -x.profile().inf_count || n > x.profile().sup_count) raise(ErrorKind::RangeOverflow, "fix_sub: " + x.str() + " - " + y.str() + " overflows");
  return FixVal(std::move(n), x.profile_ref());
}

FixVal fix_mul(const FixVal& x, const FixVal& y) {
  require_same_profile(x, y, "fix_mul");
  // (a d^-1)(b d^-1) = (ab / d) d^-1
  return rounded(BigInt(x.count() * y.count()), x.profile().delta_den, x.profile_ref(), "fix_mul");
}

FixVal fix_div(const FixVal& x, const FixVal& y) {
  require_same_profile(x, y, "fix_div");
  if (y.count() == 0) raise(ErrorKind::DivisionByZero, "fix_div: " + x.str() + " / 0");
  // (a d^-1) / (b d^-1) = (a d / b) d^-1
  return rounded(BigInt(x.count() * x.profile().delta_den), y.count(), x.profile_ref(), "fix_div");
}

Ordering fix_cmp(const FixVal& x, const FixVal& y) {
  require_same_profile(x, y, "fix_cmp");
  int c = cmp(x.count(), y.count());
  return c < 0 ? Ordering::Less : (c > 0 ? Ordering::Greater : Ordering::Equal);
}

namespace {

const char* kProp = "fix-point arithmetic model";

bool in_range(const Rational& v, const FixProfile& p) { return v >= -p.inf() && v <= p.sup(); }

bool on_grid(const Rational& v, const FixProfile& p) { return (v * Rational(p.delta_den)).is_integer(); }

// Checks one correctly-rounded operation against the exact result `exact`.
void check_rounded(Tally& tally, const std::string& op, const FixVal& x, const FixVal& y, const Rational& exact,
                   const std::function<FixVal()>& run) {
  const FixProfile& p = x.profile();
  Rational half_delta = p.delta() / Rational(2);
  auto witness = [&](const std::string& got) {
    return Witness{{"x", x.str()}, {"y", y.str()}, {"exact", exact.str()}, {"result", got}};
  };
  if (!in_range(exact, p)) {
    bool raised = false;
    try {
      run();
    } catch (const Error& e) {
      raised = e.kind() == ErrorKind::RangeOverflow;
    }
    tally.record(op + ".overflow_raised", "out-of-range result raises RangeOverflow", raised,
                 [&] { return witness("no RangeOverflow"); });
    return;
  }
  std::optional<FixVal> r;
  try {
    r = run();
  } catch (const Error& e) {
    tally.record(op + ".defined_in_range", "in-range result is defined", false,
                 [&] { return witness(std::string(error_kind_name(e.kind()))); });
    return;
  }
  Rational err = (r->value() - exact).abs();
  tally.record(op + ".error_le_half_delta", "|result - exact| <= delta/2", err <= half_delta,
               [&] { return witness(r->str()); });
  if (on_grid(exact, p)) {
    tally.record(op + ".exact_when_representable", "exact result on the grid is returned unchanged",
                 r->value() == exact, [&] { return witness(r->str()); });
  }
  bool tie = (exact * Rational(p.delta_den) * Rational(2)).is_integer() && !on_grid(exact, p);
  if (!tie) {
    tally.record(op + ".strict_off_tie", "|result - exact| < delta/2 unless exact is a grid midpoint",
                 err < half_delta, [&] { return witness(r->str()); });
  }
}

void check_pair(Tally& tally, const FixVal& x, const FixVal& y) {
  const FixProfile& p = x.profile();
  auto exact_or_overflow = [&](const std::string& name, const Rational& exact, const std::function<FixVal()>& run) {
    bool ok = false;
    std::string got;
    if (in_range(exact, p)) {
      try {
        FixVal r = run();
        ok = r.value() == exact;
        got = r.str();
      } catch (const Error& e) {
        got = std::string(error_kind_name(e.kind()));
      }
    } else {
      try {
        got = run().str();
      } catch (const Error& e) {
        ok = e.kind() == ErrorKind::RangeOverflow;
        got = std::string(error_kind_name(e.kind()));
      }
    }
    tally.record(name, "exact unless RangeOverflow", ok,
                 [&] { return Witness{{"x", x.str()}, {"y", y.str()}, {"exact", exact.str()}, {"result", got}}; });
  };
  exact_or_overflow("add.exact", x.value() + y.value(), [&] { return fix_add(x, y); });
  exact_or_overflow("sub.exact", x.value() - y.value(), [&] { return fix_sub(x, y); });
  check_rounded(tally, "mul", x, y, x.value() * y.value(), [&] { return fix_mul(x, y); });
  if (y.count() == 0) {
    bool raised = false;
    try {
      fix_div(x, y);
    } catch (const Error& e) {
      raised = e.kind() == ErrorKind::DivisionByZero;
    }
    tally.record("div.by_zero_raised", "division by zero raises DivisionByZero", raised,
                 [&] { return Witness{{"x", x.str()}}; });
  } else {
    check_rounded(tally, "div", x, y, x.value() / y.value(), [&] { return fix_div(x, y); });
  }
  Ordering c = fix_cmp(x, y);
  Ordering expect = x.value() < y.value() ? Ordering::Less : (y.value() < x.value() ? Ordering::Greater : Ordering::Equal);
  tally.record("cmp.exact", "comparison equals exact comparison", c == expect,
               [&] { return Witness{{"x", x.str()}, {"y", y.str()}, {"result", std::string(ordering_name(c))}}; });
}

}  // namespace

VerifyReport check_profile_assumptions(const FixProfile& p, const AssumptionBudget& budget) {
  VerifyReport report("fix profile " + p.delta_den.get_str() + "/" + p.inf_count.get_str() + "/" + p.sup_count.get_str());
  bool positive = p.delta_den > 0 && p.inf_count > 0 && p.sup_count > 0;
  Witness fields{{"delta_den", p.delta_den.get_str()}, {"inf_count", p.inf_count.get_str()},
                 {"sup_count", p.sup_count.get_str()}};
  report.add("fields_positive", "profile fields are positive integers", positive, fields);
  if (!positive) return report;

  report.add("inf > 2", kProp, p.inf() > Rational(2), {{"inf", p.inf().str()}});
  report.add("sup > 2", kProp, p.sup() > Rational(2), {{"sup", p.sup().str()}});
  report.add("0 < delta < 1/2", kProp, p.delta() < Rational(1, 2) && p.delta().sign() > 0,
             {{"delta", p.delta().str()}});
  // Both hold by construction of the grid (delta = 1/delta_den); recorded for completeness.
  report.add("1/delta is a natural number", kProp, (Rational(1) / p.delta()).is_integer(),
             {{"1/delta", (Rational(1) / p.delta()).str()}});
  report.add("integers in range are grid points", kProp, on_grid(Rational(1), p),
             {{"delta_den", p.delta_den.get_str()}});

  ProfileRef ref = share_unchecked(p);
  Tally tally;
  if (!budget.samples) {
    for (BigInt a = -p.inf_count; a <= p.sup_count; ++a) {
      FixVal x(a, ref);
      for (BigInt b = -p.inf_count; b <= p.sup_count; ++b) check_pair(tally, x, FixVal(b, ref));
    }
  } else {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(static_cast<unsigned long>(budget.seed));
    BigInt span = p.inf_count + p.sup_count + 1;
    for (std::size_t i = 0; i < *budget.samples; ++i) {
      BigInt a = rng.get_z_range(span) - p.inf_count;
      BigInt b = rng.get_z_range(span) - p.inf_count;
      check_pair(tally, FixVal(a, ref), FixVal(b, ref));
    }
  }
  report.append(tally.to_report(""));
  return report;
}

}  // namespace certisqrt
