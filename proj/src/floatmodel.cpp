#include "certisqrt/floatmodel.hpp"

#include <limits>

namespace certisqrt {

namespace {

constexpr std::int64_t kExponentLimit = std::int64_t{1} << 40;

std::int64_t to_exponent(const BigInt& v) {
  if (!v.fits_slong_p() || v.get_si() > kExponentLimit || v.get_si() < -kExponentLimit) {
    raise(ErrorKind::ResourceLimit, "exponent bound " + v.get_str() + " exceeds the supported range");
  }
  return v.get_si();
}

void check_exponent(std::int64_t e, const FloatProfile& p) {
  if (e < p.min_exponent() || e > p.max_exponent()) {
    raise(ErrorKind::ExponentRange, "exponent " + std::to_string(e) + " outside [" + std::to_string(p.min_exponent()) +
                                        ", " + std::to_string(p.max_exponent()) + "]");
  }
}

}  // namespace

std::int64_t FloatProfile::min_exponent() const {
  Rational inf = fix->inf();
  if (inf.is_integer()) {
    std::int64_t i = to_exponent(inf.num());
    return (i % 2 != 0) ? -i + 1 : -i;
  }
  return to_exponent(ceil_of(-inf));
}

std::int64_t FloatProfile::max_exponent() const { return to_exponent(floor_of(fix->sup())); }

VerifyReport check_float_profile(const FloatProfile& p) {
  VerifyReport report("float profile base " + p.base.get_str());
  if (!p.fix) {
    report.add("fix profile present", "float type is built over a fix-point type", false);
    return report;
  }
  VerifyReport fix = check_profile_assumptions(*p.fix, AssumptionBudget::sampled(0, 0));
  for (const Check& c : fix.checks()) report.add("fix." + c.name, c.property, c.pass, c.witness);
  const char* prop = "floating-point type model";
  Rational base = p.base_value();
  report.add("base >= 2", prop, p.base >= 2, {{"base", p.base.get_str()}});
  report.add("base in Int_T", prop, base <= p.fix->sup(), {{"base", p.base.get_str()}, {"sup_T", p.fix->sup().str()}});
  report.add("sup_T > base^2", "result mantissa sqrt(Man*base) stays below sup_T/base", p.fix->sup() > base * base,
             {{"sup_T", p.fix->sup().str()}, {"base^2", (base * base).str()}});
  report.add("inf_F > 2", prop, p.inf_f > Rational(2), {{"inf_F", p.inf_f.str()}});
  report.add("sup_F > 2", prop, p.sup_f > Rational(2), {{"sup_F", p.sup_f.str()}});
  return report;
}

FloatProfileRef make_float_profile(BigInt base, ProfileRef fix, Rational inf_f, Rational sup_f) {
  FloatProfile p{std::move(base), std::move(fix), std::move(inf_f), std::move(sup_f)};
  VerifyReport r = check_float_profile(p);
  for (const Check& c : r.checks()) {
    if (!c.pass) raise(ErrorKind::Domain, "float profile violates " + c.name);
  }
  p.min_exponent();
  p.max_exponent();
  return std::make_shared<const FloatProfile>(std::move(p));
}

FloatVal FloatVal::zero(FloatProfileRef profile) { return FloatVal(std::move(profile), std::nullopt, 0); }

const FixVal& FloatVal::man() const {
  if (!man_) raise(ErrorKind::Domain, "ZERO has no mantissa");
  return *man_;
}

std::int64_t FloatVal::exp() const {
  if (!man_) raise(ErrorKind::Domain, "ZERO has no exponent");
  return exp_;
}

bool operator==(const FloatVal& a, const FloatVal& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return *a.man_ == *b.man_ && a.exp_ == b.exp_ && a.profile_->base == b.profile_->base;
}

FloatVal compose(const FixVal& man, std::int64_t exp, const FloatProfileRef& profile) {
  if (!(man.profile() == *profile->fix)) raise(ErrorKind::Usage, "compose: mantissa profile differs from the float profile");
  Rational m = man.value();
  if (!(m > Rational(1) && m < profile->mantissa_limit())) {
    raise(ErrorKind::MantissaRange, "mantissa " + m.str() + " outside (1, " + profile->mantissa_limit().str() + ")");
  }
  check_exponent(exp, *profile);
  return FloatVal(profile, man, exp);
}

std::pair<FixVal, std::int64_t> decompose(const FloatVal& a) {
  if (a.is_zero()) raise(ErrorKind::Domain, "decompose of ZERO");
  return {a.man(), a.exp()};
}

Rational value_of(const FloatVal& a) {
  if (a.is_zero()) return Rational(0);
  return a.man().value() * pow_int(a.profile().base_value(), a.exp());
}

Encoded encode_rational(const Rational& q, const FloatProfileRef& profile) {
  if (q.sign() < 0) raise(ErrorKind::Domain, "encode_rational of negative value " + q.str());
  if (q.is_zero()) return {FloatVal::zero(profile), true};
  if (q > profile->sup_f) raise(ErrorKind::RangeOverflow, "encode_rational: " + q.str() + " exceeds sup_F");

  const Rational base = profile->base_value();
  const std::int64_t lo = profile->min_exponent();
  const std::int64_t hi = profile->max_exponent();
  auto out_of_range = [&] { raise(ErrorKind::RangeOverflow, "encode_rational: no representable exponent for " + q.str()); };

  // Find e with q / base^e in (1, base].
  std::int64_t e = 0;
  Rational m = q;
  while (m > base) {
    if (++e > hi) out_of_range();
    m /= base;
  }
  while (m <= Rational(1)) {
    if (--e < lo - 1) out_of_range();
    m *= base;
  }
  FixVal man = quantize(m, profile->fix);
  if (man.value() <= Rational(1)) {
    // Rounded onto 1: renormalize one exponent down, mantissa near base.
    --e;
    man = quantize(m * base, profile->fix);
  }
  if (e < lo || e > hi) out_of_range();
  FloatVal v = compose(man, e, profile);
  return {v, value_of(v) == q};
}

}  // namespace certisqrt
