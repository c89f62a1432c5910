#include "certisqrt/suites.hpp"

#include <set>
#include <string>
#include <utility>

namespace certisqrt {

namespace {

const char* kNoError = "algorithm preconditions hold on the corpus";

void fold(Tally& tally, const VerifyReport& r) {
  tally.record("no_error", kNoError, true, [] { return Witness{}; });
  for (const Check& c : r.checks()) {
    tally.record(c.name, c.property, c.pass, [&] {
      Witness w{{"case", r.subject()}};
      w.insert(w.end(), c.witness.begin(), c.witness.end());
      return w;
    });
  }
}

void fold_error(Tally& tally, const std::string& subject, const Error& e) {
  tally.record("no_error", kNoError, false, [&] {
    return Witness{{"case", subject}, {"error", std::string(error_kind_name(e.kind()))}, {"message", e.what()}};
  });
}

template <typename Fn>
void run_case(Tally& tally, const std::string& subject, Fn&& fn) {
  try {
    fold(tally, fn());
  } catch (const Error& e) {
    fold_error(tally, subject, e);
  }
}

struct Rng {
  gmp_randclass gen{gmp_randinit_mt};
  explicit Rng(std::uint64_t seed) { gen.seed(static_cast<unsigned long>(seed)); }
  BigInt below(const BigInt& n) { return gen.get_z_range(n); }
};

}  // namespace

std::vector<SqrCase> random_sqr_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const BigInt million = 1000000;
  const BigInt two20 = BigInt(1) << 20;
  std::vector<SqrCase> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    BigInt b = rng.below(BigInt(1000)) + 1;
    BigInt a = rng.below(BigInt((million - 1) * b - 1)) + 1;
    Rational y = Rational(1) + Rational(a, b);
    BigInt r = rng.below(BigInt(two20 - 1)) + 1;
    Rational eps = (Rational(1) + Rational(BigInt(r * (million - 1)), two20)) / Rational(million);
    out.push_back({std::move(y), std::move(eps)});
  }
  return out;
}

std::vector<FixVal> grid_inputs(const ProfileRef& profile, const Rational& lo, const Rational& hi,
                                const AssumptionBudget& budget) {
  const Rational den(profile->delta_den);
  BigInt first = floor_of(lo * den) + 1;
  BigInt last = min(Rational(floor_of(hi * den)), Rational(profile->sup_count)).num();
  std::vector<FixVal> out;
  if (first > last) return out;
  const BigInt total = last - first + 1;
  if (!budget.samples || total <= static_cast<unsigned long>(*budget.samples)) {
    for (BigInt c = first; c <= last; ++c) out.emplace_back(c, profile);
    return out;
  }
  Rng rng(budget.seed);
  std::set<BigInt> picked;
  while (picked.size() < *budget.samples) picked.insert(BigInt(first + rng.below(total)));
  for (const BigInt& c : picked) out.emplace_back(c, profile);
  return out;
}

std::vector<FloatVal> float_inputs(const FloatProfileRef& profile, std::int64_t exp_lo, std::int64_t exp_hi,
                                   const AssumptionBudget& budget) {
  const FixProfile& fix = *profile->fix;
  // mantissa counts c with 1 < c delta < sup_T / base
  const BigInt first = fix.delta_den + 1;
  const BigInt last = divide_rounded(BigInt(fix.sup_count - 1), profile->base, Rounding::Down);
  std::vector<FloatVal> out;
  if (first > last || exp_lo > exp_hi) return out;
  const BigInt per_exp = last - first + 1;
  const BigInt total = per_exp * (exp_hi - exp_lo + 1);
  if (!budget.samples || total <= static_cast<unsigned long>(*budget.samples)) {
    for (std::int64_t e = exp_lo; e <= exp_hi; ++e) {
      for (BigInt c = first; c <= last; ++c) out.push_back(compose(FixVal(c, profile->fix), e, profile));
    }
    return out;
  }
  Rng rng(budget.seed);
  std::set<BigInt> picked;
  while (picked.size() < *budget.samples) picked.insert(rng.below(total));
  for (const BigInt& idx : picked) {
    BigInt q = idx / per_exp;
    BigInt r = idx % per_exp;
    out.push_back(compose(FixVal(BigInt(first + r), profile->fix), exp_lo + q.get_si(), profile));
  }
  return out;
}

VerifyReport sqr_suite(const std::vector<SqrCase>& cases) {
  Tally tally;
  for (const SqrCase& c : cases) {
    run_case(tally, "sqr y=" + c.y.str(), [&] { return check_sqr_annotations(sqr_exact(c.y, c.eps).trace, c.y, c.eps); });
  }
  return tally.to_report("sqr suite (" + std::to_string(cases.size()) + " cases)");
}

VerifyReport fsqr_suite(const std::vector<FixVal>& ys, const FixVal& eps, const RootTable& table) {
  Tally tally;
  for (const FixVal& y : ys) {
    run_case(tally, "fsqr y=" + y.str(), [&] {
      Rational sup = sup_fn(y, table).value();
      IterationCount n = min_legal_iterations(y.value(), eps.value(), sup);
      ExactRun run = fsqr_exact(y.value(), eps.value(), constant_seed(sup), n);
      return check_fsqr_annotations(run.trace, y.value(), eps.value(), sup);
    });
  }
  return tally.to_report("fsqr suite (" + std::to_string(ys.size()) + " inputs)");
}

VerifyReport adjust_suite(const std::vector<FixVal>& ys, const FixVal& eps, const RootTable& table,
                          std::int64_t n_min, std::int64_t n_max) {
  Tally tally;
  std::size_t cases = 0;
  for (const FixVal& y : ys) {
    for (std::int64_t n = n_min; n <= n_max; ++n, ++cases) {
      run_case(tally, "adjust y=" + y.str() + " n=" + std::to_string(n),
               [&] { return adjust_runs(y, eps, table, IterationCount(n)).report; });
    }
  }
  return tally.to_report("adjust suite (" + std::to_string(cases) + " runs)");
}

VerifyReport mix_suite(const std::vector<FixVal>& ys, const FixVal& eps, const RootTable& table) {
  Tally tally;
  for (const FixVal& y : ys) {
    run_case(tally, "mix y=" + y.str(), [&] { return check_mix_postcondition(mix_sqr(y, eps, table), y, eps); });
  }
  return tally.to_report("mix suite (" + std::to_string(ys.size()) + " inputs)");
}

VerifyReport float_suite(const std::vector<FloatVal>& as, const FixVal& eps, const RootTable& table) {
  Tally tally;
  for (const FloatVal& a : as) {
    std::string subject = a.is_zero() ? "flt A=0" : "flt A=" + a.man().str() + "*" + a.profile().base.get_str() + "^" + std::to_string(a.exp());
    run_case(tally, subject, [&] { return check_flt_postcondition(a, flt_sqr(a, eps, table).b, eps); });
  }
  return tally.to_report("float suite (" + std::to_string(as.size()) + " inputs)");
}

}  // namespace certisqrt
