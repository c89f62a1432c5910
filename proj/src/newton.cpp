#include "certisqrt/newton.hpp"

#include <algorithm>
#include <memory>

namespace certisqrt {

namespace {

// Termination is proven for every admitted input; this only stops a runaway
// loop if that proof is ever falsified by a bug.
constexpr std::int64_t kLoopGuard = 100000;

void require_positive_eps(const Rational& eps) {
  if (eps.sign() <= 0) raise(ErrorKind::Domain, "eps must be positive, got " + eps.str());
}

void require_seed_sandwich(const Rational& y, const Rational& x) {
  if (cmp_sqrt(x, y) == Ordering::Less || x > y) {
    raise(ErrorKind::SeedContract, "seed " + x.str() + " violates sqrt(y) <= SUP(y) <= y for y = " + y.str());
  }
}

// (y - x^2) / (2x) with a single reduction: x = p/q, y = a/b gives
// (a q^2 - b p^2) / (2 b p q).
Rational newton_correction(const Rational& x, const Rational& y) {
  const BigInt& p = x.num();
  const BigInt& q = x.den();
  BigInt num = y.num() * q * q - y.den() * p * p;
  BigInt den = 2 * y.den() * p * q;
  return Rational(num, den);
}

}  // namespace

std::size_t Trace::applied_steps() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const TraceStep& s) { return s.applied; }));
}

ExactRun sqr_exact(const Rational& y, const Rational& eps, SqrForm form) {
  if (y < Rational(1)) raise(ErrorKind::Domain, "sqr_exact needs y >= 1, got " + y.str());
  require_positive_eps(eps);
  Trace t;
  t.algorithm = form == SqrForm::Flowchart ? "sqr" : "sqr_c_loop";
  t.y = y;
  t.eps = eps;
  const Rational half_eps = eps / Rational(2);
  Rational x = y;
  for (std::int64_t k = 0;; ++k) {
    if (k > kLoopGuard) raise(ErrorKind::InternalInvariant, "sqr_exact did not terminate");
    Rational d = newton_correction(x, y);
    bool done = d.abs() < half_eps;
    if (form == SqrForm::Flowchart && done) {
      t.steps.push_back({k, x, d, x, false});
      break;
    }
    Rational next = x + d;
    t.steps.push_back({k, x, d, next, true});
    x = std::move(next);
    if (done) break;
  }
  t.final_x = x;
  return {x, std::move(t)};
}

ExactRun isqr_exact(const Rational& y, const Rational& eps, const SeedFn& seed) {
  if (y <= Rational(1)) raise(ErrorKind::Domain, "isqr_exact needs y > 1, got " + y.str());
  require_positive_eps(eps);
  Rational x = seed(y);
  require_seed_sandwich(y, x);
  Trace t;
  t.algorithm = "isqr";
  t.y = y;
  t.eps = eps;
  t.seed = x;
  const Rational half_eps = eps / Rational(2);
  for (std::int64_t k = 0;; ++k) {
    if (k > kLoopGuard) raise(ErrorKind::InternalInvariant, "isqr_exact did not terminate");
    Rational ad = -newton_correction(x, y);
    if (ad < half_eps) {
      t.steps.push_back({k, x, ad, x, false});
      break;
    }
    Rational next = x - ad;
    t.steps.push_back({k, x, ad, next, true});
    x = std::move(next);
  }
  t.final_x = x;
  return {x, std::move(t)};
}

IterationCount min_iterations_for_step(const FixVal& stp, const FixVal& eps) {
  if (eps.count() <= 0) raise(ErrorKind::Domain, "min_iterations_for_step needs eps > 0");
  if (!same_profile(stp, eps)) raise(ErrorKind::Usage, "min_iterations_for_step: operands from different profiles");
  if (stp.count() < eps.count()) raise(ErrorKind::Domain, "min_iterations_for_step needs stp >= eps");
  std::int64_t n = 1;
  BigInt scaled = eps.count();  // 2^(n-1) * eps in grid counts
  while (scaled < stp.count()) {
    scaled *= 2;
    ++n;
  }
  return IterationCount(n);
}

IterationCount min_legal_iterations(const Rational& y, const Rational& eps, const Rational& sup_y) {
  require_positive_eps(eps);
  if (cmp_sqrt(sup_y, y) != Ordering::Greater) return IterationCount(0);
  std::int64_t m = ceil_log2_sqrt_gap(sup_y, y, eps);
  return IterationCount(std::max<std::int64_t>(0, 1 + m));
}

ExactRun fsqr_exact(const Rational& y, const Rational& eps, const SeedFn& seed, IterationCount n, Budget budget) {
  if (y <= Rational(1)) raise(ErrorKind::Domain, "fsqr_exact needs y > 1, got " + y.str());
  require_positive_eps(eps);
  if (n.value < 0) raise(ErrorKind::Domain, "iteration count must be non-negative");
  Rational x = seed(y);
  require_seed_sandwich(y, x);
  if (budget == Budget::Enforce) {
    IterationCount need = min_legal_iterations(y, eps, x);
    if (n < need) {
      raise(ErrorKind::IterationBudget, "fsqr_exact: n = " + std::to_string(n.value) + " below the legal minimum " +
                                            std::to_string(need.value));
    }
  }
  Trace t;
  t.algorithm = "fsqr";
  t.y = y;
  t.eps = eps;
  t.seed = x;
  t.n_planned = n;
  for (std::int64_t k = 0; k < n.value; ++k) {
    Rational ad = -newton_correction(x, y);
    Rational next = x - ad;
    t.steps.push_back({k, x, ad, next, true});
    x = std::move(next);
  }
  t.final_x = x;
  return {x, std::move(t)};
}

SeedFn table_seed(const RootTable& table) {
  auto shared = std::make_shared<const RootTable>(table);
  return [shared](const Rational& u) { return sup_exact(u, *shared); };
}

SeedFn constant_seed(Rational value) {
  return [value = std::move(value)](const Rational&) { return value; };
}

bool mix_precondition_holds(const FixVal& stp, const FixVal& eps) {
  // ceil(log2(stp/eps)) = n - 1 for the minimal n, so the bound is 2 delta (n + 1).
  IterationCount n = min_iterations_for_step(stp, eps);
  return eps.count() >= BigInt(2 * (n.value + 1));
}

FixRun fix_sqr(const FixVal& y, const FixVal& eps, const RootTable& table, IterationCount n) {
  const FixProfile& p = table.profile();
  if (!same_profile(y, table.stp()) || !same_profile(eps, table.stp())) {
    raise(ErrorKind::Usage, "fix_sqr: operands and table use different profiles");
  }
  if (y.count() <= p.delta_den || y.count() > p.sup_count) {
    raise(ErrorKind::Domain, "fix_sqr needs 1 < y <= sup_T, got " + y.str());
  }
  if (eps.count() <= 0) raise(ErrorKind::Domain, "fix_sqr needs eps > 0");
  VerifyReport step = validate_step(table.stp(), eps, p);
  if (!step.overall()) raise(ErrorKind::Domain, "fix_sqr: STEP violated (" + step.failed_names().front() + ")");
  IterationCount need = min_iterations_for_step(table.stp(), eps);
  if (n < need) {
    raise(ErrorKind::IterationBudget, "fix_sqr: n = " + std::to_string(n.value) + " below 2^(n-1) >= stp/eps minimum " +
                                          std::to_string(need.value));
  }
  FixVal x = sup_fn(y, table);
  if (BigInt(2 * x.count()) > p.sup_count) {
    raise(ErrorKind::Domain, "fix_sqr: 2 * SUP(y) = 2 * " + x.str() + " exceeds sup_T");
  }
  const FixVal two = FixVal::from_int(2, y.profile_ref());

  Trace t;
  t.algorithm = "fix_sqr";
  t.y = y.value();
  t.eps = eps.value();
  t.stp = table.stp().value();
  t.seed = x.value();
  t.n_planned = n;
  t.grid_den = p.delta_den;
  for (std::int64_t k = 0; k < n.value; ++k) {
    if (x.count() <= 0) raise(ErrorKind::InternalInvariant, "fix_sqr: iterate " + x.str() + " is not positive");
    FixVal next = fix_add(fix_div(x, two), fix_div(y, fix_add(x, x)));
    t.steps.push_back({k, x.value(), next.value() - x.value(), next.value(), true});
    x = std::move(next);
  }
  t.final_x = x.value();
  return {x, std::move(t)};
}

FixRun mix_sqr(const FixVal& y, const FixVal& eps, const RootTable& table) {
  if (eps.count() <= 0) raise(ErrorKind::Domain, "mix_sqr needs eps > 0");
  IterationCount n = min_iterations_for_step(table.stp(), eps);
  if (!mix_precondition_holds(table.stp(), eps)) {
    raise(ErrorKind::EpsTooSmall, "mix_sqr: eps = " + eps.str() + " below 2 delta (2 + ceil(log2(stp/eps))) = " +
                                      Rational(BigInt(2 * (n.value + 1)), eps.profile().delta_den).str());
  }
  FixRun run = fix_sqr(y, eps, table, n);
  run.trace.algorithm = "mix_sqr";
  return run;
}

FloatRun flt_sqr(const FloatVal& a, const FixVal& eps, const RootTable& table) {
  const FloatProfileRef& profile = a.profile_ref();
  Trace t;
  t.algorithm = "flt_sqr";
  t.eps = eps.value();
  if (a.is_zero()) {
    t.y = Rational(0);
    t.final_x = Rational(0);
    return {FloatVal::zero(profile), std::move(t)};
  }
  if (!(table.profile() == *profile->fix)) raise(ErrorKind::Usage, "flt_sqr: table built for a different profile");
  const auto [man, e] = decompose(a);
  const FixVal base = FixVal(BigInt(profile->base * profile->fix->delta_den), profile->fix);
  const bool odd = e % 2 != 0;
  const FixVal y = odd ? fix_mul(man, base) : man;
  const std::int64_t z = odd ? e - 1 : e;

  FixRun inner = mix_sqr(y, eps, table);
  FixVal x = inner.x;
  std::int64_t exp = z / 2;
  while (x.count() <= x.profile().delta_den) {
    x = fix_mul(x, base);
    --exp;
  }
  FloatVal b = compose(x, exp, profile);

  t = std::move(inner.trace);
  t.algorithm = "flt_sqr";
  t.attributes = {{"a.man", man.str()},
                  {"a.exp", std::to_string(e)},
                  {"Y", y.str()},
                  {"Z", std::to_string(z)},
                  {"b.man", b.man().str()},
                  {"b.exp", std::to_string(b.exp())}};
  return {b, std::move(t)};
}

FixVal derive_eps_for_ulp(const Rational& ulp, const FloatProfile& profile, const FixVal& stp) {
  if (ulp.sign() <= 0) raise(ErrorKind::Domain, "derive_eps_for_ulp needs ulp > 0");
  if (stp.count() <= 0) raise(ErrorKind::Domain, "derive_eps_for_ulp needs stp > 0");
  if (!stp.count().fits_ulong_p()) raise(ErrorKind::ResourceLimit, "step count too large to enumerate divisors");
  const unsigned long s = stp.count().get_ui();
  std::vector<unsigned long> divisors;
  for (unsigned long i = 1; i * i <= s; ++i) {
    if (s % i == 0) {
      divisors.push_back(i);
      if (i != s / i) divisors.push_back(s / i);
    }
  }
  std::sort(divisors.rbegin(), divisors.rend());

  const Rational base = profile.base_value();
  const Rational rad_coeff = -profile.fix->delta() / (Rational(2) * base);  // -delta/(2 sqrt(base)) = rad_coeff * sqrt(base)
  for (unsigned long c : divisors) {
    FixVal eps(BigInt(c), stp.profile_ref());
    // eps + delta/(2 sqrt(base)) < ulp/2
    bool accurate = decide_radical_lt(Rational(0), ulp / Rational(2) - eps.value(), rad_coeff, base);
    if (accurate && mix_precondition_holds(stp, eps)) return eps;
  }
  raise(ErrorKind::NoFeasibleEps, "no grid eps satisfies eps + delta/(2 sqrt(base)) < ulp/2 = " +
                                      (ulp / Rational(2)).str() + " together with the mix_sqr precondition");
}

}  // namespace certisqrt
