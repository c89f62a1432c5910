#include "certisqrt/verify.hpp"

#include <algorithm>
#include <string>

namespace certisqrt {

namespace {

const char* kSqrInvariant = "loop invariant: sqrt(Y) <= X <= Y";
const char* kHalving = "|D(k+1)| < |D(k)|/2";
const char* kSqrPost = "|X - sqrt(Y)| <= Eps";
const char* kCap = "applied corrections <= 1 + ceil(log2((X0 - sqrt(Y))/Eps))";
const char* kFsqrProgress = "X - sqrt(Y) <= (SUP(Y) - sqrt(Y))/2^(N-K)";
const char* kFsqrLegal = "N >= 1 + log2((SUP(Y) - sqrt(Y))/Eps)";
const char* kFsqrPost = "|X - sqrt(Y)| <= Eps/2";
const char* kFixPost = "|X - sqrt(Y)| < Eps/2 + N*delta";
const char* kMixPost = "|X - sqrt(Y)| < Eps";
const char* kFltPost = "|B - sqrt(A)| < (Eps + delta/(2 sqrt(base))) * base^floor(Exp(A)/2)";
const char* kAdjust = "|x'_k - x''_k| <= k*delta";
const char* kRoot = "ROOT: root[v] - delta < sqrt(v) <= root[v]";
const char* kRound = "ROUND: round(u) - stp < u <= round(u), round(u) in Arg_Stp";

std::string yes_no(bool b) { return b ? "true" : "false"; }

bool in_sandwich(const Rational& x, const Rational& y) {
  return cmp_sqrt(x, y) != Ordering::Less && x <= y;
}

Rational boundary_value(const Trace& t, std::size_t j) {
  return j < t.steps.size() ? t.steps[j].x : t.final_x;
}

Rational floor_half_power(const Rational& base, std::int64_t e) {
  std::int64_t half = e >= 0 ? e / 2 : -((-e + 1) / 2);
  return pow_int(base, half);
}

}  // namespace

VerifyReport check_sqr_annotations(const Trace& t, const Rational& y, const Rational& eps) {
  if (t.algorithm != "sqr" && t.algorithm != "isqr") {
    raise(ErrorKind::Usage, "check_sqr_annotations needs an sqr or isqr trace, got '" + t.algorithm + "'");
  }
  if (t.algorithm == "isqr" && !t.seed) raise(ErrorKind::Usage, "isqr trace without a seed");
  VerifyReport report(t.algorithm + " y=" + witness_str(y) + " eps=" + witness_str(eps));

  for (const TraceStep& s : t.steps) {
    bool ok = in_sandwich(s.x, y);
    report.add("loop_invariant", kSqrInvariant, ok,
               {{"k", std::to_string(s.k)}, {"X", witness_str(s.x)}, {"Y", witness_str(y)}, {"X_vs_sqrtY", std::string(ordering_name(cmp_sqrt(s.x, y)))}});
  }

  if (y > Rational(1)) {
    for (std::size_t i = 0; i + 1 < t.steps.size(); ++i) {
      const Rational& d0 = t.steps[i].correction;
      const Rational& d1 = t.steps[i + 1].correction;
      report.add("halving", kHalving, d1.abs() * Rational(2) < d0.abs(),
                 {{"k", std::to_string(t.steps[i + 1].k)}, {"D(k)", witness_str(d0)}, {"D(k+1)", witness_str(d1)}});
    }
  }

  bool post = within_of_sqrt(t.final_x, y, eps);
  report.add("postcondition", kSqrPost, post,
             {{"X", witness_str(t.final_x)}, {"Eps", witness_str(eps)},
              {"strict", yes_no(within_of_sqrt(t.final_x, y, eps, Strictness::Strict))},
              {"error_display", to_decimal(display_sqrt_distance(t.final_x, y), 12)}});

  const std::size_t applied = t.applied_steps();
  const Rational top = t.algorithm == "isqr" ? *t.seed : y;
  if (y > Rational(1) && cmp_sqrt(top, y) == Ordering::Greater) {
    std::int64_t cap = std::max<std::int64_t>(0, 1 + ceil_log2_sqrt_gap(top, y, eps));
    report.add("iteration_cap", kCap, static_cast<std::int64_t>(applied) <= cap,
               {{"applied", std::to_string(applied)}, {"loop_tests", std::to_string(t.steps.size())}, {"cap", std::to_string(cap)}});
  } else {
    report.add("iteration_cap", kCap, applied == 0,
               {{"applied", std::to_string(applied)}, {"cap", "0"}, {"note", "X0 = sqrt(Y)"}});
  }
  return report;
}

VerifyReport check_fsqr_annotations(const Trace& t, const Rational& y, const Rational& eps, const Rational& sup_y) {
  if (t.algorithm != "fsqr") raise(ErrorKind::Usage, "check_fsqr_annotations needs an fsqr trace, got '" + t.algorithm + "'");
  if (!t.n_planned) raise(ErrorKind::Usage, "fsqr trace without a planned N");
  VerifyReport report("fsqr y=" + witness_str(y) + " eps=" + witness_str(eps));
  const std::int64_t n = t.n_planned->value;

  report.add("seed_sandwich", "sqrt(y) <= SUP(y) <= y", in_sandwich(sup_y, y), {{"SUP(Y)", witness_str(sup_y)}, {"Y", witness_str(y)}});
  Rational budget = pow_int(Rational(2), n - 1) * eps;
  bool legal = cmp_sqrt(sup_y - budget, y) != Ordering::Greater;
  report.add("n_legal", kFsqrLegal, legal, {{"N", std::to_string(n)}, {"2^(N-1)*Eps", witness_str(budget)}, {"SUP(Y)", witness_str(sup_y)}});
  report.add("steps_match_n", "for-loop runs exactly N times", static_cast<std::int64_t>(t.steps.size()) == n,
             {{"N", std::to_string(n)}, {"steps", std::to_string(t.steps.size())}});

  for (std::size_t j = 0; j <= t.steps.size(); ++j) {
    Rational x = boundary_value(t, j);
    report.add("loop_invariant", kSqrInvariant, in_sandwich(x, y), {{"j", std::to_string(j)}, {"X", witness_str(x)}});
    bool progress;
    if (j == 0) {
      progress = x <= sup_y;
    } else {
      // X - s <= (SUP - s)/2^j  <=>  (2^j X - SUP)/(2^j - 1) <= s
      Rational p = pow_int(Rational(2), static_cast<std::int64_t>(j));
      progress = cmp_sqrt((p * x - sup_y) / (p - Rational(1)), y) != Ordering::Greater;
    }
    report.add("progress", kFsqrProgress, progress, {{"j", std::to_string(j)}, {"X", witness_str(x)}, {"SUP(Y)", witness_str(sup_y)}});
  }

  Rational half = eps / Rational(2);
  report.add("postcondition", kFsqrPost, within_of_sqrt(t.final_x, y, half),
             {{"X", witness_str(t.final_x)}, {"Eps/2", witness_str(half)},
              {"strict", yes_no(within_of_sqrt(t.final_x, y, half, Strictness::Strict))},
              {"error_display", to_decimal(display_sqrt_distance(t.final_x, y), 12)}});
  return report;
}

VerifyReport check_fix_postcondition(const FixRun& run, const FixVal& y, const FixVal& eps, IterationCount n) {
  VerifyReport report("fix_sqr y=" + y.str() + " n=" + std::to_string(n.value));
  Rational bound = eps.value() / Rational(2) + Rational(n.value) * y.profile().delta();
  report.add("fix_postcondition", kFixPost, within_of_sqrt(run.x.value(), y.value(), bound, Strictness::Strict),
             {{"Y", y.str()}, {"X", run.x.str()}, {"bound", bound.str()},
              {"error_display", to_decimal(display_sqrt_distance(run.x.value(), y.value()), 12)}});
  return report;
}

VerifyReport check_mix_postcondition(const FixRun& run, const FixVal& y, const FixVal& eps) {
  VerifyReport report("mix_sqr y=" + y.str());
  report.add("mix_postcondition", kMixPost, within_of_sqrt(run.x.value(), y.value(), eps.value(), Strictness::Strict),
             {{"Y", y.str()}, {"X", run.x.str()}, {"Eps", eps.str()},
              {"error_display", to_decimal(display_sqrt_distance(run.x.value(), y.value()), 12)}});
  return report;
}

VerifyReport check_flt_postcondition(const FloatVal& a, const FloatVal& b, const FixVal& eps) {
  VerifyReport report("flt_sqr");
  if (a.is_zero()) {
    report.add("flt_postcondition", "sqrt(0) = 0", b.is_zero(), {{"B", value_of(b).str()}});
    return report;
  }
  const FloatProfile& fp = a.profile();
  const Rational base = fp.base_value();
  const Rational av = value_of(a);
  const Rational bv = value_of(b);
  const Rational scale = floor_half_power(base, a.exp());
  const Rational lin = eps.value() * scale;
  // delta/(2 sqrt(base)) * scale = coeff * sqrt(base)
  const Rational coeff = fp.fix->delta() * scale / (Rational(2) * base);
  bool above = cmp_sqrt_radical(av, bv - lin, -coeff, base) == Ordering::Greater;  // sqrt(A) > B - bound
  bool below = cmp_sqrt_radical(av, bv + lin, coeff, base) == Ordering::Less;      // sqrt(A) < B + bound
  report.add("flt_postcondition", kFltPost, above && below,
             {{"A", av.str()}, {"B", bv.str()}, {"Exp(A)", std::to_string(a.exp())},
              {"bound", "(" + eps.value().str() + " + " + fp.fix->delta().str() + "/(2 sqrt(" + fp.base.get_str() + "))) * " + scale.str()},
              {"error_display", to_decimal(display_sqrt_distance(bv, av), 12)}});
  return report;
}

AdjustResult adjust_runs(const FixVal& y, const FixVal& eps, const RootTable& table, IterationCount n) {
  FixRun fix = fix_sqr(y, eps, table, n);
  const Rational seed = sup_fn(y, table).value();
  ExactRun exact = fsqr_exact(y.value(), eps.value(), constant_seed(seed), n);

  AdjustResult out;
  out.report = VerifyReport("adjust y=" + y.str() + " n=" + std::to_string(n.value));
  const Rational delta = y.profile().delta();
  for (std::int64_t k = 0; k <= n.value; ++k) {
    auto j = static_cast<std::size_t>(k);
    Rational xe = boundary_value(exact.trace, j);
    FixVal xf = quantize(boundary_value(fix.trace, j), y.profile_ref());
    Rational gap = (xe - xf.value()).abs();
    Rational bound = Rational(k) * delta;
    out.report.add("adjustment_gap", kAdjust, gap <= bound,
                   {{"k", std::to_string(k)}, {"x_exact", xe.str()}, {"x_fix", xf.str()}, {"gap", gap.str()}, {"bound", bound.str()}});
    out.records.push_back({k, xe, xf, gap, bound});
  }
  Rational half = eps.value() / Rational(2);
  out.report.add("fsqr_postcondition", kFsqrPost, within_of_sqrt(exact.x, y.value(), half),
                 {{"X", exact.x.str()}, {"Eps/2", half.str()}});
  out.report.append(check_fix_postcondition(fix, y, eps, n));
  return out;
}

std::vector<ProbeRow> monotonicity_probe(const FixVal& y, const FixVal& eps, const RootTable& table,
                                         std::int64_t n_min, std::int64_t n_max) {
  if (n_min > n_max) raise(ErrorKind::Domain, "monotonicity_probe: empty iteration range");
  std::vector<ProbeRow> rows;
  const Rational delta = y.profile().delta();
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    FixRun run = fix_sqr(y, eps, table, IterationCount(n));
    ProbeRow row{n, run.x, eps.value() / Rational(2) + Rational(n) * delta, false, false,
                 display_sqrt_distance(run.x.value(), y.value())};
    row.within_bound = within_of_sqrt(run.x.value(), y.value(), row.bound, Strictness::Strict);
    if (!rows.empty()) {
      row.worse_than_previous = compare_sqrt_distance(run.x.value(), rows.back().x.value(), y.value()) == Ordering::Greater;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

VerifyReport check_table_properties(const RootTable& table, const FixProfile& profile, const FixVal& stp,
                                    const FixVal& eps) {
  VerifyReport report("table stp=" + stp.str());
  bool bound = table.profile() == profile && table.stp() == stp;
  report.add("table_binding", "table built for this profile and step", bound,
             {{"table_stp", table.stp().str()}, {"stp", stp.str()}});
  report.append(validate_step(stp, eps, profile));
  if (!bound) return report;

  Tally tally;
  const Rational delta = profile.delta();
  for (std::size_t i = 0; i < table.size(); ++i) {
    FixVal v = table.index_value(i);
    FixVal r = table.root_value(i);
    bool upper = cmp_sqrt(r.value(), v.value()) != Ordering::Less;
    bool lower = cmp_sqrt(r.value() - delta, v.value()) == Ordering::Less;
    tally.record("ROOT", kRoot, upper && lower, [&] {
      return Witness{{"v", v.str()}, {"root", r.str()}, {"sqrt(v) <= root", yes_no(upper)}, {"root - delta < sqrt(v)", yes_no(lower)}};
    });
  }
  if (stp.count() > 0) {
    const BigInt step = stp.count();
    for (BigInt c = profile.delta_den + 1; c <= profile.sup_count; ++c) {
      FixVal u(c, table.profile_ref());
      bool ok = false;
      std::string got;
      try {
        FixVal r = round_up_to_step(u, stp);
        got = r.str();
        bool in_arg = mpz_divisible_p(r.count().get_mpz_t(), step.get_mpz_t()) != 0 && r.count() > profile.delta_den &&
                      r.count() <= profile.sup_count;
        ok = in_arg && r.count() - step < c && c <= r.count();
      } catch (const Error& e) {
        got = std::string(error_kind_name(e.kind()));
      }
      tally.record("ROUND", kRound, ok, [&] { return Witness{{"u", u.str()}, {"round(u)", got}}; });
    }
  }
  report.append(tally.to_report(""));
  return report;
}

std::vector<BalanceRow> balance_sweep(const ProfileRef& profile, const FixVal& eps, const std::vector<FixVal>& candidates,
                                      std::size_t inputs_per_candidate) {
  std::vector<BalanceRow> rows;
  const BigInt first = profile->delta_den + 1;
  const BigInt total = profile->sup_count - profile->delta_den;
  BigInt stride = 1;
  if (inputs_per_candidate > 0 && total > static_cast<unsigned long>(inputs_per_candidate)) {
    stride = divide_rounded(total, BigInt(static_cast<unsigned long>(inputs_per_candidate)), Rounding::Down);
  }
  for (const FixVal& stp : candidates) {
    BalanceRow row{.stp = stp, .valid = false, .invalid_reason = {}, .table_size = {}, .n = {}, .predicted_bound = {},
                   .worst_error_display = {}, .worst_y = {}, .observed_within_predicted = false, .inputs = 0};
    VerifyReport step = validate_step(stp, eps, *profile);
    if (!step.overall()) {
      row.invalid_reason = step.failed_names().front();
      rows.push_back(std::move(row));
      continue;
    }
    row.valid = true;
    RootTable table = build_root_table(profile, stp);
    IterationCount n = min_iterations_for_step(stp, eps);
    row.table_size = divide_rounded(profile->sup_count, stp.count(), Rounding::Down);
    row.n = n;
    Rational predicted = stp.value() / pow_int(Rational(2), n.value) + Rational(n.value) * profile->delta();
    row.predicted_bound = predicted;
    row.observed_within_predicted = true;
    for (BigInt c = first; c <= profile->sup_count; c += stride) {
      FixVal y(c, profile);
      FixRun run = fix_sqr(y, eps, table, n);
      ++row.inputs;
      if (!within_of_sqrt(run.x.value(), y.value(), predicted)) row.observed_within_predicted = false;
      // display only; the verdict above is exact
      Rational err = display_sqrt_distance(run.x.value(), y.value());
      if (!row.worst_error_display || err > *row.worst_error_display) {
        row.worst_error_display = err;
        row.worst_y = y.value();
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace certisqrt
