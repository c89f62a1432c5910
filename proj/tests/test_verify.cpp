#include <doctest.h>

#include <algorithm>

#include "certisqrt/suites.hpp"
#include "certisqrt/verify.hpp"
#include "helpers.hpp"

using namespace certisqrt;
using testing_support::demo_fix;
using testing_support::demo_float;
using testing_support::demo_table;
using testing_support::dv;
using testing_support::R;

namespace {

std::string witness(const Check& c, const std::string& key) {
  for (const auto& [k, v] : c.witness) {
    if (k == key) return v;
  }
  return "";
}

std::vector<std::string> unique_failures(const VerifyReport& r) {
  auto names = r.failed_names();
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

}  // namespace

TEST_CASE("sqr annotations on reference runs") {
  ExactRun run = sqr_exact(R(2), R(1, 100));
  VerifyReport r = check_sqr_annotations(run.trace, R(2), R(1, 100));
  CHECK(r.overall());
  const Check* cap = r.find("iteration_cap");
  REQUIRE(cap != nullptr);
  CHECK(witness(*cap, "cap") == std::to_string(oracle::kSqr2CentiCap));
  CHECK(witness(*cap, "applied") == std::to_string(oracle::kSqr2CentiApplied));

  ExactRun one = sqr_exact(R(1), R(1));
  VerifyReport r1 = check_sqr_annotations(one.trace, R(1), R(1));
  CHECK(r1.overall());
  CHECK(r1.find("halving") == nullptr);
  CHECK(r1.find("postcondition") != nullptr);

  ExactRun is = isqr_exact(R(3), R(1, 10), constant_seed(R(3)));
  CHECK(check_sqr_annotations(is.trace, R(3), R(1, 10)).overall());
}

TEST_CASE("sqr annotations reject foreign traces") {
  ExactRun f = fsqr_exact(R(3), R(1, 4), constant_seed(R(174, 100)), IterationCount(1));
  CHECK_THROWS_AS(check_sqr_annotations(f.trace, R(3), R(1, 4)), Error);
  ExactRun s = sqr_exact(R(3), R(1, 4));
  CHECK_THROWS_AS(check_fsqr_annotations(s.trace, R(3), R(1, 4), R(3)), Error);
}

TEST_CASE("tampered sqr trace fails only the invariant") {
  ExactRun run = sqr_exact(R(2), R(1, 100));
  Trace t = run.trace;
  t.steps[1].x = R(1);  // below sqrt(2); corrections untouched
  VerifyReport r = check_sqr_annotations(t, R(2), R(1, 100));
  CHECK(unique_failures(r) == std::vector<std::string>{"loop_invariant"});
  bool has_k = false;
  for (const Check& c : r.checks()) {
    if (!c.pass) has_k = witness(c, "k") == "1";
  }
  CHECK(has_k);
}

TEST_CASE("fsqr annotations") {
  ExactRun run = fsqr_exact(R(3), R(1, 4), constant_seed(R(174, 100)), IterationCount(1));
  CHECK(check_fsqr_annotations(run.trace, R(3), R(1, 4), R(174, 100)).overall());
  ExactRun zero = fsqr_exact(R(4), R(1, 4), constant_seed(R(2)), IterationCount(0));
  CHECK(check_fsqr_annotations(zero.trace, R(4), R(1, 4), R(2)).overall());

  ExactRun forced = fsqr_exact(R(2), R(1, 100), constant_seed(R(2)), IterationCount(1), Budget::Unchecked);
  VerifyReport bad = check_fsqr_annotations(forced.trace, R(2), R(1, 100), R(2));
  CHECK_FALSE(bad.overall());
  auto failed = unique_failures(bad);
  CHECK(std::find(failed.begin(), failed.end(), "n_legal") != failed.end());
  CHECK(std::find(failed.begin(), failed.end(), "postcondition") != failed.end());
  CHECK(std::find(failed.begin(), failed.end(), "progress") == failed.end());
}

TEST_CASE("fix, mix and float postconditions") {
  FixRun fix = fix_sqr(dv(300), dv(25), demo_table(), IterationCount(1));
  VerifyReport rf = check_fix_postcondition(fix, dv(300), dv(25), IterationCount(1));
  CHECK(rf.overall());
  CHECK(witness(rf.checks().front(), "bound") == "27/200");
  CHECK(check_mix_postcondition(mix_sqr(dv(200), dv(25), demo_table()), dv(200), dv(25)).overall());

  FloatVal a = compose(dv(150), 3, demo_float());
  CHECK(check_flt_postcondition(a, flt_sqr(a, dv(25), demo_table()).b, dv(25)).overall());
  FloatVal off = compose(dv(360), 1, demo_float());  // 7.20, far from sqrt(12)
  CHECK_FALSE(check_flt_postcondition(a, off, dv(25)).overall());
  FloatVal z = FloatVal::zero(demo_float());
  CHECK(check_flt_postcondition(z, z, dv(25)).overall());
  CHECK_FALSE(check_flt_postcondition(z, a, dv(25)).overall());
}

TEST_CASE("run adjustment at y = 3") {
  AdjustResult res = adjust_runs(dv(300), dv(25), demo_table(), IterationCount(1));
  CHECK(res.report.overall());
  REQUIRE(res.records.size() == 2);
  CHECK(res.records[0].gap == R(0));
  CHECK(res.records[1].x_exact == R(oracle::kFsqr3Seed174N1));
  CHECK(res.records[1].x_fix == dv(173));
  CHECK(res.records[1].gap == R(oracle::kAdjustGap3));
  CHECK(res.records[1].bound == R(1, 100));

  AdjustResult four = adjust_runs(dv(400), dv(25), demo_table(), IterationCount(5));
  for (const AdjustmentRecord& rec : four.records) CHECK(rec.gap == R(0));
}

TEST_CASE("run adjustment over the whole demo grid, eps 1/4 and 1/2") {
  auto ys = grid_inputs(demo_fix(), R(1), R(16), AssumptionBudget::exhaustive());
  CHECK(ys.size() == 1500);
  VerifyReport quarter = adjust_suite(ys, dv(25), demo_table(), 1, 3);
  CHECK(quarter.overall());
  RootTable half_table = build_root_table(demo_fix(), dv(50));
  VerifyReport half = adjust_suite(ys, dv(50), half_table, 1, 3);
  CHECK(half.overall());
}

TEST_CASE("monotonicity probe") {
  auto two = monotonicity_probe(dv(200), dv(25), demo_table(), 1, 6);
  CHECK(two.size() == 6);
  for (const ProbeRow& row : two) {
    CHECK(row.within_bound);
    CHECK_FALSE(row.worse_than_previous);
  }
  auto four = monotonicity_probe(dv(400), dv(25), demo_table(), 1, 4);
  for (const ProbeRow& row : four) {
    CHECK(row.error_display == R(0));
    CHECK_FALSE(row.worse_than_previous);
  }
  auto osc = monotonicity_probe(dv(102), dv(25), demo_table(), 1, 10);
  CHECK_FALSE(osc[0].worse_than_previous);
  CHECK(osc[1].worse_than_previous);
  CHECK(std::all_of(osc.begin(), osc.end(), [](const ProbeRow& r) { return r.within_bound; }));
  CHECK_THROWS_AS(monotonicity_probe(dv(200), dv(25), demo_table(), 0, 3), Error);
}

TEST_CASE("table properties and negative controls") {
  VerifyReport ok = check_table_properties(demo_table(), *demo_fix(), dv(25), dv(25));
  CHECK(ok.overall());
  for (std::size_t i : {std::size_t{0}, std::size_t{17}, std::size_t{59}}) {
    RootTable bad = demo_table().with_entry(i, demo_table().root_counts()[i] - 1);
    VerifyReport r = check_table_properties(bad, *demo_fix(), dv(25), dv(25));
    CHECK(unique_failures(r) == std::vector<std::string>{"ROOT"});
    const Check* root = r.find("ROOT");
    REQUIRE(root != nullptr);
    CHECK(witness(*root, "first_failure.v") == demo_table().index_value(i).str());
  }
  RootTable high = demo_table().with_entry(5, demo_table().root_counts()[5] + 1);
  CHECK(unique_failures(check_table_properties(high, *demo_fix(), dv(25), dv(25))) == std::vector<std::string>{"ROOT"});

  auto p = make_fix_profile(100, 1600, 1500);
  RootTable t = build_root_table(p, FixVal(25, p));
  VerifyReport step = check_table_properties(t, *p, FixVal(25, p), FixVal(10, p));
  CHECK(unique_failures(step) == std::vector<std::string>{"stp multiple of eps"});
}

TEST_CASE("balance sweep") {
  auto rows = balance_sweep(demo_fix(), dv(25), {dv(25), dv(50), dv(100)}, 0);
  REQUIRE(rows.size() == 3);
  const long expect_n[] = {1, 2, 3};
  const Rational expect_bound[] = {R(27, 200), R(29, 200), R(31, 200)};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i].valid);
    CHECK(rows[i].n->value == expect_n[i]);
    CHECK(*rows[i].predicted_bound == expect_bound[i]);
    CHECK(rows[i].observed_within_predicted);
    CHECK(rows[i].inputs == 1500);
  }
  CHECK(*rows[0].table_size == 64);
  auto single = balance_sweep(demo_fix(), dv(25), {dv(25)}, 50);
  CHECK(single.size() == 1);
  CHECK(single[0].n->value == 1);
  CHECK(single[0].inputs <= 51);
  auto invalid = balance_sweep(demo_fix(), dv(25), {dv(30)}, 10);
  CHECK_FALSE(invalid[0].valid);
  CHECK_FALSE(invalid[0].invalid_reason.empty());
}

TEST_CASE("suites are deterministic under a seed") {
  auto a = grid_inputs(demo_fix(), R(1), R(8), AssumptionBudget::sampled(50, 7));
  auto b = grid_inputs(demo_fix(), R(1), R(8), AssumptionBudget::sampled(50, 7));
  CHECK(a.size() == 50);
  CHECK(a == b);
  CHECK(std::is_sorted(a.begin(), a.end(), [](const FixVal& x, const FixVal& y) { return x.count() < y.count(); }));
  auto c1 = random_sqr_corpus(20, 3);
  auto c2 = random_sqr_corpus(20, 3);
  for (std::size_t i = 0; i < c1.size(); ++i) {
    CHECK(c1[i].y == c2[i].y);
    CHECK(c1[i].y > R(1));
    CHECK(c1[i].y < R(1000000));
    CHECK(c1[i].eps > R(1, 1000000));
    CHECK(c1[i].eps < R(1));
  }
  CHECK(sqr_suite(c1).overall());
  auto fl = float_inputs(demo_float(), -1, 1, AssumptionBudget::exhaustive());
  CHECK(fl.size() == 3 * 699);
  CHECK(float_suite(fl, dv(25), demo_table()).overall());
}
