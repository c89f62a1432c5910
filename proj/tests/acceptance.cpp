// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "certisqrt/commands.hpp"
#include "certisqrt/io.hpp"
#include "certisqrt/suites.hpp"

using namespace certisqrt;

namespace {

const std::string kFixtures = CERTISQRT_FIXTURES;
const std::string kDemo = kFixtures + "/demo_profile.json";

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_s <= 0 || s < limit_s;
  bool ok = o.pass && in_time;
  if (!ok) ++failures;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs", s);
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << timing;
  if (limit_s > 0) std::cout << ", limit " << limit_s << "s";
  std::cout << ")";
  if (!o.detail.empty()) std::cout << " " << o.detail;
  if (!in_time) std::cout << " over time limit";
  std::cout << std::endl;
}

// Pass/fail over the named checks of a suite report; detail lists case counts
// and the first failing witness.
Outcome require(const VerifyReport& r, const std::vector<std::string>& names) {
  Outcome o{true, ""};
  for (const std::string& n : names) {
    const Check* c = r.find(n);
    if (!c) {
      o.pass = false;
      o.detail += n + ": missing; ";
      continue;
    }
    std::string cases, fails;
    for (const auto& [k, v] : c->witness) {
      if (k == "cases") cases = v;
      if (k == "failures") fails = v;
    }
    o.detail += n + " " + fails + "/" + cases + "; ";
    if (!c->pass) {
      o.pass = false;
      for (const auto& [k, v] : c->witness) o.detail += k + "=" + v + " ";
    }
  }
  if (const Check* e = r.find("no_error"); e && !e->pass) {
    o.pass = false;
    o.detail += "a case raised an error";
  }
  return o;
}

Profile demo() { return realize(load_profile(kDemo)); }

const Profile& demo_profile() {
  static Profile p = demo();
  return p;
}
const RootTable& demo_table() {
  static RootTable t = build_root_table(demo_profile().fix, demo_profile().stp);
  return t;
}
const std::vector<FixVal>& scan_1_8() {
  static std::vector<FixVal> ys = grid_inputs(demo_profile().fix, Rational(1), Rational(8), AssumptionBudget::exhaustive());
  return ys;
}

const std::vector<SqrCase>& corpus() {
  static std::vector<SqrCase> c = random_sqr_corpus(1000, 20240611);
  return c;
}

VerifyReport& sqr_report() {
  static VerifyReport r = sqr_suite(corpus());
  return r;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  return f;
}

}  // namespace

int main() {
  criterion(1, "sqr postcondition and iteration cap on 1000 seeded cases", 30, [] {
    return require(sqr_report(), {"loop_invariant", "postcondition", "iteration_cap"});
  });

  criterion(2, "halving of consecutive corrections on the same corpus", 0, [] {
    return require(sqr_report(), {"halving"});
  });

  criterion(3, "fsqr with table seeds and minimal N, grid y in (1, 8]", 60, [] {
    const Profile& p = demo_profile();
    return require(fsqr_suite(scan_1_8(), p.eps, demo_table()),
                   {"seed_sandwich", "n_legal", "loop_invariant", "progress", "postcondition"});
  });

  criterion(4, "run adjustment gap, grid y in (1, 8], n = 1..6", 120, [] {
    return require(adjust_suite(scan_1_8(), demo_profile().eps, demo_table(), 1, 6),
                   {"adjustment_gap", "fsqr_postcondition"});
  });

  criterion(5, "fix_sqr and mix_sqr final bounds, grid y in (1, 8]", 0, [] {
    const Profile& p = demo_profile();
    Tally fix;
    for (const FixVal& y : scan_1_8()) {
      for (std::int64_t n = 1; n <= 6; ++n) {
        IterationCount it(n);
        fix.record_all(check_fix_postcondition(fix_sqr(y, p.eps, demo_table(), it), y, p.eps, it));
      }
    }
    Outcome a = require(fix.to_report("fix"), {"fix_postcondition"});
    Outcome b = require(mix_suite(scan_1_8(), p.eps, demo_table()), {"mix_postcondition"});
    return Outcome{a.pass && b.pass, a.detail + b.detail};
  });

  criterion(6, "flt_sqr bound, every representable A with exponent in [-4, 4]", 120, [] {
    const Profile& p = demo_profile();
    auto as = float_inputs(p.flt, -4, 4, AssumptionBudget::exhaustive());
    return require(float_suite(as, p.eps, demo_table()), {"flt_postcondition"});
  });

  criterion(7, "table properties and single-entry negative controls", 0, [] {
    const Profile& p = demo_profile();
    const RootTable& t = demo_table();
    Outcome o = require(check_table_properties(t, *p.fix, p.stp, p.eps), {"table_binding", "ROOT", "ROUND"});
    std::size_t controls = 0, exact = 0;
    for (std::size_t i = 0; i < t.size(); i += 7) {
      for (int delta : {-1, 1}) {
        ++controls;
        RootTable bad = t.with_entry(i, t.root_counts()[i] + delta);
        std::vector<std::string> failed = check_table_properties(bad, *p.fix, p.stp, p.eps).failed_names();
        if (failed == std::vector<std::string>{"ROOT"}) ++exact;
      }
    }
    o.detail += "controls failing only ROOT " + std::to_string(exact) + "/" + std::to_string(controls);
    o.pass = o.pass && exact == controls;
    return o;
  });

  criterion(8, "stored more-may-be-worse witness re-verified by the sweep", 0, [] {
    SweepOptions opt;
    opt.kind = "more-worse";
    opt.fixture_path = kFixtures + "/more_worse.json";
    std::ostringstream out, err;
    int code = cmd_sweep(opt, out, err);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    std::vector<std::string> head = csv_fields(line);
    std::size_t within = 0, worse = 0, rows = 0;
    for (std::size_t i = 0; i < head.size(); ++i) {
      if (head[i] == "within_bound") within = i;
      if (head[i] == "worse_than_previous") worse = i;
    }
    bool all_within = true;
    std::size_t worse_rows = 0;
    while (std::getline(lines, line)) {
      auto f = csv_fields(line);
      ++rows;
      if (f.size() <= std::max(within, worse)) return Outcome{false, "malformed row: " + line};
      all_within = all_within && f[within] == "1";
      if (f[worse] == "1") ++worse_rows;
    }
    bool ok = code == 0 && rows > 1 && all_within && worse_rows > 0;
    return Outcome{ok, "exit " + std::to_string(code) + ", rows " + std::to_string(rows) + ", worse " +
                           std::to_string(worse_rows) + (all_within ? ", all within bound" : ", bound violated")};
  });

  criterion(9, "fix_mul/fix_div rounding contract, exhaustive on delta = 1/10, sup = 4", 10, [] {
    ProfileRef micro = make_fix_profile(10, 40, 40);
    VerifyReport r = check_profile_assumptions(*micro, AssumptionBudget::exhaustive());
    Outcome o = require(r, {"mul.error_le_half_delta", "mul.exact_when_representable", "div.error_le_half_delta",
                            "div.exact_when_representable"});
    o.pass = o.pass && r.overall();
    if (!r.overall()) {
      for (const std::string& n : r.failed_names()) o.detail += "failed " + n + "; ";
    }
    return o;
  });

  criterion(10, "table-build and verify output are byte-identical across runs", 0, [] {
    auto build = [] {
      std::ostringstream out, err;
      int code = cmd_table_build(kDemo, "-", out, err);
      return std::to_string(code) + out.str();
    };
    auto verify = [] {
      VerifyOptions o;
      o.profile_path = kDemo;
      o.suite = "all";
      o.exhaustive = true;
      std::ostringstream out, err;
      int code = cmd_verify(o, out, err);
      return std::to_string(code) + out.str();
    };
    std::string b1 = build(), b2 = build(), v1 = verify(), v2 = verify();
    bool ok = b1 == b2 && v1 == v2 && b1[0] == '0' && v1[0] == '0';
    return Outcome{ok, "table " + std::to_string(b1.size()) + " bytes, verify " + std::to_string(v1.size()) + " bytes"};
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
