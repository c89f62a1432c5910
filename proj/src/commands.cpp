#include "certisqrt/commands.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include "certisqrt/io.hpp"
#include "certisqrt/suites.hpp"

namespace certisqrt {

namespace {

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Usage:
      return 2;
    default:
      return 1;
  }
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << error_kind_name(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e);
  }
}

/// Decimal display with trailing zeros removed.
std::string display(const Rational& q, int digits = 12) {
  std::string s = to_decimal(q, digits);
  if (s.find('.') == std::string::npos) return s;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

FixVal grid_value(const Rational& q, const ProfileRef& profile, const std::string& what) {
  Rational scaled = q * Rational(profile->delta_den);
  if (!scaled.is_integer()) raise(ErrorKind::Domain, what + " = " + q.str() + " is not a grid value of the profile");
  return FixVal(scaled.num(), profile);
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

RootTable table_for(const Profile& p, const std::optional<std::string>& path, bool revalidate) {
  if (path) return load_table(*path, p, revalidate);
  return build_root_table(p.fix, p.stp);
}

const Check* first_failure(const VerifyReport& r) {
  for (const Check& c : r.checks()) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

std::string verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

std::string witness_value(const VerifyReport& r, const std::string& check, const std::string& key) {
  if (const Check* c = r.find(check)) {
    for (const auto& [k, v] : c->witness) {
      if (k == key) return v;
    }
  }
  return "";
}

std::string unreduced_value(const FixVal& man, std::int64_t exp, const BigInt& base) {
  BigInt num = man.count();
  BigInt den = man.profile().delta_den;
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp < 0 ? -exp : exp));
  if (exp >= 0) {
    num *= p;
  } else {
    den *= p;
  }
  return num.get_str() + "/" + den.get_str();
}

std::string float_str(const FloatVal& f) {
  if (f.is_zero()) return "0";
  return f.man().str() + " * " + f.profile().base.get_str() + "^" + std::to_string(f.exp()) + " = " +
         unreduced_value(f.man(), f.exp(), f.profile().base);
}

void write_trace(const std::string& path, const Trace& t, std::ostream& out) {
  std::ostringstream os;
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    os << trace_to_json(t).dump(2) << '\n';
  } else {
    write_trace_csv(os, t);
  }
  emit(path, os.str(), out);
}

}  // namespace

int cmd_profile_check(const ProfileCheckOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProfileDoc doc = load_profile(opt.profile_path);
    AssumptionBudget budget = opt.exhaustive ? AssumptionBudget::exhaustive() : AssumptionBudget::sampled(opt.samples, opt.seed);
    Json reports = Json::array();
    bool pass = true;
    auto push = [&](const VerifyReport& r) {
      pass = pass && r.overall();
      reports.push_back(report_to_json(r));
    };
    push(check_profile_assumptions(doc.fix, budget));

    ProfileRef fix;
    try {
      fix = share_unchecked(doc.fix);
    } catch (const Error& e) {
      VerifyReport r("profile fields");
      r.add("fields_positive", "fix-point type model", false, {{"error", e.what()}});
      push(r);
    }
    if (fix) {
      VerifyReport flt = check_float_profile(FloatProfile{doc.base, fix, doc.inf_f, doc.sup_f});
      VerifyReport fl("float profile base " + doc.base.get_str());
      for (const Check& c : flt.checks()) {
        if (c.name.rfind("fix.", 0) != 0) fl.add(c);
      }
      push(fl);

      VerifyReport step("step stp_count " + doc.stp_count.get_str() + " eps_count " + doc.eps_count.get_str());
      bool in_range = doc.stp_count > 0 && doc.eps_count > 0 && doc.stp_count <= doc.fix.sup_count &&
                      doc.eps_count <= doc.fix.sup_count;
      step.add("step counts in (0, sup_count]", "STEP", in_range,
               {{"stp_count", doc.stp_count.get_str()}, {"eps_count", doc.eps_count.get_str()}});
      if (in_range) {
        FixVal stp(doc.stp_count, fix);
        FixVal eps(doc.eps_count, fix);
        VerifyReport v = validate_step(stp, eps, doc.fix);
        step.append(v);
        if (v.overall()) {
          step.add("mix precondition", "eps >= 2 delta (2 + ceil(log2(stp/eps)))", mix_precondition_holds(stp, eps),
                   {{"stp", stp.str()}, {"eps", eps.str()}});
        }
      }
      push(step);
    }

    Json j;
    j["profile"] = opt.profile_path;
    j["budget"] = opt.exhaustive ? std::string("exhaustive") : "samples " + std::to_string(opt.samples) + " seed " + std::to_string(opt.seed);
    j["overall"] = pass ? "pass" : "fail";
    j["reports"] = std::move(reports);
    out << j.dump(2) << '\n';
    return pass ? 0 : 1;
  });
}

int cmd_table_build(const std::string& profile_path, const std::string& out_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Profile p = realize(load_profile(profile_path));
    VerifyReport step = validate_step(p.stp, p.eps, *p.fix);
    if (!step.overall()) {
      for (const std::string& name : step.failed_names()) err << "STEP violated: " << name << '\n';
      return 1;
    }
    emit(out_path, table_to_json(build_root_table(p.fix, p.stp)), out);
    return 0;
  });
}

int cmd_sqrt(const SqrtOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    static const std::vector<std::string> modes{"exact", "fix", "mix", "float"};
    if (std::find(modes.begin(), modes.end(), opt.mode) == modes.end()) {
      raise(ErrorKind::Usage, "unknown mode '" + opt.mode + "' (exact, fix, mix, float)");
    }
    if (opt.eps && opt.ulp) raise(ErrorKind::Usage, "--eps and --ulp are mutually exclusive");
    if (opt.n && opt.mode != "fix") raise(ErrorKind::Usage, "--n applies to fix mode only");
    Profile p = realize(load_profile(opt.profile_path));
    const Rational value = Rational::parse(opt.value);

    FixVal eps = p.eps;
    if (opt.ulp) {
      Rational ulp = Rational::parse(*opt.ulp);
      eps = derive_eps_for_ulp(ulp, *p.flt, p.stp);
      out << "eps = " << eps.str() << " (derived from ulp " << ulp.str() << ")\n";
    } else if (opt.eps) {
      eps = grid_value(Rational::parse(*opt.eps), p.fix, "eps");
    }

    bool pass = false;
    if (opt.mode == "exact") {
      ExactRun run = sqr_exact(value, eps.value());
      VerifyReport r = check_sqr_annotations(run.trace, value, eps.value());
      pass = r.overall();
      out << "x = " << run.x.str() << " (" << display(run.x) << "), bound " << eps.value().str() << ", " << verdict(pass) << '\n';
      if (opt.trace_path) write_trace(*opt.trace_path, run.trace, out);
      if (const Check* c = first_failure(r)) err << "failed check: " << c->name << '\n';
      return pass ? 0 : 1;
    }

    RootTable table = table_for(p, opt.table_path, opt.revalidate);
    if (opt.mode == "fix" || opt.mode == "mix") {
      FixVal y = grid_value(value, p.fix, "value");
      std::optional<FixRun> run;
      VerifyReport r;
      Rational bound;
      if (opt.mode == "fix") {
        IterationCount n = opt.n ? IterationCount(*opt.n) : min_iterations_for_step(table.stp(), eps);
        run.emplace(fix_sqr(y, eps, table, n));
        r = check_fix_postcondition(*run, y, eps, n);
        bound = eps.value() / Rational(2) + Rational(n.value) * p.fix->delta();
      } else {
        run.emplace(mix_sqr(y, eps, table));
        r = check_mix_postcondition(*run, y, eps);
        bound = eps.value();
      }
      pass = r.overall();
      out << "x = " << run->x.str() << " (" << display(run->x.value()) << "), bound " << bound.str() << ", " << verdict(pass) << '\n';
      if (opt.trace_path) write_trace(*opt.trace_path, run->trace, out);
      return pass ? 0 : 1;
    }

    Encoded a = encode_rational(value, p.flt);
    out << "A = " << float_str(a.value) << (a.exact ? "" : " (rounded)") << '\n';
    FloatRun run = flt_sqr(a.value, eps, table);
    VerifyReport r = check_flt_postcondition(a.value, run.b, eps);
    pass = r.overall();
    std::string bound = witness_value(r, "flt_postcondition", "bound");
    out << "b = " << float_str(run.b) << " (" << display(value_of(run.b)) << ")";
    if (!bound.empty()) out << ", bound " << bound;
    out << ", " << verdict(pass) << '\n';
    if (opt.trace_path) write_trace(*opt.trace_path, run.trace, out);
    return pass ? 0 : 1;
  });
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    static const std::vector<std::string> all{"table", "sqr", "fsqr", "adjust", "mix", "float"};
    std::vector<std::string> suites;
    if (opt.suite == "all") {
      suites = all;
    } else if (std::find(all.begin(), all.end(), opt.suite) != all.end()) {
      suites = {opt.suite};
    } else {
      raise(ErrorKind::Usage, "unknown suite '" + opt.suite + "' (table, sqr, fsqr, adjust, mix, float, all)");
    }
    if (opt.exhaustive && opt.samples) raise(ErrorKind::Usage, "--exhaustive and --samples are mutually exclusive");
    if (opt.n_max < 1) raise(ErrorKind::Usage, "--n-max must be at least 1");

    Profile p = realize(load_profile(opt.profile_path));
    RootTable table = table_for(p, opt.table_path, false);
    const AssumptionBudget budget =
        opt.samples ? AssumptionBudget::sampled(*opt.samples, opt.seed) : AssumptionBudget::exhaustive();
    const Rational half_sup = p.fix->sup() / Rational(2);
    auto ys = [&] { return grid_inputs(p.fix, Rational(1), half_sup, budget); };

    Json reports = Json::array();
    bool pass = true;
    for (const std::string& s : suites) {
      VerifyReport r;
      if (s == "table") {
        r = check_table_properties(table, *p.fix, p.stp, p.eps);
      } else if (s == "sqr") {
        std::vector<SqrCase> cases;
        if (opt.samples) {
          cases = random_sqr_corpus(*opt.samples, opt.seed);
        } else {
          for (const FixVal& y : grid_inputs(p.fix, Rational(1), p.fix->sup(), budget)) cases.push_back({y.value(), p.eps.value()});
        }
        r = sqr_suite(cases);
      } else if (s == "fsqr") {
        r = fsqr_suite(ys(), p.eps, table);
      } else if (s == "adjust") {
        r = adjust_suite(ys(), p.eps, table, min_iterations_for_step(p.stp, p.eps).value, opt.n_max);
      } else if (s == "mix") {
        r = mix_suite(ys(), p.eps, table);
      } else {
        std::int64_t lo = std::max<std::int64_t>(-4, p.flt->min_exponent());
        std::int64_t hi = std::min<std::int64_t>(4, p.flt->max_exponent());
        r = float_suite(float_inputs(p.flt, lo, hi, budget), p.eps, table);
      }
      pass = pass && r.overall();
      Json rj = report_to_json(r);
      rj["suite"] = s;
      reports.push_back(std::move(rj));
    }

    Json j;
    j["suite"] = opt.suite;
    j["budget"] = opt.samples ? "samples " + std::to_string(*opt.samples) + " seed " + std::to_string(opt.seed) : std::string("exhaustive");
    j["overall"] = pass ? "pass" : "fail";
    j["reports"] = std::move(reports);
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (opt.report_path) write_file(*opt.report_path, text);
    return pass ? 0 : 1;
  });
}

namespace {

struct Fixture {
  ProfileDoc profile;
  BigInt y_count;
  BigInt eps_count;
  std::int64_t n_min = 1;
  std::int64_t n_max = 10;
  std::int64_t witness_n = 0;
};

Fixture load_fixture(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    raise(ErrorKind::Parse, std::string("malformed fixture: ") + e.what());
  }
  auto get_int = [&](const char* key) -> Json {
    if (!j.contains(key) || !j[key].is_number_integer()) raise(ErrorKind::Parse, std::string(key) + ": expected an integer");
    return j[key];
  };
  if (!j.contains("profile")) raise(ErrorKind::Parse, "profile: missing");
  Fixture f;
  f.profile = parse_profile(j["profile"].dump());
  f.y_count = BigInt(get_int("y_count").dump());
  f.eps_count = BigInt(get_int("eps_count").dump());
  f.n_min = get_int("n_min").get<std::int64_t>();
  f.n_max = get_int("n_max").get<std::int64_t>();
  f.witness_n = get_int("witness_n").get<std::int64_t>();
  return f;
}

}  // namespace

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.kind != "more-worse" && opt.kind != "balance") raise(ErrorKind::Usage, "unknown sweep kind '" + opt.kind + "'");
    if (opt.kind == "more-worse") {
      std::optional<Fixture> fixture;
      if (opt.fixture_path) fixture = load_fixture(*opt.fixture_path);
      if (!fixture && !opt.profile_path) raise(ErrorKind::Usage, "more-worse needs --profile or --fixture");
      Profile p = realize(fixture ? fixture->profile : load_profile(*opt.profile_path));
      RootTable table = build_root_table(p.fix, p.stp);
      FixVal y = fixture ? FixVal(fixture->y_count, p.fix)
                         : grid_value(Rational::parse(opt.y.value_or("2")), p.fix, "y");
      FixVal eps = fixture ? FixVal(fixture->eps_count, p.fix) : opt.eps ? grid_value(Rational::parse(*opt.eps), p.fix, "eps") : p.eps;
      std::int64_t n_min = fixture ? fixture->n_min : opt.n_min;
      std::int64_t n_max = fixture ? fixture->n_max : opt.n_max;
      std::vector<ProbeRow> rows = monotonicity_probe(y, eps, table, n_min, n_max);
      std::ostringstream csv;
      write_probe_csv(csv, rows);
      emit(opt.out_path, csv.str(), out);
      bool bounded = std::all_of(rows.begin(), rows.end(), [](const ProbeRow& r) { return r.within_bound; });
      if (!bounded) err << "some row exceeds eps/2 + n delta\n";
      if (!fixture) return bounded ? 0 : 1;
      auto it = std::find_if(rows.begin(), rows.end(), [&](const ProbeRow& r) { return r.n == fixture->witness_n; });
      bool witnessed = it != rows.end() && it->worse_than_previous;
      err << "fixture witness n = " << fixture->witness_n << ": " << (witnessed ? "error increases" : "no increase") << '\n';
      return bounded && witnessed ? 0 : 1;
    }

    if (!opt.profile_path) raise(ErrorKind::Usage, "balance needs --profile");
    Profile p = realize(load_profile(*opt.profile_path));
    if (opt.candidates.empty()) raise(ErrorKind::Domain, "balance sweep needs at least one step candidate");
    FixVal eps = opt.eps ? grid_value(Rational::parse(*opt.eps), p.fix, "eps") : p.eps;
    std::vector<FixVal> candidates;
    for (const std::string& c : opt.candidates) candidates.push_back(grid_value(Rational::parse(c), p.fix, "candidate"));
    std::vector<BalanceRow> rows = balance_sweep(p.fix, eps, candidates, opt.inputs);
    std::ostringstream csv;
    write_balance_csv(csv, rows);
    emit(opt.out_path, csv.str(), out);
    bool ok = std::all_of(rows.begin(), rows.end(), [](const BalanceRow& r) { return !r.valid || r.observed_within_predicted; });
    return ok ? 0 : 1;
  });
}

}  // namespace certisqrt
