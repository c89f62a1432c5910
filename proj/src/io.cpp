#include "certisqrt/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace certisqrt {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  raise(ErrorKind::Parse, field + ": " + what);
}

const Json& member(const Json& obj, const std::string& parent, const char* key) {
  const std::string field = parent.empty() ? key : parent + "." + key;
  if (!obj.is_object()) field_error(parent.empty() ? "<root>" : parent, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(field, "missing");
  return *it;
}

BigInt read_integer(const Json& v, const std::string& field) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return BigInt(std::to_string(v.get<std::uint64_t>()));
    return BigInt(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    try {
      Rational q = Rational::parse(v.get<std::string>());
      if (q.is_integer()) return q.num();
    } catch (const Error&) {
    }
    field_error(field, "expected an integer, got \"" + v.get<std::string>() + "\"");
  }
  field_error(field, std::string("expected an integer, got ") + v.type_name());
}

Rational read_rational(const Json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(read_integer(v, field));
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const Error& e) {
      field_error(field, e.what());
    }
  }
  field_error(field, std::string("expected an integer or a rational string, got ") + v.type_name());
}

Json integer_json(const BigInt& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    raise(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

}  // namespace

ProfileDoc parse_profile(const std::string& text) {
  Json j = parse_json(text);
  const Json& fix = member(j, "", "fix");
  const Json& flt = member(j, "", "float");
  const Json& step = member(j, "", "step");
  ProfileDoc d;
  d.fix.delta_den = read_integer(member(fix, "fix", "delta_den"), "fix.delta_den");
  d.fix.inf_count = read_integer(member(fix, "fix", "inf_count"), "fix.inf_count");
  d.fix.sup_count = read_integer(member(fix, "fix", "sup_count"), "fix.sup_count");
  d.base = read_integer(member(flt, "float", "base"), "float.base");
  d.inf_f = read_rational(member(flt, "float", "inf_F"), "float.inf_F");
  d.sup_f = read_rational(member(flt, "float", "sup_F"), "float.sup_F");
  d.stp_count = read_integer(member(step, "step", "stp_count"), "step.stp_count");
  d.eps_count = read_integer(member(step, "step", "eps_count"), "step.eps_count");
  return d;
}

ProfileDoc load_profile(const std::string& path) { return parse_profile(read_file(path)); }

Json profile_to_json(const ProfileDoc& d) {
  Json j;
  j["fix"]["delta_den"] = integer_json(d.fix.delta_den);
  j["fix"]["inf_count"] = integer_json(d.fix.inf_count);
  j["fix"]["sup_count"] = integer_json(d.fix.sup_count);
  j["float"]["base"] = integer_json(d.base);
  j["float"]["inf_F"] = d.inf_f.is_integer() ? integer_json(d.inf_f.num()) : Json(d.inf_f.str());
  j["float"]["sup_F"] = d.sup_f.is_integer() ? integer_json(d.sup_f.num()) : Json(d.sup_f.str());
  j["step"]["stp_count"] = integer_json(d.stp_count);
  j["step"]["eps_count"] = integer_json(d.eps_count);
  return j;
}

Profile realize(const ProfileDoc& d) {
  ProfileRef fix = make_fix_profile(d.fix.delta_den, d.fix.inf_count, d.fix.sup_count);
  FloatProfileRef flt = make_float_profile(d.base, fix, d.inf_f, d.sup_f);
  if (d.stp_count <= 0 || d.stp_count > d.fix.sup_count) raise(ErrorKind::Domain, "step.stp_count outside (0, sup_count]");
  if (d.eps_count <= 0 || d.eps_count > d.fix.sup_count) raise(ErrorKind::Domain, "step.eps_count outside (0, sup_count]");
  return Profile{fix, flt, FixVal(d.stp_count, fix), FixVal(d.eps_count, fix)};
}

std::string profile_hash(const FixProfile& fix, const BigInt& stp_count) {
  Json j;
  j["fix"]["delta_den"] = fix.delta_den.get_str();
  j["fix"]["inf_count"] = fix.inf_count.get_str();
  j["fix"]["sup_count"] = fix.sup_count.get_str();
  j["step"]["stp_count"] = stp_count.get_str();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string table_to_json(const RootTable& table) {
  Json j;
  j["profile_hash"] = profile_hash(table.profile(), table.stp().count());
  j["delta_den"] = integer_json(table.profile().delta_den);
  j["sup_count"] = integer_json(table.profile().sup_count);
  j["stp_count"] = integer_json(table.stp().count());
  Json roots = Json::array();
  for (const BigInt& r : table.root_counts()) roots.push_back(integer_json(r));
  j["roots"] = std::move(roots);
  return j.dump(1) + "\n";
}

RootTable table_from_json(const std::string& text, const Profile& profile, bool revalidate) {
  Json j = parse_json(text);
  const Json& hash = member(j, "", "profile_hash");
  if (!hash.is_string()) field_error("profile_hash", "expected a string");
  BigInt den = read_integer(member(j, "", "delta_den"), "delta_den");
  BigInt sup = read_integer(member(j, "", "sup_count"), "sup_count");
  BigInt stp = read_integer(member(j, "", "stp_count"), "stp_count");
  const Json& roots_json = member(j, "", "roots");
  if (!roots_json.is_array()) field_error("roots", "expected an array");
  std::vector<BigInt> roots;
  roots.reserve(roots_json.size());
  for (std::size_t i = 0; i < roots_json.size(); ++i) {
    roots.push_back(read_integer(roots_json[i], "roots[" + std::to_string(i) + "]"));
  }

  const FixProfile& p = *profile.fix;
  if (den != p.delta_den || sup != p.sup_count) {
    raise(ErrorKind::Domain, "table grid (delta_den " + den.get_str() + ", sup_count " + sup.get_str() +
                                 ") does not match the profile");
  }
  if (stp != profile.stp.count()) {
    raise(ErrorKind::Domain, "table step " + stp.get_str() + " does not match profile step " + profile.stp.count().get_str());
  }
  if (hash.get<std::string>() != profile_hash(p, stp)) raise(ErrorKind::Domain, "table profile_hash does not match the profile");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i] < 0 || roots[i] > p.sup_count) raise(ErrorKind::Domain, "roots[" + std::to_string(i) + "] is off the grid");
  }

  RootTable table(profile.stp, std::move(roots));
  if (revalidate) {
    const Rational delta = p.delta();
    for (std::size_t i = 0; i < table.size(); ++i) {
      Rational v = table.index_value(i).value();
      Rational r = table.root_value(i).value();
      if (cmp_sqrt(r, v) == Ordering::Less || cmp_sqrt(r - delta, v) != Ordering::Less) {
        raise(ErrorKind::Domain, "ROOT fails at index " + table.index_value(i).str() + " (root " + table.root_value(i).str() + ")");
      }
    }
  }
  return table;
}

RootTable load_table(const std::string& path, const Profile& profile, bool revalidate) {
  return table_from_json(read_file(path), profile, revalidate);
}

void write_trace_csv(std::ostream& os, const Trace& t) {
  const bool fix = t.grid_den.has_value();
  auto x_cols = [&](const Rational& x) {
    if (fix) {
      Rational count = x * Rational(*t.grid_den);
      return count.num().get_str() + "," + t.grid_den->get_str();
    }
    return x.num().get_str() + "," + x.den().get_str();
  };
  const std::string exact = csv_bool(!fix);
  os << "algorithm,k,x_num,x_den,correction,exact_flag\n";
  for (const TraceStep& s : t.steps) {
    os << t.algorithm << ',' << s.k << ',' << x_cols(s.x) << ',' << s.correction.str() << ',' << exact << '\n';
  }
  os << t.algorithm << ",final," << x_cols(t.final_x) << ",," << exact << '\n';
}

Json trace_to_json(const Trace& t) {
  Json j;
  j["algorithm"] = t.algorithm;
  j["y"] = t.y.str();
  j["eps"] = t.eps.str();
  if (t.stp) j["stp"] = t.stp->str();
  if (t.seed) j["seed"] = t.seed->str();
  if (t.n_planned) j["n"] = t.n_planned->value;
  if (t.grid_den) j["grid_den"] = t.grid_den->get_str();
  Json steps = Json::array();
  for (const TraceStep& s : t.steps) {
    steps.push_back({{"k", s.k}, {"x", s.x.str()}, {"correction", s.correction.str()}, {"x_after", s.x_after.str()}, {"applied", s.applied}});
  }
  j["steps"] = std::move(steps);
  j["final_x"] = t.final_x.str();
  if (!t.attributes.empty()) {
    Json attrs = Json::object();
    for (const auto& [k, v] : t.attributes) attrs[k] = v;
    j["attributes"] = std::move(attrs);
  }
  return j;
}

Json report_to_json(const VerifyReport& r) {
  Json j;
  j["subject"] = r.subject();
  j["overall"] = r.overall() ? "pass" : "fail";
  Json checks = Json::array();
  for (const Check& c : r.checks()) {
    Json w = Json::object();
    for (const auto& [k, v] : c.witness) w[k] = v;
    checks.push_back({{"name", c.name}, {"property", c.property}, {"pass", c.pass}, {"witness", std::move(w)}});
  }
  j["checks"] = std::move(checks);
  return j;
}

void write_probe_csv(std::ostream& os, const std::vector<ProbeRow>& rows) {
  os << "n,x,bound,within_bound,worse_than_previous,error_display\n";
  for (const ProbeRow& r : rows) {
    os << r.n << ',' << r.x.str() << ',' << r.bound.str() << ',' << csv_bool(r.within_bound) << ','
       << csv_bool(r.worse_than_previous) << ',' << to_decimal(r.error_display, 12) << '\n';
  }
}

void write_balance_csv(std::ostream& os, const std::vector<BalanceRow>& rows) {
  os << "stp,valid,invalid_reason,table_size,n,predicted_bound,worst_error_display,worst_y,observed_within_predicted,inputs\n";
  for (const BalanceRow& r : rows) {
    os << r.stp.str() << ',' << csv_bool(r.valid) << ',' << r.invalid_reason << ','
       << (r.table_size ? r.table_size->get_str() : "") << ',' << (r.n ? std::to_string(r.n->value) : "") << ','
       << (r.predicted_bound ? r.predicted_bound->str() : "") << ','
       << (r.worst_error_display ? to_decimal(*r.worst_error_display, 12) : "") << ','
       << (r.worst_y ? r.worst_y->str() : "") << ',' << csv_bool(r.observed_within_predicted) << ',' << r.inputs << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Usage, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::Usage, "cannot write " + path);
    out << content;
    if (!out.flush()) raise(ErrorKind::Usage, "cannot write " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    raise(ErrorKind::Usage, "cannot write " + path);
  }
}

}  // namespace certisqrt
