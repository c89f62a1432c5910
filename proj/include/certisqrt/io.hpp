#pragma once

// File formats: profile and table JSON, trace and sweep CSV, report JSON.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "certisqrt/floatmodel.hpp"
#include "certisqrt/lut.hpp"
#include "certisqrt/newton.hpp"
#include "certisqrt/report.hpp"
#include "certisqrt/verify.hpp"

namespace certisqrt {

using Json = nlohmann::ordered_json;

/// Raw profile document; parsing checks shape and types only.
///   {"fix": {"delta_den", "inf_count", "sup_count"},
///    "float": {"base", "inf_F", "sup_F"},
///    "step": {"stp_count", "eps_count"}}
/// Counts are JSON integers or decimal strings; inf_F/sup_F may also be "n/d".
struct ProfileDoc {
  FixProfile fix;
  BigInt base;
  Rational inf_f;
  Rational sup_f;
  BigInt stp_count;
  BigInt eps_count;
};

/// Validated profile with shared handles.
struct Profile {
  ProfileRef fix;
  FloatProfileRef flt;
  FixVal stp;
  FixVal eps;
};

/// Throws Parse naming the offending field.
ProfileDoc parse_profile(const std::string& text);
ProfileDoc load_profile(const std::string& path);
Json profile_to_json(const ProfileDoc& doc);

/// Throws Domain when the fix or float assumptions fail, or eps/stp are off range.
Profile realize(const ProfileDoc& doc);

/// FNV-1a 64 over the canonical JSON of the fix profile and table step, as 16 hex digits.
std::string profile_hash(const FixProfile& fix, const BigInt& stp_count);

std::string table_to_json(const RootTable& table);
/// Throws Parse for a malformed file and Domain when the table does not belong
/// to the profile or (with revalidate) a ROOT entry is wrong.
RootTable table_from_json(const std::string& text, const Profile& profile, bool revalidate);
RootTable load_table(const std::string& path, const Profile& profile, bool revalidate);

/// Columns algorithm,k,x_num,x_den,correction,exact_flag; a last row with
/// k = "final". Fix-point traces print x as grid count over the grid denominator.
void write_trace_csv(std::ostream& os, const Trace& trace);
Json trace_to_json(const Trace& trace);

Json report_to_json(const VerifyReport& report);

void write_probe_csv(std::ostream& os, const std::vector<ProbeRow>& rows);
void write_balance_csv(std::ostream& os, const std::vector<BalanceRow>& rows);

std::string read_file(const std::string& path);
/// Writes through a temporary and renames; throws Usage on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace certisqrt
