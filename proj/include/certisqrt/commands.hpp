#pragma once

// In-process implementations of the CLI subcommands. Exit status: 0 pass,
// 1 domain or verification failure, 2 usage or parse failure.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace certisqrt {

struct ProfileCheckOptions {
  std::string profile_path;
  bool exhaustive = false;
  std::size_t samples = 20000;
  std::uint64_t seed = 0;
};
int cmd_profile_check(const ProfileCheckOptions& opt, std::ostream& out, std::ostream& err);

/// out_path "-" writes to out.
int cmd_table_build(const std::string& profile_path, const std::string& out_path, std::ostream& out, std::ostream& err);

struct SqrtOptions {
  std::string profile_path;
  std::optional<std::string> table_path;
  std::string mode;  // exact | fix | mix | float
  std::string value;
  std::optional<std::string> eps;
  std::optional<std::int64_t> n;
  std::optional<std::string> trace_path;
  std::optional<std::string> ulp;
  bool revalidate = true;
};
int cmd_sqrt(const SqrtOptions& opt, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  std::string profile_path;
  std::optional<std::string> table_path;
  std::string suite;  // table | sqr | fsqr | adjust | mix | float | all
  bool exhaustive = false;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0;
  std::int64_t n_max = 6;
  std::optional<std::string> report_path;
};
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::optional<std::string> profile_path;
  std::string kind;  // more-worse | balance
  std::optional<std::string> y;
  std::optional<std::string> eps;
  std::int64_t n_min = 1;
  std::int64_t n_max = 6;
  std::vector<std::string> candidates;
  std::size_t inputs = 0;
  std::optional<std::string> fixture_path;
  std::string out_path = "-";
};
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace certisqrt
