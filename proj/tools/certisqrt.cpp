#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "certisqrt/commands.hpp"

using namespace certisqrt;

int main(int argc, char** argv) {
  CLI::App app{"certisqrt: square roots by Newton iteration with exact runtime verification"};
  app.require_subcommand(1);

  ProfileCheckOptions pc;
  auto* profile_check = app.add_subcommand("profile-check", "check a profile file against the arithmetic model");
  profile_check->add_option("profile", pc.profile_path, "profile JSON")->required();
  profile_check->add_flag("--exhaustive", pc.exhaustive, "check every operand pair");
  profile_check->add_option("--samples", pc.samples, "operand pairs to sample");
  profile_check->add_option("--seed", pc.seed, "sampling seed");

  std::string tb_profile, tb_out;
  auto* table_build = app.add_subcommand("table-build", "build the square-root look-up table");
  table_build->add_option("profile", tb_profile, "profile JSON")->required();
  table_build->add_option("out", tb_out, "output table JSON, - for stdout")->required();

  SqrtOptions sq;
  std::string sq_table, sq_eps, sq_trace, sq_ulp;
  std::int64_t sq_n = 0;
  bool no_revalidate = false;
  auto* sqrt_cmd = app.add_subcommand("sqrt", "evaluate one square root and check its bound");
  sqrt_cmd->add_option("profile", sq.profile_path, "profile JSON")->required();
  sqrt_cmd->add_option("value", sq.value, "radicand, e.g. 3, 3.00, 12/5")->required();
  sqrt_cmd->add_option("--mode", sq.mode, "exact, fix, mix or float")->required();
  auto* sq_table_opt = sqrt_cmd->add_option("--table", sq_table, "table JSON (built in memory if absent)");
  auto* sq_eps_opt = sqrt_cmd->add_option("--eps", sq_eps, "accuracy (default: profile eps)");
  auto* sq_n_opt = sqrt_cmd->add_option("--n", sq_n, "iterations for fix mode");
  auto* sq_trace_opt = sqrt_cmd->add_option("--trace", sq_trace, "write the trace (.csv or .json)");
  auto* sq_ulp_opt = sqrt_cmd->add_option("--ulp", sq_ulp, "derive eps for a half-ulp result");
  sqrt_cmd->add_flag("--no-revalidate", no_revalidate, "skip ROOT revalidation on table load");

  VerifyOptions vf;
  std::string vf_table, vf_report;
  std::size_t vf_samples = 0;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("profile", vf.profile_path, "profile JSON")->required();
  verify->add_option("suite", vf.suite, "table, sqr, fsqr, adjust, mix, float or all")->required();
  auto* vf_table_opt = verify->add_option("--table", vf_table, "table JSON (built in memory if absent)");
  auto* vf_exh = verify->add_flag("--exhaustive", vf.exhaustive, "scan every input (default)");
  auto* vf_samples_opt = verify->add_option("--samples", vf_samples, "random inputs per suite");
  vf_exh->excludes(vf_samples_opt);
  verify->add_option("--seed", vf.seed, "sampling seed");
  verify->add_option("--n-max", vf.n_max, "largest iteration count for the adjust suite");
  auto* vf_report_opt = verify->add_option("--report", vf_report, "also write the JSON report here");

  SweepOptions sw;
  std::string sw_profile, sw_y, sw_eps, sw_fixture;
  auto* sweep = app.add_subcommand("sweep", "more-worse or balance sweep as CSV");
  sweep->add_option("kind", sw.kind, "more-worse or balance")->required();
  auto* sw_profile_opt = sweep->add_option("--profile", sw_profile, "profile JSON");
  auto* sw_y_opt = sweep->add_option("--y", sw_y, "radicand for more-worse");
  auto* sw_eps_opt = sweep->add_option("--eps", sw_eps, "accuracy (default: profile eps)");
  sweep->add_option("--n-min", sw.n_min, "first iteration count");
  sweep->add_option("--n-max", sw.n_max, "last iteration count");
  sweep->add_option("--candidates", sw.candidates, "step candidates for balance")->delimiter(',');
  sweep->add_option("--inputs", sw.inputs, "inputs per candidate, 0 for all");
  auto* sw_fixture_opt = sweep->add_option("--fixture", sw_fixture, "re-verify a stored more-worse witness");
  sweep->add_option("--out", sw.out_path, "output CSV, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*profile_check) return cmd_profile_check(pc, std::cout, std::cerr);
  if (*table_build) return cmd_table_build(tb_profile, tb_out, std::cout, std::cerr);
  if (*sqrt_cmd) {
    if (*sq_table_opt) sq.table_path = sq_table;
    if (*sq_eps_opt) sq.eps = sq_eps;
    if (*sq_n_opt) sq.n = sq_n;
    if (*sq_trace_opt) sq.trace_path = sq_trace;
    if (*sq_ulp_opt) sq.ulp = sq_ulp;
    sq.revalidate = !no_revalidate;
    return cmd_sqrt(sq, std::cout, std::cerr);
  }
  if (*verify) {
    if (*vf_table_opt) vf.table_path = vf_table;
    if (*vf_samples_opt) vf.samples = vf_samples;
    if (*vf_report_opt) vf.report_path = vf_report;
    return cmd_verify(vf, std::cout, std::cerr);
  }
  if (*sweep) {
    if (*sw_profile_opt) sw.profile_path = sw_profile;
    if (*sw_y_opt) sw.y = sw_y;
    if (*sw_eps_opt) sw.eps = sw_eps;
    if (*sw_fixture_opt) sw.fixture_path = sw_fixture;
    std::erase(sw.candidates, std::string{});
    return cmd_sweep(sw, std::cout, std::cerr);
  }
  return 2;
}
