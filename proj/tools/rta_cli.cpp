// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the rta-verify library (C API only).
//
// Subcommands:
//   check-adequacy       sampling-time adequacy (--kind prec1|bad)
//   check-noskip         one-tick level skipping across a boundary
//   check-recoverability time-bounded recovery under the safe controller
//   simulate             exact concrete simulation (JSON request)
//   falsify              randomized/grid counterexample search (JSON request)
//   dump-smt             write a property's SMT queries without solving
//
// Exit codes for property checks: 0 the property holds, 1 validated
// counterexample, 2 undecided (solver unknown or timeout), 3 usage/
// configuration/solver error.  `falsify` exits 1 when a witness was found and
// 0 when the budget was exhausted; `simulate` and `dump-smt` exit 0 on
// success.

#include <rta/rta.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct CommonOpts {
  std::string config;
  std::string solver;
  double timeout = 0;
  int jobs = 0;
  bool no_prepass = false;
  int prepass_budget = 0;
  bool monolithic = false;
  bool closed_split = false;
  std::string dump_dir;
  unsigned long long seed = 0;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool adequacy_flags) {
  cmd->add_option("-c,--config", o.config, "scenario configuration file (JSON, '-' for stdin)")
      ->required();
  cmd->add_option("--solver", o.solver,
                  "solver command, whitespace-split (overrides RTA_SMT_SOLVER)");
  cmd->add_option("--timeout", o.timeout, "per-query timeout in seconds (default 3600)");
  cmd->add_option("-j,--jobs", o.jobs, "parallel cases/queries (default: RTA_JOBS or 1)");
  cmd->add_flag("--no-oracle-prepass", o.no_prepass,
                "skip concrete falsification before the solver");
  cmd->add_option("--prepass-budget", o.prepass_budget,
                  "samples per concrete falsification (default 10000)");
  if (adequacy_flags) {
    cmd->add_flag("--monolithic", o.monolithic,
                  "skip the endpoint-reachability stage of adequacy cases");
    cmd->add_flag("--closed-split", o.closed_split, "allow the mid-tick split at exactly dt");
  }
  cmd->add_option("--dump-dir", o.dump_dir, "keep every SMT query as an .smt2 file here");
  cmd->add_option("--seed", o.seed, "falsifier seed (default 1)");
  cmd->add_option("-o,--out", o.out, "write the JSON report here instead of stdout");
}

std::string read_file(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read '%s'\n", path.c_str());
    std::exit(3);
  }
  ss << in.rdbuf();
  return ss.str();
}

rta_scenario* load_scenario(const std::string& path) {
  const std::string text = read_file(path);
  rta_scenario* sc = nullptr;
  char* err = nullptr;
  if (rta_scenario_load_json(text.c_str(), &sc, &err) != RTA_OK) {
    std::fprintf(stderr, "error: %s\n", err ? err : "configuration rejected");
    rta_string_free(err);
    std::exit(3);
  }
  return sc;
}

void fill_options(const CommonOpts& o, rta_check_options& opt, bool dump_only, bool no_prereq) {
  rta_check_options_init(&opt);
  if (!o.solver.empty()) opt.solver_cmd = o.solver.c_str();
  if (o.timeout > 0) opt.timeout_sec = o.timeout;
  if (o.jobs > 0) {
    opt.jobs = o.jobs;
  } else if (const char* ej = std::getenv("RTA_JOBS")) {
    int j = std::atoi(ej);
    if (j > 0) opt.jobs = j;
  }
  opt.oracle_prepass = o.no_prepass ? 0 : 1;
  if (o.prepass_budget > 0) opt.prepass_budget = o.prepass_budget;
  opt.monolithic = o.monolithic ? 1 : 0;
  opt.closed_split = o.closed_split ? 1 : 0;
  opt.no_prereq = no_prereq ? 1 : 0;
  opt.dump_only = dump_only ? 1 : 0;
  if (!o.dump_dir.empty()) opt.dump_dir = o.dump_dir.c_str();
  if (o.seed) opt.seed = o.seed;
}

void write_output(const std::string& out_path, const char* text) {
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
      std::exit(3);
    }
    f << text << "\n";
  } else {
    std::fprintf(stdout, "%s\n", text);
  }
}

// Prints the summary to stderr, the JSON report to stdout (or --out), and
// returns the process exit code.
int emit_report(rta_report* rep, const CommonOpts& o, bool dump_mode) {
  char* summary = rta_report_summary(rep);
  if (summary) std::fprintf(stderr, "%s\n", summary);
  rta_string_free(summary);
  char* js = rta_report_json(rep);
  write_output(o.out, js ? js : "{}");
  rta_string_free(js);
  const int rc = dump_mode ? 0 : rta_report_exit_code(rep);
  rta_report_free(rep);
  return rc;
}

[[noreturn]] void die(const char* what, char* err) {
  std::fprintf(stderr, "error: %s: %s\n", what, err ? err : "failed");
  rta_string_free(err);
  std::exit(3);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifier for sampled runtime-assurance architectures"};
  app.set_version_flag("--version", rta_version());
  app.require_subcommand(1);

  // check-adequacy
  CommonOpts ca_opts;
  std::string ca_kind = "prec1";
  CLI::App* ca = app.add_subcommand("check-adequacy", "prove or refute sampling-time adequacy");
  add_common(ca, ca_opts, true);
  ca->add_option("--kind", ca_kind, "case family: prec1 (chain-neighbour) or bad (bad-avoidance)")
      ->check(CLI::IsMember({"prec1", "bad"}));

  // check-noskip
  CommonOpts cn_opts;
  std::string cn_safe = "safe";
  CLI::App* cn = app.add_subcommand("check-noskip", "prove or refute one-tick level skipping");
  add_common(cn, cn_opts, false);
  cn->add_option("--safe", cn_safe, "boundary level (default: safe)");

  // check-recoverability
  CommonOpts cr_opts;
  int cr_horizon = 0;
  std::string cr_safe = "safe", cr_safer = "safer";
  bool cr_no_prereq = false;
  CLI::App* cr =
      app.add_subcommand("check-recoverability", "prove or refute time-bounded recoverability");
  add_common(cr, cr_opts, true);
  cr->add_option("-t,--t,--horizon", cr_horizon, "number of controller ticks")->required();
  cr->add_option("--safe", cr_safe, "floor level the trace must sample at or above");
  cr->add_option("--safer", cr_safer, "level the trace must reach by the horizon");
  cr->add_flag("--no-prereq", cr_no_prereq,
               "skip the prerequisite checks (report is stamped prerequisites-unverified)");

  // simulate
  std::string sim_config, sim_request, sim_out;
  CLI::App* sim = app.add_subcommand("simulate", "exact concrete simulation");
  sim->add_option("-c,--config", sim_config, "scenario configuration file")->required();
  sim->add_option("-r,--request", sim_request, "simulation request file (JSON, '-' for stdin)")
      ->required();
  sim->add_option("-o,--out", sim_out, "write the JSON result here instead of stdout");

  // falsify
  std::string fal_config, fal_request, fal_out;
  CLI::App* fal = app.add_subcommand("falsify", "randomized/grid counterexample search");
  fal->add_option("-c,--config", fal_config, "scenario configuration file")->required();
  fal->add_option("-r,--request", fal_request, "falsification request file (JSON, '-' for stdin)")
      ->required();
  fal->add_option("-o,--out", fal_out, "write the JSON result here instead of stdout");

  // dump-smt
  CommonOpts dm_opts;
  std::string dm_property = "adequacy-prec1";
  int dm_horizon = 1;
  std::string dm_safe = "safe", dm_safer = "safer";
  CLI::App* dm = app.add_subcommand("dump-smt", "write a property's SMT queries without solving");
  add_common(dm, dm_opts, true);
  dm->add_option("--property", dm_property, "property whose queries to dump")
      ->check(CLI::IsMember({"adequacy-prec1", "adequacy-bad", "noskip", "recoverability"}));
  dm->add_option("-t,--t,--horizon", dm_horizon, "recoverability horizon (default 1)");
  dm->add_option("--safe", dm_safe, "floor / boundary level");
  dm->add_option("--safer", dm_safer, "recovery target level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  char* err = nullptr;
  rta_report* rep = nullptr;

  if (app.got_subcommand(ca)) {
    rta_scenario* sc = load_scenario(ca_opts.config);
    rta_check_options opt;
    fill_options(ca_opts, opt, false, false);
    if (rta_check_adequacy(sc, ca_kind.c_str(), &opt, &rep, &err) != RTA_OK)
      die("check-adequacy", err);
    rta_scenario_free(sc);
    return emit_report(rep, ca_opts, false);
  }

  if (app.got_subcommand(cn)) {
    rta_scenario* sc = load_scenario(cn_opts.config);
    rta_check_options opt;
    fill_options(cn_opts, opt, false, false);
    if (rta_check_noskip(sc, cn_safe.c_str(), &opt, &rep, &err) != RTA_OK)
      die("check-noskip", err);
    rta_scenario_free(sc);
    return emit_report(rep, cn_opts, false);
  }

  if (app.got_subcommand(cr)) {
    rta_scenario* sc = load_scenario(cr_opts.config);
    rta_check_options opt;
    fill_options(cr_opts, opt, false, cr_no_prereq);
    if (rta_check_recoverability(sc, cr_horizon, cr_safe.c_str(), cr_safer.c_str(), &opt, &rep,
                                 &err) != RTA_OK)
      die("check-recoverability", err);
    rta_scenario_free(sc);
    return emit_report(rep, cr_opts, false);
  }

  if (app.got_subcommand(sim)) {
    rta_scenario* sc = load_scenario(sim_config);
    const std::string request = read_file(sim_request);
    char* out_json = nullptr;
    if (rta_simulate_json(sc, request.c_str(), &out_json, &err) != RTA_OK) die("simulate", err);
    write_output(sim_out, out_json);
    rta_string_free(out_json);
    rta_scenario_free(sc);
    return 0;
  }

  if (app.got_subcommand(fal)) {
    rta_scenario* sc = load_scenario(fal_config);
    const std::string request = read_file(fal_request);
    char* out_json = nullptr;
    if (rta_falsify_json(sc, request.c_str(), &out_json, &err) != RTA_OK) die("falsify", err);
    write_output(fal_out, out_json);
    const bool found = std::string(out_json).find("\"found\": true") != std::string::npos;
    rta_string_free(out_json);
    rta_scenario_free(sc);
    return found ? 1 : 0;
  }

  if (app.got_subcommand(dm)) {
    if (dm_opts.dump_dir.empty()) {
      std::fprintf(stderr, "error: dump-smt requires --dump-dir\n");
      return 3;
    }
    rta_scenario* sc = load_scenario(dm_opts.config);
    rta_check_options opt;
    fill_options(dm_opts, opt, true, false);
    rta_status st;
    if (dm_property == "adequacy-prec1" || dm_property == "adequacy-bad") {
      st = rta_check_adequacy(sc, dm_property == "adequacy-bad" ? "bad" : "prec1", &opt, &rep,
                              &err);
    } else if (dm_property == "noskip") {
      st = rta_check_noskip(sc, dm_safe.c_str(), &opt, &rep, &err);
    } else {
      st = rta_check_recoverability(sc, dm_horizon, dm_safe.c_str(), dm_safer.c_str(), &opt, &rep,
                                    &err);
    }
    if (st != RTA_OK) die("dump-smt", err);
    rta_scenario_free(sc);
    return emit_report(rep, dm_opts, true);
  }

  return 3;  // unreachable: require_subcommand(1)
}
