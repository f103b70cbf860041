// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Property checkers: compile a scenario into SMT queries, drive the solver,
// validate counterexamples, and aggregate verdicts into reports.
//
// Three properties over the risk chain bad < unsafe < safe < safer:
//
//  * Sampling-time adequacy ("prec1" chain-neighbour form and "bad"
//    bad-avoidance form): between two consecutive samples the continuous
//    trajectory must not visit a level outside the allowed set determined by
//    the two sampled endpoints.  Checked case by case (see adequacy_cases),
//    each case in two stages: first whether the endpoint combination is
//    reachable at all in one tick of the free dynamics, then — only if it is
//    — whether a mid-tick split 0 < delta < dt can sit at a disallowed level.
//    The second leg of the split is not encoded: the dynamics form an exact
//    semigroup, so a model of the first leg extends uniquely.
//
//  * noSkip: no single tick of the free dynamics may jump from a level above
//    sp_safe to a level below it without sampling sp_safe in between.
//
//  * Time-bounded recoverability: from any initial state at exactly sp_safe,
//    the safe controller must (a) be at sp_safer or better after `horizon`
//    ticks and (b) never sample below sp_safe on the way.  (a) is one query
//    at the horizon, (b) one query per tick.  Bad-avoidance adequacy and
//    noSkip are checked first as prerequisites (recorded, never silently
//    assumed) because the per-tick floor only constrains *samples*; the
//    prerequisites are what carry it between samples.
//
// Counterexample discipline: a sat result is never reported as a
// counterexample by itself.  The model must replay exactly (rational
// arithmetic over every conjunct) and the extracted witness must be confirmed
// by the concrete oracle; any failure is escalated as a solver/tool error.
// Independently, a cheap oracle falsification pre-pass runs before the solver
// (disable with oracle_prepass = false) — a confirmed concrete witness needs
// no solver at all.

#pragma once

#include "rta/oracle.hpp"
#include "rta/smtgate.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rta {

struct CheckOptions {
  std::vector<std::string> solver_argv;  // empty: RTA_SMT_SOLVER or `z3`
  double timeout_sec = 3600;             // per query
  int jobs = 1;                          // parallel cases/queries
  bool oracle_prepass = true;
  int prepass_budget = 10000;
  bool monolithic = false;    // adequacy: skip the endpoint-reachability stage
  bool closed_split = false;  // adequacy: allow delta = dt in the split
  bool no_prereq = false;     // recoverability: skip prerequisite checks
  std::string dump_dir;       // keep every query as an .smt2 file here
  bool dump_only = false;     // write queries, do not run the solver
  std::uint64_t seed = 1;     // falsifier determinism
};

struct QueryRec {
  std::string id;
  std::string status;  // sat | unsat | unknown | timeout | solver-error | dumped | skipped
  double seconds = 0;
  std::string note;
};

struct CaseRec {
  std::string id;
  std::string status;  // holds | counterexample | unknown | timeout | error | vacuous
  double seconds = 0;
  std::string origin;  // counterexamples: "smt" | "oracle"
  std::string note;
  std::vector<QueryRec> queries;
  nlohmann::json witness;  // null unless counterexample
};

struct PrereqRec {
  std::string property;
  std::string verdict;
};

struct CheckReport {
  std::string property;  // adequacy-prec1 | adequacy-bad | noskip | recoverability
  std::string scenario;
  std::string config_digest;
  std::string verdict;  // holds | counterexample | unknown | timeout | error
  double seconds = 0;

  int horizon = -1;                  // recoverability
  std::string sp_safe, sp_safer;     // recoverability; noskip uses sp_safe
  bool prereqs_applicable = false;   // recoverability only
  bool prereqs_verified = false;
  std::vector<PrereqRec> prerequisites;

  std::vector<CaseRec> cases;

  // Echo of the options the check ran under.
  bool monolithic = false, closed_split = false, oracle_prepass = true, dump_only = false;
  double timeout_sec = 3600;
  int jobs = 1;

  nlohmann::json to_json() const;
  std::string summary() const;  // one human-readable line
};

// holds -> 0, counterexample -> 1, unknown/timeout -> 2, error -> 3.
int verdict_exit_code(const std::string& verdict);

CheckReport check_adequacy(const ScenarioDef&, bool chain_neighbor, const CheckOptions&);
CheckReport check_noskip(const ScenarioDef&, Level sp_safe, const CheckOptions&);
CheckReport check_recoverability(const ScenarioDef&, int horizon, Level sp_safe, Level sp_safer,
                                 const CheckOptions&);

// {"exact": "p/q", "approx": <double>} — the exact string is authoritative.
nlohmann::json jrat(const Rat&);

// A configuration as {"vehicle": ..., "pedestrian"|"leader": ...} with
// exact+approx coordinates.
nlohmann::json conf_json(const ScenarioDef&, const ConcConf&);

// Witness rendering shared by reports and the falsification front ends.
nlohmann::json witness_json(const ScenarioDef&, const AdequacyWitness&);
nlohmann::json witness_json(const ScenarioDef&, const SkipWitness&);
nlohmann::json witness_json(const ScenarioDef&, const RecoveryWitness&, int horizon);

}  // namespace rta
