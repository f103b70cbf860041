/* Copyright (c) 2026 the rta-verify authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API for the rta-verify library.
 *
 * The library proves or refutes three properties of sampled runtime-assurance
 * architectures over parametric driving scenarios — sampling-time adequacy,
 * noSkip, and time-bounded recoverability — by compiling symbolic scenario
 * traces into SMT queries (QF_NRA) for an external solver and validating
 * every counterexample with an exact rational oracle.
 *
 * Usage pattern:
 *
 *     rta_scenario* sc = NULL;
 *     char* err = NULL;
 *     if (rta_scenario_load_json(cfg_text, &sc, &err) != RTA_OK) { ... }
 *     rta_check_options opt;
 *     rta_check_options_init(&opt);
 *     rta_report* rep = NULL;
 *     if (rta_check_adequacy(sc, "prec1", &opt, &rep, &err) != RTA_OK) { ... }
 *     char* json = rta_report_json(rep);
 *     ...
 *     rta_string_free(json);
 *     rta_report_free(rep);
 *     rta_scenario_free(sc);
 *
 * All functions returning rta_status place a malloc'd description into
 * *err_msg on failure when err_msg is non-NULL; release it with
 * rta_string_free.  Out-parameters are written only on RTA_OK.  Handles are
 * not thread-safe individually, but distinct handles may be used from
 * distinct threads.
 */

#ifndef RTA_VERIFY_RTA_H
#define RTA_VERIFY_RTA_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rta_status {
  RTA_OK = 0,
  RTA_ERR_INVALID = 1,  /* invalid argument or request */
  RTA_ERR_CONFIG = 2,   /* scenario configuration rejected */
  RTA_ERR_SOLVER = 3,   /* solver harness failure */
  RTA_ERR_INTERNAL = 4  /* internal error (a bug) */
} rta_status;

typedef struct rta_scenario rta_scenario;
typedef struct rta_report rta_report;

/* Library version string, e.g. "1.0.0" (static storage, do not free). */
const char* rta_version(void);

/* ------------------------------------------------------------------------ */
/* Scenarios                                                                 */
/* ------------------------------------------------------------------------ */

/* Parses and validates a scenario configuration (JSON text). */
rta_status rta_scenario_load_json(const char* json_text, rta_scenario** out, char** err_msg);
void rta_scenario_free(rta_scenario*);

/* Static storage inside the handle; valid until rta_scenario_free. */
const char* rta_scenario_name(const rta_scenario*);
const char* rta_scenario_digest(const rta_scenario*); /* sha256 of the config text */

/* ------------------------------------------------------------------------ */
/* Property checks                                                           */
/* ------------------------------------------------------------------------ */

typedef struct rta_check_options {
  /* Solver command line, whitespace-split; the query file path is appended.
   * NULL or empty: the RTA_SMT_SOLVER environment variable, else `z3`. */
  const char* solver_cmd;
  double timeout_sec;  /* per query; <= 0 selects the default (3600) */
  int jobs;            /* parallel cases/queries; <= 0 selects 1 */
  int oracle_prepass;  /* nonzero: concrete falsification before the solver */
  int prepass_budget;  /* samples per falsification; <= 0 selects 10000 */
  int monolithic;      /* adequacy: skip the endpoint-reachability stage */
  int closed_split;    /* adequacy: allow the split at exactly dt */
  int no_prereq;       /* recoverability: skip prerequisite checks */
  int dump_only;       /* write queries, do not run the solver */
  const char* dump_dir;          /* keep .smt2 query files here; NULL: none */
  unsigned long long seed;       /* falsifier seed; 0 selects 1 */
} rta_check_options;

/* Fills every field with its default. */
void rta_check_options_init(rta_check_options*);

/* kind: "prec1" (chain-neighbour) or "bad" (bad-avoidance). */
rta_status rta_check_adequacy(const rta_scenario*, const char* kind, const rta_check_options*,
                              rta_report** out, char** err_msg);

/* sp_safe: boundary level name; NULL selects "safe". */
rta_status rta_check_noskip(const rta_scenario*, const char* sp_safe, const rta_check_options*,
                            rta_report** out, char** err_msg);

/* horizon: number of controller ticks; sp_safe / sp_safer: level names,
 * NULL selects "safe" / "safer". */
rta_status rta_check_recoverability(const rta_scenario*, int horizon, const char* sp_safe,
                                    const char* sp_safer, const rta_check_options*,
                                    rta_report** out, char** err_msg);

/* ------------------------------------------------------------------------ */
/* Reports                                                                   */
/* ------------------------------------------------------------------------ */

/* "holds" | "counterexample" | "unknown" | "timeout" | "error"
 * (static storage inside the handle). */
const char* rta_report_verdict(const rta_report*);

/* Conventional process exit code for the verdict:
 * 0 holds, 1 counterexample, 2 unknown/timeout, 3 error. */
int rta_report_exit_code(const rta_report*);

/* Full report as a JSON document (malloc'd; free with rta_string_free). */
char* rta_report_json(const rta_report*);

/* One-line human-readable summary (malloc'd). */
char* rta_report_summary(const rta_report*);

void rta_report_free(rta_report*);

/* ------------------------------------------------------------------------ */
/* Concrete oracle front ends                                                */
/* ------------------------------------------------------------------------ */

/* Exact simulation.  request_json:
 *   {"initial": {"vehicle": {"x"?, "y", "vel"},
 *                "pedestrian"|"leader": {"x"?, "y", "vel"}},
 *    "ticks": N, "subdiv"?: M,
 *    "optimistic_sensing"?: bool,
 *    "sensed"?: [...], "veh_accels"?: [...], "other_accels"?: [...]}
 * Numeric values may be JSON numbers or exact strings like "7/3".
 * Per-tick arrays may use null for "no override".  Returns a JSON document
 * with per-tick states, accelerations, sensed positions and risk levels. */
rta_status rta_simulate_json(const rta_scenario*, const char* request_json, char** out_json,
                             char** err_msg);

/* Randomized/grid falsification.  request_json:
 *   {"property": "adequacy-prec1"|"adequacy-bad"|"noskip"|"recoverability",
 *    "budget"?: N, "seed"?: S, "subdiv"?: M,
 *    "case"?: "<adequacy case id>",
 *    "sp_safe"?: "...", "sp_safer"?: "...", "horizon"?: T}
 * Returns {"found": false} or {"found": true, "case": ..., "witness": ...};
 * every reported witness has been confirmed exactly. */
rta_status rta_falsify_json(const rta_scenario*, const char* request_json, char** out_json,
                            char** err_msg);

/* Frees strings returned by this library. */
void rta_string_free(char*);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RTA_VERIFY_RTA_H */
