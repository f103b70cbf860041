// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Bridge to an external SMT-LIB2 solver process (QF_NRA).
//
//  * emit() renders a constraint store to SMT-LIB2 text, deterministically:
//    the same store yields byte-identical output (symbols in registration
//    order named "v<i>_<tag>", conjuncts in assertion order, rationals as
//    integers or (/ p q)).
//  * solve() writes the text to a file, spawns the solver command on it,
//    enforces a wall-clock deadline (the process is killed on expiry), and
//    parses the verdict plus, for sat, the model.
//  * replay() re-evaluates every conjunct of the store under a parsed model
//    with exact rational arithmetic.  Algebraic (irrational) model values
//    cannot be replayed exactly and are flagged so callers can refuse to
//    accept the model as a counterexample witness.
//
// The solver command comes from the caller; default_solver_argv() resolves
// the RTA_SMT_SOLVER environment variable (whitespace-split) and falls back
// to `z3` on PATH.

#pragma once

#include "rta/symcore.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rta {

enum class SolveStatus { Sat, Unsat, Unknown, Timeout, SolverError };

const char* solve_status_name(SolveStatus);

struct Model {
  // Exact rational values by symbol index.
  std::map<int, Rat> values;
  // Symbols whose model value is algebraic/unparseable; present here and
  // absent from `values`.
  std::vector<int> irrational;
};

struct SolveOptions {
  std::vector<std::string> argv;  // solver command; the query path is appended
  double timeout_sec = 3600;
  std::string dump_file;  // keep the query text here (otherwise a temp file)
  bool dump_only = false; // write the query and skip the solver entirely
};

struct SolveResult {
  SolveStatus status = SolveStatus::SolverError;
  std::optional<Model> model;  // present iff status == Sat and a model parsed
  std::string transcript;      // raw solver output (stdout + stderr)
  double seconds = 0;
};

std::string emit(const Store&);

// Throws Error(Solver) only on harness-level failures (cannot write the
// query file); solver misbehavior is reported as SolveStatus::SolverError.
SolveResult solve(const Store&, const SolveOptions&);

// True iff every conjunct evaluates to true under the model.  Throws
// Error(Invalid) if the model lacks a value for a registered symbol or
// carries an irrational value for one (exact replay impossible).
bool replay(const Store&, const Model&);

std::vector<std::string> default_solver_argv();

}  // namespace rta
