// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact concrete oracle: rational-arithmetic simulation of a scenario,
// randomized + grid falsification of the checked properties, and independent
// confirmation of counterexample witnesses.
//
// Everything here is exact — states, accelerations, sensed positions and
// split times are rationals, stepped with the same closed-form kinematics the
// symbolic encoding uses — so a confirmed witness is a real counterexample,
// not a numerical artifact, and a failed confirmation is proof that a solver
// model does not replay.
//
// Falsifiers are deterministic for a fixed seed.  They sample level-region
// boundaries preferentially (that is where every interesting transition
// lives) and, for time-bounded recoverability of pedestrian scenarios, scan a
// deterministic low-speed/short-distance grid before random search, because
// the classic failure mode is a slow creep toward the crossing line that
// random box sampling is unlikely to hit.

#pragma once

#include "rta/adequacy_cases.hpp"
#include "rta/scenario.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rta {

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

struct SimOptions {
  // Number of equal sub-intervals each tick is scanned at; level sequences
  // are recorded at tau = j * dt / subdiv for j = 0..subdiv.
  int subdiv = 1;
  // Worst-case admissible over-estimate of the pedestrian position each tick
  // (delays engagement as long as possible).  Ignored when senerr is 0.
  bool optimistic_sensing = false;
  // Per-tick overrides; entries beyond the vectors' length (or disengaged
  // optionals) fall back to the defaults above / the scenario's controllers.
  std::vector<std::optional<Rat>> sensed;        // sensed pedestrian y
  std::vector<std::optional<Rat>> veh_accels;    // replaces the vehicle controller
  std::vector<std::optional<Rat>> other_accels;  // replaces the leader controller
};

struct SimTick {
  ConcConf before;
  Rat sensed_py;  // pedestrian y the controller acted on (== true y when exact)
  Rat veh_acc, other_acc;
  std::vector<Level> fine;  // levels at tau = j * dt / subdiv, j = 0..subdiv
};

struct SimTrace {
  std::vector<SimTick> ticks;
  ConcConf final_conf;
  std::vector<Level> tick_levels;  // ground level at each tick boundary, size ticks+1
};

SimTrace simulate(const ScenarioDef&, const ConcConf& init, int ticks, const SimOptions& = {});

// Ground levels along one constant-acceleration step, at tau = j * dur /
// subdiv for j = 0..subdiv.
std::vector<Level> scan_fine(const ScenarioDef&, const ConcConf& from, const Rat& veh_acc,
                             const Rat& other_acc, const Rat& dur, int subdiv);

// Index of the first entry of `fine` whose level is in `disallowed`,
// restricted to the interior j = 1..subdiv-1 (or j = 1..subdiv when
// `closed_end`).  nullopt when the segment stays within the allowed set.
std::optional<int> first_disallowed(const std::vector<Level>& fine,
                                    const std::vector<Level>& disallowed, bool closed_end = false);

// ---------------------------------------------------------------------------
// Witnesses
// ---------------------------------------------------------------------------

struct AdequacyWitness {
  ConcConf conf0;
  Rat veh_acc, other_acc;
  Rat delta;  // time into the tick at which the disallowed level is hit
  Level from, to, mid;
};

struct SkipWitness {
  ConcConf conf0;
  Rat veh_acc, other_acc;
  Level from, to;
};

struct RecoveryWitness {
  ConcConf conf0;
  std::vector<Rat> sensed;        // per-tick sensed pedestrian y (empty when exact)
  std::vector<Rat> veh_accels;    // accelerations actually applied, for reporting
  std::vector<Rat> other_accels;  // leader accelerations (empty for pedestrians)
  int violation_tick = -1;        // -1: horizon query; i >= 0: floor query at tick i
  Level violation_level = Level::Bad;
};

// ---------------------------------------------------------------------------
// Falsification (randomized search for concrete counterexamples)
// ---------------------------------------------------------------------------

std::optional<AdequacyWitness> falsify_adequacy(const ScenarioDef&, Level from, Level to,
                                                const std::vector<Level>& disallowed, int budget,
                                                std::uint64_t seed, int subdiv = 100);

std::optional<SkipWitness> falsify_noskip(const ScenarioDef&, Level sp_safe, int budget,
                                          std::uint64_t seed);

std::optional<RecoveryWitness> falsify_recoverability(const ScenarioDef&, int horizon,
                                                      Level sp_safe, Level sp_safer, int budget,
                                                      std::uint64_t seed);

// ---------------------------------------------------------------------------
// Confirmation (exact validation of a witness, however it was produced)
// ---------------------------------------------------------------------------

// Checks endpoints, the mid-step level at the witness's exact delta, interval
// membership of delta (open, or half-open when `closed_split`), and that
// stepping delta then dt-delta lands exactly on the one-step successor.
bool confirm_adequacy(const ScenarioDef&, const AdequacyWitness&,
                      const std::vector<Level>& disallowed, bool closed_split = false);

bool confirm_noskip(const ScenarioDef&, Level sp_safe, const SkipWitness&);

// Re-simulates the witness: the vehicle controller is re-derived from the
// scenario (free-symbolic vehicles replay the recorded accelerations), the
// sensed schedule is checked against the per-tick error bound, and concrete
// leaders override the recorded accelerations.  Confirms iff the start level
// is sp_safe and the recorded violation is reproduced.
bool confirm_recoverability(const ScenarioDef&, int horizon, Level sp_safe, Level sp_safer,
                            const RecoveryWitness&);

}  // namespace rta
