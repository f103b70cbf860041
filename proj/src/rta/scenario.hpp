// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Parametric driving scenarios: configuration parsing/validation, symbolic
// trace construction (initial-state boxes, sensing, controllers, stepping)
// and an exact concrete twin of the same dynamics used by the oracle.
//
// Two scenario shapes:
//  * pedestrian crossing: a vehicle drives along +y toward a crossing line at
//    cross_y; a pedestrian walks along +x on the crossing band.  Ground-truth
//    risk is measured against the crossing line (dist = cross_y - veh_y); the
//    controller acts on a *sensed* pedestrian position with bounded
//    per-sample error (0 <= err <= senerr * distance-to-ped, fresh each tick).
//  * following: a follower and a leader both move along +y; risk is measured
//    on the gap (lead_y - veh_y) and sensing is exact.
//
// The operational domain (odd) bounds *initial* states only; successor states
// are constrained by the dynamics alone.  Acceleration symbols are always
// bounded by the actuation boxes, which model physical limits, not the odd.

#pragma once

#include "rta/kinematics.hpp"
#include "rta/safety.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rta {

struct ControllerSpec {
  enum class Kind { Cautious, Aggressive, FreeSymbolic, BrakeConstant };
  Kind kind = Kind::Cautious;
  Rat decel = Rat(-4);  // braking command for Cautious / BrakeConstant
  bool latch = true;    // Cautious: stay engaged once triggered
};

struct RatRange {
  Rat lo, hi;
  bool contains(const Rat& v) const { return lo <= v && v <= hi; }
};

struct ScenarioDef {
  std::string name;
  std::string kind;  // "pedCross" | "pedCrBnds" | "folGap" | "folRSS"
  bool following = false;
  Family family;

  Rat dt = Rat(1, 10);
  StepMode step_mode = StepMode::ClampAtZero;

  Rat senerr = Rat(0);
  std::optional<Rat> sense_range;  // absent = unlimited

  ControllerSpec controller;  // the vehicle/follower's safe controller
  ControllerSpec leader;      // following scenarios only

  // Operational domain (initial states) and actuation boxes.
  RatRange vel, acc;                      // vehicle / follower
  RatRange pvel{Rat(1), Rat(4)};          // pedestrian walking speed
  RatRange lead_vel, lead_acc;            // following scenarios
  std::optional<RatRange> init_gap;       // following: initial gap box (default: gap > 0)

  // Pedestrian-crossing geometry.
  Rat cross_y = Rat(30);
  Rat veh_x = Rat(5);
  RatRange veh_y0{Rat(0), Rat(30)};   // upper bound is exclusive at cross_y
  RatRange ped_x0{Rat(0), Rat(10)};
  RatRange ped_y0{Rat(30), Rat(30)};  // crossing band [start, end]

  std::string config_text;    // raw configuration this was parsed from
  std::string config_digest;  // sha256 of config_text
};

// Parses and validates a scenario configuration (JSON text).  Violations are
// reported as Error(Config) with a JSON-pointer path to the offending field.
ScenarioDef parse_scenario(const std::string& json_text);

// ---------------------------------------------------------------------------
// Symbolic traces
// ---------------------------------------------------------------------------

struct SymAgent {
  Term x, y, vel;
};

struct SymConf {
  SymAgent veh;    // the controlled vehicle / follower
  SymAgent other;  // pedestrian or leader
};

// Per-tick sensing symbols (for witness extraction); -1 when sensing is exact.
struct SensingRec {
  int err_sym = -1;
  int sensed_py_sym = -1;
};

// Builds one symbolic trace over a shared constraint store.  Ticks are added
// one at a time; the store after each call contains the whole prefix, and the
// store being a value type lets checkers branch one prefix into many queries.
class SymTraceBuilder {
 public:
  explicit SymTraceBuilder(ScenarioDef def);

  // Registers the initial symbols and the odd/geometry constraints.
  const SymConf& init();

  // Appends one controller-driven tick (sensing, engagement, stepping).
  const SymConf& tick_controlled();

  // Appends one tick with fresh actuation-bounded accelerations (the
  // scenario's physical one-step transition, used by adequacy and skip
  // queries).  The pedestrian keeps constant speed (acceleration 0).
  const SymConf& tick_free();

  const Store& store() const { return store_; }
  const ScenarioDef& def() const { return def_; }
  int ticks() const { return static_cast<int>(confs_.size()) - 1; }
  const SymConf& conf(int i) const { return confs_.at(static_cast<size_t>(i)); }
  // Acceleration terms applied during tick i (conf i -> conf i+1).
  const Term& veh_accel(int i) const { return accels_.at(static_cast<size_t>(i)).first; }
  const Term& other_accel(int i) const { return accels_.at(static_cast<size_t>(i)).second; }
  const SensingRec& sensing(int i) const { return sensing_.at(static_cast<size_t>(i)); }

  // Ground-truth risk inputs at a configuration.
  RiskInputs ground(const SymConf&) const;

 private:
  ScenarioDef def_;
  Store store_;
  std::vector<SymConf> confs_;
  std::vector<std::pair<Term, Term>> accels_;
  std::vector<SensingRec> sensing_;
  Constraint engaged_;
  int tick_count_ = 0;

  Term controlled_accel(const SymConf& conf, int k);
  Term leader_accel(int k);
  SymConf step_agents(const SymConf&, const Term& veh_acc, const Term& oth_acc, const Term& dt,
                      const std::string& tag);
};

// A partial step of symbolic duration `delta` from `from`, re-using the
// acceleration terms of an already-encoded tick.  Returns the extended store,
// the intermediate configuration, and the fresh duration symbol, constrained
// to 0 < delta < dt (or 0 < delta <= dt when `closed` is set).
struct SplitStep {
  Store store;
  SymConf conf;
  Term delta;
};
SplitStep split_step(const ScenarioDef&, const Store& base, const SymConf& from,
                     const Term& veh_acc, const Term& oth_acc, bool closed,
                     std::string_view tag);

// ---------------------------------------------------------------------------
// Concrete twin
// ---------------------------------------------------------------------------

struct ConcAgent {
  Rat x, y, vel;
};

struct ConcConf {
  ConcAgent veh, other;
};

Rat ground_dist(const ScenarioDef&, const ConcConf&);
Level classify_ground(const ScenarioDef&, const ConcConf&);

// Exact mirror of the symbolic controller and dynamics.  Holds the engagement
// latch; one instance drives one trace.
class ConcreteDriver {
 public:
  explicit ConcreteDriver(const ScenarioDef& def) : def_(&def) {}

  // Acceleration the vehicle's controller commands in `conf`, given the
  // sensed pedestrian position for this tick (ignored by following
  // scenarios).  Throws for a free-symbolic vehicle controller.
  Rat controlled_veh_accel(const ConcConf& conf, const Rat& sensed_py);

  // The leader's acceleration (following scenarios; throws for free-symbolic
  // leaders, whose choices the caller must supply).
  Rat leader_accel(const ConcConf& conf) const;

  bool engaged() const { return engaged_; }

  // Advances both agents by `duration` with the given accelerations.
  static ConcConf advance(const ScenarioDef&, const ConcConf&, const Rat& veh_acc,
                          const Rat& oth_acc, const Rat& duration);

 private:
  const ScenarioDef* def_;
  bool engaged_ = false;
};

}  // namespace rta
