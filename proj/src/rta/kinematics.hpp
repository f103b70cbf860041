// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// One-dimensional constant-acceleration motion over a sampling interval,
// in exact arithmetic and as symbolic constraints.  Agents move along a
// fixed axis; a tick applies one acceleration for the whole interval.
//
// Two stepping modes:
//  * Unclamped: v' = v + a*d, displacement = (v + v')*d/2, even if v' < 0.
//  * ClampAtZero (default): a braking body stops at v = 0 and stays stopped
//    for the remainder of the interval (stop time -v/a, extra distance
//    v^2 / (-2a)), so speeds never go negative.
//
// Both modes satisfy the exact semigroup law: stepping d1 then d2 with the
// same acceleration equals stepping d1 + d2.

#pragma once

#include "rta/symcore.hpp"

namespace rta {

enum class StepMode { ClampAtZero, Unclamped };

// --- Exact arithmetic ------------------------------------------------------

struct ConcreteStep {
  Rat vel_after;
  Rat displacement;
};

// Requires vel >= 0 in ClampAtZero mode (speeds are clamped, so they stay
// nonnegative along any trajectory that starts nonnegative).
ConcreteStep step_concrete(const Rat& vel, const Rat& accel, const Rat& dt, StepMode mode);

// --- Symbolic constraints ---------------------------------------------------

struct SymStep {
  Store store;        // extended with the fresh symbols and step constraints
  Term vel_after;     // fresh symbol
  Term displacement;  // fresh symbol
};

// Emits the stepping relation for one interval.  `dt` may be any term
// (a literal for ordinary ticks, a bounded symbol for split-time queries);
// the encoding never divides by a symbol.  In ClampAtZero mode the relation
// is the two-branch disjunction
//     (v + a*dt >= 0  and  v' = v + a*dt      and  disp = (v + v')*dt*(1/2))
//  or (v + a*dt <  0  and  v' = 0             and  disp*(-2a) = v*v)
// whose clamped branch is the stop-distance equation multiplied through by
// -2a (sound: that branch implies a < 0 whenever v >= 0).  When `accel` is
// the literal 0 the clamped branch is infeasible for v >= 0 and only the
// first branch is emitted.
SymStep step_symbolic(const Store& store, const Term& vel, const Term& accel, const Term& dt,
                      StepMode mode, std::string_view tag_prefix);

}  // namespace rta
