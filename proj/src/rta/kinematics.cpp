// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0

#include "rta/kinematics.hpp"

namespace rta {

ConcreteStep step_concrete(const Rat& vel, const Rat& accel, const Rat& dt, StepMode mode) {
  if (dt < 0) throw Error(ErrCode::Invalid, "negative step duration");
  Rat vel_end = vel + accel * dt;
  if (mode == StepMode::Unclamped || vel_end >= 0) {
    return {vel_end, (vel + vel_end) * dt / 2};
  }
  // Clamp at zero: requires a nonnegative entry speed, stops at t* = -v/a.
  if (vel < 0)
    throw Error(ErrCode::Invalid, "clamped step entered with negative speed");
  // vel_end < 0 with vel >= 0 implies accel < 0, so the division is safe.
  return {Rat(0), vel * vel / (Rat(-2) * accel)};
}

SymStep step_symbolic(const Store& store, const Term& vel, const Term& accel, const Term& dt,
                      StepMode mode, std::string_view tag_prefix) {
  auto [s1, vel_after] = store.fresh(std::string(tag_prefix) + "_vel");
  auto [s2, disp] = s1.fresh(std::string(tag_prefix) + "_disp");

  Term vel_end = vel + accel * dt;
  Constraint straight = c_and({
      vel_end >= lit(0L),
      vel_after == vel_end,
      disp == (vel + vel_after) * dt * lit(Rat(1, 2)),
  });

  bool accel_is_zero_literal =
      accel.node().kind == TermKind::Lit && accel.node().lit == 0;
  if (mode == StepMode::Unclamped || accel_is_zero_literal) {
    // With a = 0 the clamped branch would need v < 0, which cannot happen
    // for clamped trajectories; emit the straight equations unconditionally.
    Constraint plain = c_and({
        vel_after == vel_end,
        disp == (vel + vel_after) * dt * lit(Rat(1, 2)),
    });
    return {s2.require(mode == StepMode::Unclamped ? plain : straight), vel_after, disp};
  }

  Constraint clamped = c_and({
      vel_end < lit(0L),
      vel_after == lit(0L),
      disp * (lit(-2L) * accel) == vel * vel,
  });
  return {s2.require(c_or({straight, clamped})), vel_after, disp};
}

}  // namespace rta
