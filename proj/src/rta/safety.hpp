// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Risk levels and the guard families that assign a level to a state.
//
// The risk chain is bad < unsafe < safe < safer.  Each family defines, per
// level, a raw reachability test S_level ("the state clears this level's
// threshold"); the *guard* of a level is the prioritized ladder
//     guard(safer)  =  S_safer
//     guard(safe)   = !S_safer and S_safe
//     guard(unsafe) = !S_safer and !S_safe and S_unsafe
//     guard(bad)    = !S_safer and !S_safe and !S_unsafe
// which makes the four guards pairwise disjoint and exhaustive by
// construction, so every state has exactly one level even for families whose
// raw tests overlap (e.g. the bounded pedestrian family's low-speed rescue).
//
// Families:
//  * GapsPedestrian: distance-to-crossing thresholds  stop_dist + g * v  with
//    stop_dist = v^2 / (-2 * max_dec).
//  * GapsPedestrianBounded: same, with safer additionally reached at
//    v <= low_spd or dist >= far_away.
//  * GapsFollowing: gap thresholds  max(0, stop_f - stop_l) + g * v_f, both
//    stopping distances at the shared max_dec.
//  * RssFollowing: gap thresholds  d_rss(k * dt)  for k = 3, 2, 1, where
//      d_rss(rho) = v_f rho + max_acc rho^2/2
//                   - (v_f + max_acc rho)^2 / (2 max_dec_f)
//                   - v_l^2 / (2 max_dec_l)
//    with signed (negative) decelerations as written ("literal" convention:
//    the leader term adds); the "standard" convention subtracts the leader
//    term instead.

#pragma once

#include "rta/symcore.hpp"

#include <string>
#include <variant>

namespace rta {

enum class Level : int { Bad = 0, Unsafe = 1, Safe = 2, Safer = 3 };
inline constexpr int kLevelCount = 4;

const char* level_name(Level);
Level level_from_name(std::string_view);  // throws Error(Invalid)

enum class RssSign { Literal, Standard };

struct GapsPedestrian {
  Rat g_safer, g_safe, g_unsafe;
  Rat max_dec;  // < 0
};

struct GapsPedestrianBounded {
  Rat g_safer, g_safe, g_unsafe;
  Rat max_dec;  // < 0
  Rat low_spd, far_away;
};

struct GapsFollowing {
  Rat g_safer, g_safe, g_unsafe;
  Rat max_dec;  // < 0, shared by follower and leader stopping distances
};

struct RssFollowing {
  Rat max_acc;    // >= 0, follower's worst acceleration during the response
  Rat max_dec_f;  // < 0
  Rat max_dec_l;  // < 0
  Rat dt;         // > 0, response-time quantum; tier k uses rho = k * dt
  RssSign sign = RssSign::Literal;
};

using Family = std::variant<GapsPedestrian, GapsPedestrianBounded, GapsFollowing, RssFollowing>;

// Throws Error(Config) if parameters are out of range (max_dec >= 0, gaps not
// descending, dt <= 0, ...).
void validate_family(const Family&);

bool family_needs_leader(const Family&);

// The quantities a family's tests are evaluated over.  `lead_vel` is used
// only by following families and may be empty otherwise.
struct RiskInputs {
  Term dist;
  Term vel;
  Term lead_vel;
};

// Raw reachability test S_level for one level (not disjoint across levels).
Constraint reach_raw(const Family&, Level, const RiskInputs&);

// Prioritized, pairwise-disjoint, exhaustive guard for one level.
Constraint guard(const Family&, Level, const RiskInputs&);

// Exact concrete classification; the ladder evaluated over rationals.
// Written against the family parameters directly (not by evaluating the
// symbolic guards) so tests can cross-check the two routes independently.
Level classify(const Family&, const Rat& dist, const Rat& vel, const Rat& lead_vel = Rat(0));

// The distance threshold a state must clear for S_level (the margin part
// only; the bounded family's low-speed / far-away rescues are not distance
// thresholds).  Used by sampling heuristics to bias near level boundaries.
Rat threshold(const Family&, Level, const Rat& vel, const Rat& lead_vel = Rat(0));

}  // namespace rta
