// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0

#include "rta/oracle.hpp"

#include <algorithm>
#include <random>

namespace rta {

namespace {

using Rng = std::mt19937_64;

BigInt rat_floor(const Rat& r) {
  BigInt n = numerator(r), d = denominator(r);  // canonical form has d > 0
  BigInt q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

BigInt rat_ceil(const Rat& r) { return -rat_floor(-r); }

// Uniform rational on the grid k/denom inside [lo, hi]; collapses to lo when
// the range holds no grid point.
Rat sample_rat(Rng& rng, const Rat& lo, const Rat& hi, long long denom = 1000) {
  if (lo > hi) return lo;
  long long a = rat_ceil(lo * Rat(denom)).convert_to<long long>();
  long long b = rat_floor(hi * Rat(denom)).convert_to<long long>();
  if (a > b) return lo;
  std::uniform_int_distribution<long long> dist(a, b);
  return Rat(BigInt(dist(rng)), BigInt(denom));
}

Rat sample_range(Rng& rng, const RatRange& r) { return sample_rat(rng, r.lo, r.hi); }

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

// Box endpoints are where clamping and engagement flips live, so they get
// extra probability mass.
Rat sample_accel(Rng& rng, const RatRange& box) {
  switch (pick(rng, 4)) {
    case 0: return box.lo;
    case 1: return box.hi;
    default: return sample_range(rng, box);
  }
}

Rat sample_vel(Rng& rng, const RatRange& box) {
  switch (pick(rng, 6)) {
    case 0: return box.lo;
    case 1: return box.hi;
    case 2: {  // low-speed band: slow approaches behave qualitatively differently
      Rat hi = box.lo + 1;
      if (hi > box.hi) hi = box.hi;
      return sample_rat(rng, box.lo, hi);
    }
    default: return sample_range(rng, box);
  }
}

struct DistRange {
  Rat lo, hi;
  bool empty() const { return lo > hi; }
};

// Range of initial ground distances the scenario's initial-state box admits.
DistRange init_dist_range(const ScenarioDef& def) {
  if (def.following) {
    if (def.init_gap) return {def.init_gap->lo, def.init_gap->hi};
    Rat cap = threshold(def.family, Level::Safer, def.vel.hi, def.lead_vel.lo) + 30;
    if (cap < 60) cap = 60;
    return {Rat(1, 1000), cap};
  }
  Rat lo = def.cross_y - def.veh_y0.hi;
  if (lo < Rat(1, 1000)) lo = Rat(1, 1000);  // the vehicle starts strictly before the line
  return {lo, def.cross_y - def.veh_y0.lo};
}

// Distance band in which a state with the given speeds sits at `lvl`
// (heuristic: the bounded family's rescue clauses are ignored here; samples
// are re-checked with the exact classifier before use).
DistRange level_region(const ScenarioDef& def, Level lvl, const Rat& v, const Rat& vl) {
  DistRange r = init_dist_range(def);
  const Rat step(1, 1000);
  if (lvl == Level::Bad) {
    Rat t = threshold(def.family, Level::Unsafe, v, vl) - step;
    if (t < r.hi) r.hi = t;
  } else {
    Rat tl = threshold(def.family, lvl, v, vl);
    if (tl > r.lo) r.lo = tl;
    if (lvl != Level::Safer) {
      Rat th = threshold(def.family, static_cast<Level>(static_cast<int>(lvl) + 1), v, vl) - step;
      if (th < r.hi) r.hi = th;
    }
  }
  return r;
}

ConcConf make_conf(const ScenarioDef& def, const Rat& dist, const Rat& v, const Rat& other_vel,
                   const Rat& ped_x, const Rat& ped_y) {
  ConcConf c;
  if (def.following) {
    c.veh = {Rat(0), Rat(0), v};
    c.other = {Rat(0), dist, other_vel};
  } else {
    c.veh = {def.veh_x, def.cross_y - dist, v};
    c.other = {ped_x, ped_y, other_vel};
  }
  return c;
}

// Does `c` satisfy the initial-state box (the part of admissibility that is
// not enforced by construction in make_conf)?
bool init_admissible(const ScenarioDef& def, const ConcConf& c) {
  if (!def.vel.contains(c.veh.vel)) return false;
  if (def.following) {
    if (!def.lead_vel.contains(c.other.vel)) return false;
    Rat gap = c.other.y - c.veh.y;
    if (gap <= 0) return false;
    if (def.init_gap && !def.init_gap->contains(gap)) return false;
  } else {
    if (!def.veh_y0.contains(c.veh.y) || c.veh.y >= def.cross_y) return false;
    if (!def.ped_x0.contains(c.other.x)) return false;
    if (!def.ped_y0.contains(c.other.y)) return false;
    if (!def.pvel.contains(c.other.vel)) return false;
  }
  return true;
}

bool other_accel_admissible(const ScenarioDef& def, const Rat& oa) {
  return def.following ? def.lead_acc.contains(oa) : oa == 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

std::vector<Level> scan_fine(const ScenarioDef& def, const ConcConf& from, const Rat& veh_acc,
                             const Rat& other_acc, const Rat& dur, int subdiv) {
  if (subdiv < 1) throw Error(ErrCode::Invalid, "subdiv must be at least 1");
  std::vector<Level> out;
  out.reserve(static_cast<size_t>(subdiv) + 1);
  out.push_back(classify_ground(def, from));
  for (int j = 1; j <= subdiv; ++j) {
    ConcConf c =
        ConcreteDriver::advance(def, from, veh_acc, other_acc, dur * Rat(j) / Rat(subdiv));
    out.push_back(classify_ground(def, c));
  }
  return out;
}

std::optional<int> first_disallowed(const std::vector<Level>& fine,
                                    const std::vector<Level>& disallowed, bool closed_end) {
  const int n = static_cast<int>(fine.size()) - 1;
  const int last = closed_end ? n : n - 1;
  for (int j = 1; j <= last; ++j) {
    if (std::find(disallowed.begin(), disallowed.end(), fine[static_cast<size_t>(j)]) !=
        disallowed.end())
      return j;
  }
  return std::nullopt;
}

SimTrace simulate(const ScenarioDef& def, const ConcConf& init, int ticks, const SimOptions& opt) {
  if (ticks < 0) throw Error(ErrCode::Invalid, "tick count must be non-negative");
  if (opt.subdiv < 1) throw Error(ErrCode::Invalid, "subdiv must be at least 1");
  SimTrace tr;
  tr.tick_levels.push_back(classify_ground(def, init));
  ConcConf conf = init;
  ConcreteDriver driver(def);
  for (int k = 0; k < ticks; ++k) {
    const auto ku = static_cast<size_t>(k);
    SimTick tk;
    tk.before = conf;

    tk.sensed_py = conf.other.y;
    if (!def.following && def.senerr != 0) {
      if (ku < opt.sensed.size() && opt.sensed[ku]) {
        tk.sensed_py = *opt.sensed[ku];
      } else if (opt.optimistic_sensing) {
        Rat gap = conf.other.y - conf.veh.y;
        if (gap < 0) gap = 0;
        tk.sensed_py = conf.other.y + def.senerr * gap;
      }
    }

    if (ku < opt.veh_accels.size() && opt.veh_accels[ku]) {
      tk.veh_acc = *opt.veh_accels[ku];
    } else {
      tk.veh_acc = driver.controlled_veh_accel(conf, tk.sensed_py);
    }
    if (def.following) {
      if (ku < opt.other_accels.size() && opt.other_accels[ku]) {
        tk.other_acc = *opt.other_accels[ku];
      } else {
        tk.other_acc = driver.leader_accel(conf);
      }
    } else {
      tk.other_acc = 0;
    }

    tk.fine = scan_fine(def, conf, tk.veh_acc, tk.other_acc, def.dt, opt.subdiv);
    conf = ConcreteDriver::advance(def, conf, tk.veh_acc, tk.other_acc, def.dt);
    tr.tick_levels.push_back(classify_ground(def, conf));
    tr.ticks.push_back(std::move(tk));
  }
  tr.final_conf = conf;
  return tr;
}

// ---------------------------------------------------------------------------
// Falsification
// ---------------------------------------------------------------------------

std::optional<AdequacyWitness> falsify_adequacy(const ScenarioDef& def, Level from, Level to,
                                                const std::vector<Level>& disallowed, int budget,
                                                std::uint64_t seed, int subdiv) {
  if (disallowed.empty()) return std::nullopt;
  Rng rng(seed);
  for (int it = 0; it < budget; ++it) {
    Rat v = sample_vel(rng, def.vel);
    Rat ov = def.following ? sample_range(rng, def.lead_vel) : sample_range(rng, def.pvel);
    DistRange reg = level_region(def, from, v, def.following ? ov : Rat(0));
    if (reg.empty()) continue;
    Rat dist = sample_rat(rng, reg.lo, reg.hi);
    ConcConf c0 = make_conf(def, dist, v, ov, sample_range(rng, def.ped_x0),
                            sample_range(rng, def.ped_y0));
    if (!init_admissible(def, c0) || classify_ground(def, c0) != from) continue;
    Rat va = sample_accel(rng, def.acc);
    Rat oa = def.following ? sample_accel(rng, def.lead_acc) : Rat(0);
    if (classify_ground(def, ConcreteDriver::advance(def, c0, va, oa, def.dt)) != to) continue;
    std::vector<Level> fine = scan_fine(def, c0, va, oa, def.dt, subdiv);
    if (auto j = first_disallowed(fine, disallowed)) {
      AdequacyWitness w;
      w.conf0 = c0;
      w.veh_acc = va;
      w.other_acc = oa;
      w.delta = def.dt * Rat(*j) / Rat(subdiv);
      w.from = from;
      w.to = to;
      w.mid = fine[static_cast<size_t>(*j)];
      return w;
    }
  }
  return std::nullopt;
}

std::optional<SkipWitness> falsify_noskip(const ScenarioDef& def, Level sp_safe, int budget,
                                          std::uint64_t seed) {
  const int sp = static_cast<int>(sp_safe);
  if (sp <= 0 || sp + 1 >= kLevelCount) return std::nullopt;  // no level below or above
  Rng rng(seed);
  for (int it = 0; it < budget; ++it) {
    Level from = static_cast<Level>(sp + 1 + pick(rng, kLevelCount - sp - 1));
    Rat v = sample_vel(rng, def.vel);
    Rat ov = def.following ? sample_range(rng, def.lead_vel) : sample_range(rng, def.pvel);
    DistRange reg = level_region(def, from, v, def.following ? ov : Rat(0));
    if (reg.empty()) continue;
    // A skip needs the state barely above its level's floor, so shrink the
    // band most of the time.
    Rat hi = reg.hi;
    switch (pick(rng, 3)) {
      case 0:
        hi = reg.lo + Rat(1, 2);
        break;
      case 1:
        hi = reg.lo + 2;
        break;
      default:
        break;
    }
    if (hi > reg.hi) hi = reg.hi;
    Rat dist = sample_rat(rng, reg.lo, hi);
    ConcConf c0 = make_conf(def, dist, v, ov, sample_range(rng, def.ped_x0),
                            sample_range(rng, def.ped_y0));
    if (!init_admissible(def, c0)) continue;
    Level l0 = classify_ground(def, c0);
    if (static_cast<int>(l0) <= sp) continue;
    Rat va = pick(rng, 2) ? def.acc.hi : sample_accel(rng, def.acc);
    Rat oa(0);
    if (def.following) oa = pick(rng, 2) ? def.lead_acc.lo : sample_accel(rng, def.lead_acc);
    ConcConf c1 = ConcreteDriver::advance(def, c0, va, oa, def.dt);
    Level l1 = classify_ground(def, c1);
    if (static_cast<int>(l1) < sp) {
      SkipWitness w;
      w.conf0 = c0;
      w.veh_acc = va;
      w.other_acc = oa;
      w.from = l0;
      w.to = l1;
      return w;
    }
  }
  return std::nullopt;
}

namespace {

RecoveryWitness make_recovery_witness(const ScenarioDef& def, const ConcConf& c0,
                                      const SimTrace& tr, int violation_tick, Level lvl) {
  RecoveryWitness w;
  w.conf0 = c0;
  for (const SimTick& tk : tr.ticks) {
    w.veh_accels.push_back(tk.veh_acc);
    if (def.following) w.other_accels.push_back(tk.other_acc);
    if (!def.following && def.senerr != 0) w.sensed.push_back(tk.sensed_py);
  }
  w.violation_tick = violation_tick;
  w.violation_level = lvl;
  return w;
}

}  // namespace

std::optional<RecoveryWitness> falsify_recoverability(const ScenarioDef& def, int horizon,
                                                      Level sp_safe, Level sp_safer, int budget,
                                                      std::uint64_t seed) {
  if (horizon < 0) throw Error(ErrCode::Invalid, "horizon must be non-negative");
  Rng rng(seed);
  int used = 0;

  auto check = [&](const ConcConf& c0, const SimOptions& so) -> std::optional<RecoveryWitness> {
    ++used;
    if (!init_admissible(def, c0) || classify_ground(def, c0) != sp_safe) return std::nullopt;
    SimTrace tr = simulate(def, c0, horizon, so);
    for (int i = 0; i <= horizon; ++i) {
      Level li = tr.tick_levels[static_cast<size_t>(i)];
      if (static_cast<int>(li) < static_cast<int>(sp_safe))
        return make_recovery_witness(def, c0, tr, i, li);
    }
    Level lt = tr.tick_levels[static_cast<size_t>(horizon)];
    if (static_cast<int>(lt) < static_cast<int>(sp_safer))
      return make_recovery_witness(def, c0, tr, -1, lt);
    return std::nullopt;
  };

  const bool noisy = !def.following && def.senerr != 0;
  const bool free_leader =
      def.following && def.leader.kind == ControllerSpec::Kind::FreeSymbolic;

  // Deterministic creep grid: slow approaches very close to the crossing line
  // stop short tick after tick and can sit below the recovery target for the
  // whole horizon without ever looking dramatic to a box sampler.
  if (!def.following) {
    for (int kv = 1; kv <= 16 && used < budget; ++kv) {
      Rat v0(kv, 20);
      if (!def.vel.contains(v0)) continue;
      for (int kd = 1; kd <= 24 && used < budget; ++kd) {
        Rat d0(kd, 20);
        if (!def.veh_y0.contains(def.cross_y - d0)) continue;
        ConcConf c0 = make_conf(def, d0, v0, def.pvel.lo,
                                (def.ped_x0.lo + def.ped_x0.hi) / 2, def.ped_y0.lo);
        SimOptions so;
        if (auto w = check(c0, so)) return w;
        if (noisy && used < budget) {
          so.optimistic_sensing = true;
          if (auto w = check(c0, so)) return w;
        }
      }
    }
  }

  while (used < budget) {
    Rat v = sample_vel(rng, def.vel);
    Rat ov = def.following ? sample_range(rng, def.lead_vel) : sample_range(rng, def.pvel);
    DistRange reg = level_region(def, sp_safe, v, def.following ? ov : Rat(0));
    if (reg.empty()) continue;
    Rat dist = sample_rat(rng, reg.lo, reg.hi);
    ConcConf c0 = make_conf(def, dist, v, ov, sample_range(rng, def.ped_x0),
                            sample_range(rng, def.ped_y0));

    SimOptions so;
    if (noisy && pick(rng, 2)) so.optimistic_sensing = true;
    if (free_leader) {
      switch (pick(rng, 3)) {
        case 0:
          so.other_accels.assign(static_cast<size_t>(horizon), def.lead_acc.lo);
          break;
        case 1:
          so.other_accels.assign(static_cast<size_t>(horizon), def.lead_acc.hi);
          break;
        default:
          for (int i = 0; i < horizon; ++i)
            so.other_accels.push_back(sample_accel(rng, def.lead_acc));
          break;
      }
    }
    if (auto w = check(c0, so)) return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Confirmation
// ---------------------------------------------------------------------------

bool confirm_adequacy(const ScenarioDef& def, const AdequacyWitness& w,
                      const std::vector<Level>& disallowed, bool closed_split) {
  try {
    if (!init_admissible(def, w.conf0)) return false;
    if (!def.acc.contains(w.veh_acc) || !other_accel_admissible(def, w.other_acc)) return false;
    if (w.delta <= 0) return false;
    if (closed_split ? w.delta > def.dt : w.delta >= def.dt) return false;
    if (classify_ground(def, w.conf0) != w.from) return false;
    ConcConf c1 = ConcreteDriver::advance(def, w.conf0, w.veh_acc, w.other_acc, def.dt);
    if (classify_ground(def, c1) != w.to) return false;
    ConcConf mid = ConcreteDriver::advance(def, w.conf0, w.veh_acc, w.other_acc, w.delta);
    Level ml = classify_ground(def, mid);
    if (ml != w.mid) return false;
    if (std::find(disallowed.begin(), disallowed.end(), ml) == disallowed.end()) return false;
    // The two-legged path must land exactly where the one-shot step does.
    ConcConf rejoin =
        ConcreteDriver::advance(def, mid, w.veh_acc, w.other_acc, def.dt - w.delta);
    return rejoin.veh.y == c1.veh.y && rejoin.veh.vel == c1.veh.vel &&
           rejoin.other.x == c1.other.x && rejoin.other.y == c1.other.y &&
           rejoin.other.vel == c1.other.vel;
  } catch (const Error&) {
    return false;
  }
}

bool confirm_noskip(const ScenarioDef& def, Level sp_safe, const SkipWitness& w) {
  try {
    if (!init_admissible(def, w.conf0)) return false;
    if (!def.acc.contains(w.veh_acc) || !other_accel_admissible(def, w.other_acc)) return false;
    Level l0 = classify_ground(def, w.conf0);
    if (l0 != w.from || static_cast<int>(l0) <= static_cast<int>(sp_safe)) return false;
    ConcConf c1 = ConcreteDriver::advance(def, w.conf0, w.veh_acc, w.other_acc, def.dt);
    Level l1 = classify_ground(def, c1);
    return l1 == w.to && static_cast<int>(l1) < static_cast<int>(sp_safe);
  } catch (const Error&) {
    return false;
  }
}

bool confirm_recoverability(const ScenarioDef& def, int horizon, Level sp_safe, Level sp_safer,
                            const RecoveryWitness& w) {
  try {
    if (horizon < 0) return false;
    if (!init_admissible(def, w.conf0)) return false;
    if (classify_ground(def, w.conf0) != sp_safe) return false;

    const auto h = static_cast<size_t>(horizon);
    SimOptions so;
    if (def.controller.kind == ControllerSpec::Kind::FreeSymbolic) {
      if (w.veh_accels.size() != h) return false;
      for (const Rat& a : w.veh_accels) {
        if (!def.acc.contains(a)) return false;
        so.veh_accels.push_back(a);
      }
    }
    if (def.following && def.leader.kind == ControllerSpec::Kind::FreeSymbolic) {
      if (w.other_accels.size() != h) return false;
      for (const Rat& a : w.other_accels) {
        if (!def.lead_acc.contains(a)) return false;
        so.other_accels.push_back(a);
      }
    }
    const bool noisy = !def.following && def.senerr != 0;
    if (noisy && !w.sensed.empty()) {
      if (w.sensed.size() != h) return false;
      for (const Rat& s : w.sensed) so.sensed.push_back(s);
    }

    SimTrace tr = simulate(def, w.conf0, horizon, so);

    if (noisy && !w.sensed.empty()) {
      // Each sensed position must respect the per-tick error bound at the
      // states the replay actually visits.
      for (size_t i = 0; i < h; ++i) {
        const ConcConf& at = tr.ticks[i].before;
        Rat gap = at.other.y - at.veh.y;
        if (gap < 0) gap = 0;
        Rat err = w.sensed[i] - at.other.y;
        if (err < 0) err = -err;
        if (err > def.senerr * gap) return false;
      }
    }

    if (w.violation_tick >= 0) {
      if (w.violation_tick > horizon) return false;
      Level li = tr.tick_levels[static_cast<size_t>(w.violation_tick)];
      return li == w.violation_level && static_cast<int>(li) < static_cast<int>(sp_safe);
    }
    Level lt = tr.tick_levels[h];
    return lt == w.violation_level && static_cast<int>(lt) < static_cast<int>(sp_safer);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace rta
