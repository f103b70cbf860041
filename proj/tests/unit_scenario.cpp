// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration parsing, symbolic trace construction, the concrete
// controller/dynamics twin, simulation, and the falsify/confirm oracle.
// Everything here runs without an SMT solver.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rta/digest.hpp"
#include "rta/oracle.hpp"
#include "rta/scenario.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rta;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path configs_dir() {
  const char* d = std::getenv("RTA_CONFIGS_DIR");
  REQUIRE(d != nullptr);
  return d;
}

ScenarioDef load_config(const std::string& stem) {
  return parse_scenario(read_file(configs_dir() / (stem + ".json")));
}

void expect_config_error(const std::string& text, const std::string& needle) {
  try {
    (void)parse_scenario(text);
    FAIL_CHECK("configuration was accepted: " << text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::Config);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

const char* kMinimalPed =
    R"({"kind":"pedCross","odd":{"vel":[0,10],"acc":[-8,2]},"property":{"gaps":[3,2,1]}})";

}  // namespace

// ---------------------------------------------------------------------------
// Configuration parsing
// ---------------------------------------------------------------------------

TEST_CASE("minimal pedestrian configuration fills in defaults") {
  ScenarioDef def = parse_scenario(kMinimalPed);
  CHECK(def.kind == "pedCross");
  CHECK(def.name == "pedCross");  // defaults to the kind
  CHECK(!def.following);
  CHECK(def.dt == Rat(1, 10));
  CHECK(def.step_mode == StepMode::ClampAtZero);
  CHECK(def.senerr == Rat(0));
  CHECK(!def.sense_range);
  CHECK(def.vel.lo == Rat(0));
  CHECK(def.vel.hi == Rat(10));
  CHECK(def.pvel.lo == Rat(1));
  CHECK(def.pvel.hi == Rat(4));
  CHECK(def.cross_y == Rat(30));
  CHECK(def.veh_x == Rat(5));
  CHECK(def.veh_y0.lo == Rat(0));
  CHECK(def.veh_y0.hi == Rat(30));
  CHECK(def.ped_y0.lo == Rat(30));
  CHECK(def.ped_y0.hi == Rat(30));
  CHECK(def.controller.kind == ControllerSpec::Kind::Cautious);
  CHECK(def.controller.decel == Rat(-4));
  CHECK(def.controller.latch == true);
  const auto* fam = std::get_if<GapsPedestrian>(&def.family);
  REQUIRE(fam != nullptr);
  CHECK(fam->g_safer == Rat(3));
  CHECK(fam->max_dec == Rat(-8));  // default
  CHECK(def.config_text == kMinimalPed);
  CHECK(def.config_digest == sha256_hex(kMinimalPed));
}

TEST_CASE("following configuration defaults") {
  ScenarioDef def = parse_scenario(
      R"({"kind":"folRSS","odd":{"vel":[10,20],"acc":[-8,2]},)"
      R"("property":{"rss":{"maxDecLeader":-2}}})");
  CHECK(def.following);
  const auto* rss = std::get_if<RssFollowing>(&def.family);
  REQUIRE(rss != nullptr);
  CHECK(rss->max_acc == Rat(2));     // default
  CHECK(rss->max_dec_f == Rat(-8));  // default
  CHECK(rss->max_dec_l == Rat(-2));
  CHECK(rss->dt == def.dt);  // the response quantum is wired to the tick
  CHECK(rss->sign == RssSign::Literal);
  CHECK(def.lead_vel.lo == def.vel.lo);  // defaults to the follower's box
  CHECK(def.lead_acc.lo == Rat(-2));     // rss leaders brake at most max_dec_l
  CHECK(def.lead_acc.hi == Rat(2));
  CHECK(def.leader.kind == ControllerSpec::Kind::FreeSymbolic);  // default leader
  CHECK(!def.init_gap);
}

TEST_CASE("every shipped configuration parses and is self-consistent") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(configs_dir())) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    std::string text = read_file(entry.path());
    CAPTURE(entry.path().filename().string());
    ScenarioDef def = parse_scenario(text);
    CHECK(def.name == entry.path().stem().string());
    CHECK(def.config_digest == sha256_hex(text));
    CHECK_NOTHROW(validate_family(def.family));
  }
  CHECK(seen >= 14);
}

TEST_CASE("configuration rejection paths") {
  expect_config_error("{", "not valid JSON");
  expect_config_error("[1,2]", "expected a JSON object");
  expect_config_error(R"({"odd":{"vel":[0,1],"acc":[0,1]}})", "/kind");
  expect_config_error(R"({"kind":"flying","odd":{"vel":[0,1],"acc":[0,1]}})", "/kind");
  expect_config_error(
      R"({"kind":"pedCross","bogus":1,"odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "/bogus");
  expect_config_error(
      R"({"kind":"pedCross","dt":0,"odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "/dt");
  expect_config_error(
      R"({"kind":"pedCross","senerr":1,"odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "/senerr");
  expect_config_error(
      R"({"kind":"folGap","senerr":"1/2","odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "/senerr");
  expect_config_error(
      R"({"kind":"pedCross","odd":{"vel":[0,1],"acc":[0,1],"lead_vel":[0,1]},"property":{"gaps":[3,2,1]}})",
      "/odd");
  expect_config_error(
      R"({"kind":"folGap","odd":{"vel":[0,1],"acc":[0,1],"pvel":[1,2]},"property":{"gaps":[3,2,1]}})",
      "/odd/pvel");
  expect_config_error(
      R"({"kind":"folGap","geometry":{},"odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "/geometry");
  expect_config_error(
      R"({"kind":"pedCross","odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[1,2,3]}})",
      "descending");
  expect_config_error(R"({"kind":"pedCross","odd":{"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
                      "/odd/vel");
  expect_config_error(
      R"({"kind":"pedCross","odd":{"vel":[-1,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "nonnegative");
  expect_config_error(
      R"({"kind":"pedCross","odd":{"vel":[5,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "range is empty");
  expect_config_error(R"({"kind":"folRSS","odd":{"vel":[0,1],"acc":[0,1]},"property":{"rss":{}}})",
                      "maxDecLeader");
  expect_config_error(
      R"({"kind":"pedCross","rss_sign_convention":"literal","odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "rss_sign_convention");
  expect_config_error(
      R"({"kind":"folGap","leader":{"kind":"cautious"},"odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "/leader/kind");
  expect_config_error(
      R"({"kind":"pedCross","controller":{"decel":1},"odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "/controller/decel");
  expect_config_error(
      R"({"kind":"pedCross","geometry":{"veh_y":[30,30]},"odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1]}})",
      "/geometry/veh_y");
  expect_config_error(
      R"({"kind":"folGap","odd":{"vel":[0,1],"acc":[0,1],"gap":[-1,5]},"property":{"gaps":[3,2,1]}})",
      "/odd/gap");
  expect_config_error(
      R"({"kind":"folGap","odd":{"vel":[0,1],"acc":[0,1]},"property":{"family":"gaps","gaps":[3,2,1]}})",
      "/property/family");
  expect_config_error(
      R"({"kind":"pedCross","odd":{"vel":[0,1],"acc":[0,1]},"property":{"gaps":[3,2,1],"whoops":1}})",
      "/property/whoops");
}

// ---------------------------------------------------------------------------
// Symbolic traces
// ---------------------------------------------------------------------------

TEST_CASE("pedestrian trace: one controlled tick is satisfied by its concrete twin") {
  ScenarioDef def = load_config("pedCross_3_2_1_s0");  // cautious -8, latch, exact sensing
  SymTraceBuilder tb(def);
  tb.init();
  CHECK(tb.store().symbol_count() == 5);  // veh y/vel, ped x/y/vel
  CHECK(tb.ticks() == 0);

  tb.tick_controlled();
  CHECK(tb.ticks() == 1);
  // Exact sensing adds no symbols; the step adds vel_after/displacement per agent.
  CHECK(tb.store().symbol_count() == 9);
  CHECK(tb.sensing(0).err_sym == -1);
  CHECK(tb.sensing(0).sensed_py_sym == -1);
  CHECK(!tb.veh_accel(0).empty());

  // Concrete twin: veh (y 20, v 10) brakes at -8 (level bad => engaged),
  // ped walks at 1.  Exact one-tick values.
  Assignment a;
  a.set(0, Rat(20));     // veh y0
  a.set(1, Rat(10));     // veh vel0
  a.set(2, Rat(0));      // ped x0
  a.set(3, Rat(30));     // ped y0
  a.set(4, Rat(1));      // ped vel0
  a.set(5, Rat(46, 5));  // veh vel after = 9.2
  a.set(6, Rat(24, 25)); // veh displacement = 0.96
  a.set(7, Rat(1));      // ped vel after
  a.set(8, Rat(1, 10));  // ped displacement
  CHECK(tb.store().satisfied_by(a));
  CHECK(eval(tb.veh_accel(0), a) == Rat(-8));
  CHECK(eval(tb.other_accel(0), a) == Rat(0));

  // Ground-truth inputs at the endpoints.
  CHECK(eval(tb.ground(tb.conf(0)).dist, a) == Rat(10));
  CHECK(eval(tb.ground(tb.conf(1)).dist, a) == Rat(10) - Rat(24, 25));
  CHECK(eval(tb.conf(1).veh.vel, a) == Rat(46, 5));

  // Corrupting the vehicle displacement breaks the step relation.
  Assignment bad = a;
  bad.set(6, Rat(24, 25) + Rat(1, 1000000));
  CHECK(!tb.store().satisfied_by(bad));

  // A trace must be initialized exactly once and before any tick.
  CHECK_THROWS_AS(tb.init(), Error);
  SymTraceBuilder fresh_tb(def);
  CHECK_THROWS_AS(fresh_tb.tick_controlled(), Error);
}

TEST_CASE("noisy sensing registers per-tick error symbols") {
  ScenarioDef def = parse_scenario(
      R"({"kind":"pedCross","senerr":"1/2","odd":{"vel":[0,10],"acc":[-8,2]},)"
      R"("property":{"gaps":[3,2,1]},"controller":{"kind":"cautious","decel":-8}})");
  SymTraceBuilder tb(def);
  tb.init();
  tb.tick_controlled();
  CHECK(tb.store().symbol_count() == 11);  // 5 init + err/spy + 4 step
  CHECK(tb.sensing(0).err_sym >= 0);
  CHECK(tb.sensing(0).sensed_py_sym >= 0);

  // err = 0, spy = true position: the exact-sensing twin still satisfies it.
  Assignment a;
  a.set(0, Rat(20));
  a.set(1, Rat(10));
  a.set(2, Rat(0));
  a.set(3, Rat(30));
  a.set(4, Rat(1));
  a.set(tb.sensing(0).err_sym, Rat(0));
  a.set(tb.sensing(0).sensed_py_sym, Rat(30));
  a.set(7, Rat(46, 5));
  a.set(8, Rat(24, 25));
  a.set(9, Rat(1));
  a.set(10, Rat(1, 10));
  CHECK(tb.store().satisfied_by(a));

  // An over-estimate beyond the error bound violates the sensing constraints:
  // err <= senerr * dist = 5, so spy can be at most 35.
  Assignment over = a;
  over.set(tb.sensing(0).err_sym, Rat(6));
  over.set(tb.sensing(0).sensed_py_sym, Rat(36));
  CHECK(!tb.store().satisfied_by(over));
}

TEST_CASE("following trace: a free tick is satisfied by its concrete twin") {
  ScenarioDef def = load_config("folRSS_m2");
  SymTraceBuilder tb(def);
  tb.init();
  CHECK(tb.store().symbol_count() == 3);  // follower vel, gap, leader vel

  tb.tick_free();
  CHECK(tb.store().symbol_count() == 9);  // + 2 accel symbols + 4 step symbols

  Assignment a;
  a.set(0, Rat(20));       // follower vel0
  a.set(1, Rat(100));      // gap0
  a.set(2, Rat(20));       // leader vel0
  a.set(3, Rat(-1));       // follower accel
  a.set(4, Rat(-2));       // leader accel
  a.set(5, Rat(199, 10));  // follower vel after
  a.set(6, Rat(399, 200)); // follower displacement
  a.set(7, Rat(99, 5));    // leader vel after
  a.set(8, Rat(199, 100)); // leader displacement
  CHECK(tb.store().satisfied_by(a));
  // The gap evolves by the displacement difference.
  CHECK(eval(tb.ground(tb.conf(1)).dist, a) == Rat(100) + Rat(199, 100) - Rat(399, 200));

  // Accelerations outside the actuation boxes are rejected by the store.
  Assignment out = a;
  out.set(3, Rat(-9));  // below acc.lo = -8
  CHECK(!tb.store().satisfied_by(out));
  out = a;
  out.set(4, Rat(-3));  // below lead_acc.lo = max_dec_l = -2
  CHECK(!tb.store().satisfied_by(out));

  // A nonpositive initial gap is excluded by construction.
  Assignment closed_gap = a;
  closed_gap.set(1, Rat(0));
  CHECK(!tb.store().satisfied_by(closed_gap));
}

TEST_CASE("split steps bound the fresh duration symbol") {
  ScenarioDef def = load_config("pedCross_3_2_1_s0");
  SymTraceBuilder tb(def);
  tb.init();
  const Store base = tb.store();

  for (bool closed : {false, true}) {
    SplitStep sp = split_step(def, base, tb.conf(0), lit(Rat(-8)), lit(0L), closed, "s");
    CHECK(sp.store.symbol_count() == 10);  // 5 init + delta + 4 step

    // Mid-tick values from the exact twin at delta = 1/20.
    ConcConf c0{{Rat(5), Rat(20), Rat(10)}, {Rat(0), Rat(30), Rat(1)}};
    ConcConf mid = ConcreteDriver::advance(def, c0, Rat(-8), Rat(0), Rat(1, 20));
    CHECK(mid.veh.vel == Rat(48, 5));
    CHECK(mid.veh.y == Rat(20) + Rat(49, 100));

    Assignment a;
    a.set(0, Rat(20));
    a.set(1, Rat(10));
    a.set(2, Rat(0));
    a.set(3, Rat(30));
    a.set(4, Rat(1));
    a.set(5, Rat(1, 20));   // delta
    a.set(6, Rat(48, 5));   // veh vel at delta
    a.set(7, Rat(49, 100)); // veh displacement over delta
    a.set(8, Rat(1));       // ped vel at delta
    a.set(9, Rat(1, 20));   // ped displacement over delta
    CHECK(sp.store.satisfied_by(a));
    CHECK(eval(sp.delta, a) == Rat(1, 20));
    CHECK(eval(sp.conf.veh.vel, a) == Rat(48, 5));

    // delta = dt is excluded by the open split and admitted by the closed one.
    Assignment at_dt = a;
    at_dt.set(5, Rat(1, 10));
    at_dt.set(6, Rat(46, 5));
    at_dt.set(7, Rat(24, 25));
    at_dt.set(8, Rat(1));
    at_dt.set(9, Rat(1, 10));
    CHECK(sp.store.satisfied_by(at_dt) == closed);

    // delta = 0 is excluded either way.
    Assignment at_zero = a;
    at_zero.set(5, Rat(0));
    at_zero.set(6, Rat(10));
    at_zero.set(7, Rat(0));
    at_zero.set(8, Rat(1));
    at_zero.set(9, Rat(0));
    CHECK(!sp.store.satisfied_by(at_zero));
  }
}

// ---------------------------------------------------------------------------
// Concrete twin
// ---------------------------------------------------------------------------

TEST_CASE("cautious controller: trigger, latch, and feasibility coast") {
  ScenarioDef def = load_config("pedCross_3_2_1_s0");  // decel -8, latch true

  ConcreteDriver d(def);
  // At the safer level nothing triggers: dist 40 >= threshold 36.25 at v 10.
  ConcConf safer{{Rat(5), Rat(-10), Rat(10)}, {Rat(0), Rat(30), Rat(1)}};
  CHECK(d.controlled_veh_accel(safer, Rat(30)) == Rat(0));
  CHECK(!d.engaged());
  // At the safe level the controller engages and brakes.
  ConcConf safe{{Rat(5), Rat(0), Rat(10)}, {Rat(0), Rat(30), Rat(1)}};
  CHECK(d.controlled_veh_accel(safe, Rat(30)) == Rat(-8));
  CHECK(d.engaged());
  // Latched: braking continues even after the state looks safer again.
  CHECK(d.controlled_veh_accel(safer, Rat(30)) == Rat(-8));

  // Without the latch the controller disengages immediately.
  ScenarioDef unlatched = def;
  unlatched.controller.latch = false;
  ConcreteDriver u(unlatched);
  CHECK(u.controlled_veh_accel(safe, Rat(30)) == Rat(-8));
  CHECK(u.controlled_veh_accel(safer, Rat(30)) == Rat(0));
  CHECK(!u.engaged());

  // Feasibility coast: braking a whole tick from v < 0.8 would cross zero,
  // so the engaged controller holds speed instead.
  ConcreteDriver slow(def);
  ConcConf creep{{Rat(5), Rat(747, 25), Rat(1, 20)}, {Rat(0), Rat(30), Rat(1)}};
  CHECK(slow.controlled_veh_accel(creep, Rat(30)) == Rat(0));
  CHECK(slow.engaged());

  // The trigger acts on the sensed position, not the true one: a sensed
  // pedestrian far beyond the crossing line reads as safer.
  ConcreteDriver s(def);
  CHECK(s.controlled_veh_accel(safe, Rat(80)) == Rat(0));
  CHECK(!s.engaged());
}

TEST_CASE("sense-range gating and the remaining controller kinds") {
  ScenarioDef def = parse_scenario(
      R"({"kind":"pedCross","sense_range":15,"odd":{"vel":[0,10],"acc":[-8,2]},)"
      R"("property":{"gaps":[3,2,1]},"controller":{"kind":"cautious","decel":-8}})");
  ConcreteDriver d(def);
  // dist 20 > sense_range 15: undetected, no trigger even at a bad level.
  ConcConf far{{Rat(5), Rat(10), Rat(10)}, {Rat(0), Rat(30), Rat(1)}};
  CHECK(d.controlled_veh_accel(far, Rat(30)) == Rat(0));
  // dist 10 <= 15: detected and triggered.
  ConcConf near{{Rat(5), Rat(20), Rat(10)}, {Rat(0), Rat(30), Rat(1)}};
  CHECK(d.controlled_veh_accel(near, Rat(30)) == Rat(-8));

  ScenarioDef agg = parse_scenario(
      R"({"kind":"pedCross","odd":{"vel":[0,10],"acc":[-8,2]},)"
      R"("property":{"gaps":[3,2,1]},"controller":{"kind":"aggressive"}})");
  ConcreteDriver da(agg);
  CHECK(da.controlled_veh_accel(near, Rat(30)) == Rat(-8));  // acc.lo

  ScenarioDef brk = parse_scenario(
      R"({"kind":"pedCross","odd":{"vel":[0,10],"acc":[-8,2]},)"
      R"("property":{"gaps":[3,2,1]},"controller":{"kind":"brake-constant","decel":-3}})");
  ConcreteDriver db(brk);
  CHECK(db.controlled_veh_accel(far, Rat(30)) == Rat(-3));

  ScenarioDef fre = parse_scenario(
      R"({"kind":"pedCross","odd":{"vel":[0,10],"acc":[-8,2]},)"
      R"("property":{"gaps":[3,2,1]},"controller":{"kind":"free"}})");
  ConcreteDriver df(fre);
  CHECK_THROWS_AS(df.controlled_veh_accel(far, Rat(30)), Error);

  // folRSS_m2's constantly-braking leader defaults to its assumed worst
  // braking (max_dec_l = -2); folGap's default leader is free-symbolic.
  ScenarioDef rss = load_config("folRSS_m2");
  CHECK(rss.leader.kind == ControllerSpec::Kind::BrakeConstant);
  CHECK(rss.leader.decel == Rat(-2));
  ConcreteDriver dl(rss);
  ConcConf gap{{Rat(0), Rat(0), Rat(20)}, {Rat(0), Rat(100), Rat(20)}};
  CHECK(dl.leader_accel(gap) == Rat(-2));

  ScenarioDef fol = load_config("folGap_6_4_2");
  ConcreteDriver dg(fol);
  CHECK_THROWS_AS(dg.leader_accel(gap), Error);
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

TEST_CASE("five braking ticks, exactly") {
  ScenarioDef def = load_config("pedCross_3_2_1_s0");
  ConcConf init{{Rat(5), Rat(20), Rat(10)}, {Rat(0), Rat(30), Rat(1)}};
  SimTrace tr = simulate(def, init, 5);

  REQUIRE(tr.ticks.size() == 5);
  CHECK(tr.final_conf.veh.y == Rat(24));     // 0.96+0.88+0.80+0.72+0.64
  CHECK(tr.final_conf.veh.vel == Rat(6));    // 10 - 5*0.8
  CHECK(tr.final_conf.other.x == Rat(1, 2)); // the pedestrian walks +x at 1
  CHECK(tr.final_conf.other.y == Rat(30));
  CHECK(tr.ticks[0].veh_acc == Rat(-8));
  CHECK(tr.ticks[4].veh_acc == Rat(-8));
  CHECK(tr.ticks[0].other_acc == Rat(0));
  CHECK(tr.ticks[0].sensed_py == Rat(30));  // exact sensing
  CHECK(tr.ticks[0].fine.size() == 2);      // subdiv 1: endpoints only

  REQUIRE(tr.tick_levels.size() == 6);
  for (Level l : tr.tick_levels) CHECK(l == Level::Bad);  // deep inside, still bad

  CHECK_THROWS_AS(simulate(def, init, -1), Error);
  SimOptions bad_subdiv;
  bad_subdiv.subdiv = 0;
  CHECK_THROWS_AS(simulate(def, init, 1, bad_subdiv), Error);
}

TEST_CASE("per-tick overrides and optimistic sensing") {
  ScenarioDef def = load_config("pedCross_3_2_1_s0");
  ConcConf init{{Rat(5), Rat(20), Rat(10)}, {Rat(0), Rat(30), Rat(1)}};

  SimOptions opt;
  opt.veh_accels = {Rat(2)};  // override the controller for tick 0
  SimTrace tr = simulate(def, init, 2, opt);
  CHECK(tr.ticks[0].veh_acc == Rat(2));
  CHECK(tr.ticks[1].veh_acc == Rat(-8));  // tick 1 falls back to the controller
  CHECK(tr.ticks[1].before.veh.vel == Rat(51, 5));

  // With noisy sensing, the optimistic mode over-reports the pedestrian's
  // position by exactly the admissible bound: spy = y + senerr * gap.
  ScenarioDef noisy = parse_scenario(
      R"({"kind":"pedCross","senerr":"1/2","odd":{"vel":[0,10],"acc":[-8,2]},)"
      R"("property":{"gaps":[3,2,1]},"controller":{"kind":"cautious","decel":-8}})");
  SimOptions optimistic;
  optimistic.optimistic_sensing = true;
  SimTrace tn = simulate(noisy, init, 1, optimistic);
  CHECK(tn.ticks[0].sensed_py == Rat(35));  // 30 + (1/2) * 10
  // Sensed distance 15 at v 10 still reads below safer, so the controller
  // triggers despite the over-estimate.
  CHECK(tn.ticks[0].veh_acc == Rat(-8));

  // An explicit sensed schedule wins over the optimistic mode.
  SimOptions sched = optimistic;
  sched.sensed = {Rat(80)};
  SimTrace ts = simulate(noisy, init, 1, sched);
  CHECK(ts.ticks[0].sensed_py == Rat(80));
  CHECK(ts.ticks[0].veh_acc == Rat(0));  // sensed distance 60 reads safer
}

TEST_CASE("fine scans and the disallowed-index helper") {
  ScenarioDef def = load_config("pedCross_3_2_1_s0");
  // Brake from v=2 in the safe band (dist 4.5): levels rise monotonically
  // while braking, crossing into safer within the tick.
  ConcConf c{{Rat(5), Rat(51, 2), Rat(2)}, {Rat(0), Rat(30), Rat(1)}};
  std::vector<Level> fine = scan_fine(def, c, Rat(-8), Rat(0), def.dt, 4);
  REQUIRE(fine.size() == 5);
  CHECK(fine.front() == classify_ground(def, c));
  for (size_t j = 1; j < fine.size(); ++j) CHECK(fine[j] >= fine[j - 1]);

  std::vector<Level> seq = {Level::Safe, Level::Safe, Level::Unsafe, Level::Safe, Level::Bad};
  CHECK(first_disallowed(seq, {Level::Unsafe}) == 2);
  CHECK(first_disallowed(seq, {Level::Bad}) == std::nullopt);      // interior only
  CHECK(first_disallowed(seq, {Level::Bad}, true) == 4);           // closed end
  CHECK(first_disallowed(seq, {Level::Safer}) == std::nullopt);
  CHECK_THROWS_AS(scan_fine(def, c, Rat(-8), Rat(0), def.dt, 0), Error);
}

// ---------------------------------------------------------------------------
// Falsification and confirmation
// ---------------------------------------------------------------------------

TEST_CASE("a ten-second tick admits a level skip and the witness confirms") {
  ScenarioDef def = parse_scenario(
      R"({"kind":"pedCross","dt":10,"odd":{"vel":[0,10],"acc":[-8,2]},)"
      R"("property":{"gaps":[3,2,1]}})");
  auto w = falsify_noskip(def, Level::Safe, 5000, 1);
  REQUIRE(w.has_value());
  CHECK(w->from == Level::Safer);
  CHECK(static_cast<int>(w->to) < static_cast<int>(Level::Safe));
  CHECK(confirm_noskip(def, Level::Safe, *w));

  // Tampered endpoints must not confirm.
  SkipWitness tampered = *w;
  tampered.to = Level::Safer;
  CHECK(!confirm_noskip(def, Level::Safe, tampered));
  SkipWitness off_box = *w;
  off_box.veh_acc = Rat(3);  // outside the actuation box
  CHECK(!confirm_noskip(def, Level::Safe, off_box));

  // Boundaries with nothing above or below have no skips by construction.
  CHECK(!falsify_noskip(def, Level::Bad, 100, 1).has_value());
  CHECK(!falsify_noskip(def, Level::Safer, 100, 1).has_value());
}

TEST_CASE("adequacy falsification finds the mid-tick dip next to the slow-speed rescue") {
  ScenarioDef def = load_config("pedCrBnds_3_2_1_s0");
  const std::vector<Level> disallowed = {Level::Bad, Level::Unsafe};
  // Same seed the neighbour-pair checker derives for this case/orientation.
  auto w = falsify_adequacy(def, Level::Safe, Level::Safer, disallowed, 10000, 15839, 100);
  REQUIRE(w.has_value());
  CHECK(w->from == Level::Safe);
  CHECK(w->to == Level::Safer);
  CHECK((w->mid == Level::Unsafe || w->mid == Level::Bad));
  CHECK(w->delta > 0);
  CHECK(w->delta < def.dt);
  CHECK(confirm_adequacy(def, *w, disallowed, false));

  // The confirmation is against the stated disallowed set, not any dip.
  if (w->mid == Level::Unsafe) CHECK(!confirm_adequacy(def, *w, {Level::Bad}, false));

  // delta must lie strictly inside the tick for an open split.
  AdequacyWitness at_end = *w;
  at_end.delta = def.dt;
  CHECK(!confirm_adequacy(def, at_end, disallowed, false));

  // Determinism: the same seed reproduces the same witness.
  auto w2 = falsify_adequacy(def, Level::Safe, Level::Safer, disallowed, 10000, 15839, 100);
  REQUIRE(w2.has_value());
  CHECK(w2->conf0.veh.y == w->conf0.veh.y);
  CHECK(w2->conf0.veh.vel == w->conf0.veh.vel);
  CHECK(w2->veh_acc == w->veh_acc);
  CHECK(w2->delta == w->delta);

  // An empty disallowed set can have no witness.
  CHECK(!falsify_adequacy(def, Level::Safe, Level::Safer, {}, 100, 1).has_value());
}

TEST_CASE("recoverability falsification finds the creeping vehicle") {
  ScenarioDef def = load_config("pedCross_3_2_1_s0");
  auto w = falsify_recoverability(def, 4, Level::Safe, Level::Safer, 20000, 1);
  REQUIRE(w.has_value());
  // The deterministic creep grid fires: a slow vehicle close to the line
  // holds speed (braking a full tick is infeasible) and never reaches safer.
  CHECK(w->conf0.veh.vel < Rat(1));
  CHECK(ground_dist(def, w->conf0) < Rat(1));
  CHECK(classify_ground(def, w->conf0) == Level::Safe);
  CHECK(confirm_recoverability(def, 4, Level::Safe, Level::Safer, *w));

  RecoveryWitness tampered = *w;
  tampered.violation_level = Level::Bad;
  CHECK(!confirm_recoverability(def, 4, Level::Safe, Level::Safer, tampered));

  RecoveryWitness wrong_tick = *w;
  wrong_tick.violation_tick = 99;
  CHECK(!confirm_recoverability(def, 4, Level::Safe, Level::Safer, wrong_tick));

  CHECK_THROWS_AS(falsify_recoverability(def, -1, Level::Safe, Level::Safer, 10, 1), Error);
}

TEST_CASE("recoverability confirmation replays free-controller schedules") {
  // A free-symbolic vehicle must carry its acceleration schedule in the
  // witness, and the schedule must respect the actuation box.
  ScenarioDef def = parse_scenario(
      R"({"kind":"pedCross","odd":{"vel":[0,10],"acc":[-8,2]},)"
      R"("property":{"gaps":[3,2,1]},"controller":{"kind":"free"}})");
  // Full-throttle toward the line from the safe band: guaranteed violation.
  ConcConf c0{{Rat(5), Rat(3), Rat(10)}, {Rat(5), Rat(30), Rat(1)}};
  REQUIRE(classify_ground(def, c0) == Level::Safe);  // dist 27 in [26.25, 36.25)
  RecoveryWitness w;
  w.conf0 = c0;
  w.veh_accels = {Rat(2), Rat(2), Rat(2)};
  SimTrace tr = simulate(def, c0, 3, [&] {
    SimOptions so;
    so.veh_accels = {Rat(2), Rat(2), Rat(2)};
    return so;
  }());
  // After three full-throttle ticks the state must have sunk below safe.
  REQUIRE(static_cast<int>(tr.tick_levels[3]) < static_cast<int>(Level::Safe));
  // Find the first sampled violation, as the falsifier would.
  int vt = -1;
  for (int i = 0; i <= 3; ++i) {
    if (static_cast<int>(tr.tick_levels[static_cast<size_t>(i)]) <
        static_cast<int>(Level::Safe)) {
      vt = i;
      break;
    }
  }
  REQUIRE(vt >= 0);
  w.violation_tick = vt;
  w.violation_level = tr.tick_levels[static_cast<size_t>(vt)];
  CHECK(confirm_recoverability(def, 3, Level::Safe, Level::Safer, w));

  // Off-box accelerations and missing schedules are rejected.
  RecoveryWitness off = w;
  off.veh_accels[1] = Rat(5);
  CHECK(!confirm_recoverability(def, 3, Level::Safe, Level::Safer, off));
  RecoveryWitness short_sched = w;
  short_sched.veh_accels.pop_back();
  CHECK(!confirm_recoverability(def, 3, Level::Safe, Level::Safer, short_sched));
}
