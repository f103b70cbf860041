// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic, symbolic core, kinematics, risk guards, and adequacy
// case tables.  Everything here runs without an SMT solver.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rta/adequacy_cases.hpp"
#include "rta/digest.hpp"
#include "rta/kinematics.hpp"
#include "rta/safety.hpp"

#include <random>

using namespace rta;

namespace {

Rat Q(const char* s) { return rat_from_string(s); }

// Uniform small rationals on a 1/denominator grid, for property tests.
struct RatGen {
  std::mt19937_64 rng;
  explicit RatGen(std::uint64_t seed) : rng(seed) {}
  Rat in(long lo_num, long hi_num, long den) {
    std::uniform_int_distribution<long> d(lo_num, hi_num);
    return Rat(d(rng), den);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Rationals and digests
// ---------------------------------------------------------------------------

TEST_CASE("rational parsing is exact") {
  CHECK(Q("350/9") == Rat(350, 9));
  CHECK(Q("-4.75") == Rat(-19, 4));
  CHECK(Q("0.1") == Rat(1, 10));
  CHECK(Q("1e-3") == Rat(1, 1000));
  CHECK(Q("2.5e2") == Rat(250));
  CHECK(Q("+7") == Rat(7));
  CHECK(Q("-0") == Rat(0));
  CHECK_THROWS_AS(Q(""), Error);
  CHECK_THROWS_AS(Q("abc"), Error);
  CHECK_THROWS_AS(Q("1/"), Error);
  CHECK_THROWS_AS(Q("1.2.3"), Error);
}

TEST_CASE("rational printing") {
  CHECK(rat_to_string(Rat(7, 3)) == "7/3");
  CHECK(rat_to_string(Rat(250)) == "250");
  CHECK(rat_to_string(Rat(-19, 4)) == "-19/4");
  CHECK(rat_to_string(Q(rat_to_string(Rat(123456, 789)).c_str())) ==
        rat_to_string(Rat(123456, 789)));
  CHECK(rat_to_double(Rat(1, 4)) == doctest::Approx(0.25));
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // Multi-block message (needs two compression rounds).
  CHECK(sha256_hex(std::string(64, 'a') + std::string(64, 'b')).size() == 64);
  CHECK(sha256_hex("x") != sha256_hex("y"));
}

// ---------------------------------------------------------------------------
// Symbolic core
// ---------------------------------------------------------------------------

TEST_CASE("term evaluation over exact rationals") {
  Store s;
  auto [s1, x] = s.fresh("x");
  Assignment a;
  a.set(0, Rat(4));

  CHECK(eval(lit(2L) + lit(3L) * x, a) == Rat(14));
  CHECK(eval(x - lit(10L), a) == Rat(-6));
  CHECK(eval(-x, a) == Rat(-4));
  CHECK(eval(x / lit(8L), a) == Rat(1, 2));
  CHECK(eval(min_term(x, lit(1L)), a) == Rat(1));
  CHECK(eval(max_term(x, lit(1L)), a) == Rat(4));
  CHECK(eval(ite(x > lit(0L), lit(1L), lit(-1L)), a) == Rat(1));
  CHECK(eval(ite(x < lit(0L), lit(1L), lit(-1L)), a) == Rat(-1));
  CHECK_THROWS_AS(eval(x / lit(0L), a), Error);

  Assignment empty;
  CHECK_THROWS_AS(eval(x, empty), Error);
}

TEST_CASE("constraint evaluation and boolean literals") {
  Assignment a;
  CHECK(eval(c_and({}), a) == true);   // empty conjunction is true
  CHECK(eval(c_or({}), a) == false);   // empty disjunction is false
  CHECK(eval(c_bool(true), a) == true);
  CHECK(eval(c_not(c_bool(true)), a) == false);
  CHECK(eval(c_and({c_bool(true), c_bool(false)}), a) == false);
  CHECK(eval(c_or({c_bool(false), c_bool(true)}), a) == true);
}

TEST_CASE("structural negation agrees with semantic negation") {
  Store s;
  auto [s1, x] = s.fresh("x");
  auto [s2, y] = s1.fresh("y");

  std::vector<Constraint> cs = {
      x < y, x <= y, x == y, x >= y, x > y,
      c_and({x > lit(0L), y > lit(0L)}),
      c_or({x > lit(2L), y < lit(-1L)}),
      c_not(c_and({x >= y, y >= lit(0L)})),
      c_not(c_not(x < lit(5L))),
  };

  RatGen gen(7);
  for (int i = 0; i < 200; ++i) {
    Assignment a;
    a.set(0, gen.in(-40, 40, 8));
    a.set(1, gen.in(-40, 40, 8));
    for (const Constraint& c : cs) {
      CAPTURE(i);
      CHECK(eval(negate(c), a) == !eval(c, a));
      CHECK(eval(negate(negate(c)), a) == eval(c, a));
    }
  }
}

TEST_CASE("stores are immutable values") {
  Store base;
  auto [s1, x] = base.fresh("x");
  CHECK(s1.symbol_count() == 1);
  CHECK(base.symbol_count() == 0);

  Store left = s1.require(x > lit(0L));
  Store right = s1.require(x < lit(0L));
  CHECK(s1.conjuncts().size() == 0);
  CHECK(left.conjuncts().size() == 1);
  CHECK(right.conjuncts().size() == 1);

  Assignment pos;
  pos.set(0, Rat(3));
  CHECK(left.satisfied_by(pos));
  CHECK(!right.satisfied_by(pos));

  // Requiring a constraint over an unregistered symbol is an error.
  Term ghost = symbol_term(5);
  CHECK_THROWS_AS((void)s1.require(ghost > lit(0L)), Error);
}

TEST_CASE("symbol names are deterministic and tagged") {
  Store s;
  auto [s1, a] = s.fresh("veh vel");
  auto [s2, b] = s1.fresh("t0_acc");
  CHECK(s2.symbol_name(0).substr(0, 2) == "v0");
  CHECK(s2.symbol_name(1).substr(0, 2) == "v1");
  CHECK(s2.symbol_tag(1) == "t0_acc");
  // Sanitized names stay within the SMT-LIB simple-symbol alphabet.
  for (char c : s2.symbol_name(0)) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
    CHECK(ok);
  }
}

TEST_CASE("collect_symbols finds every mention") {
  Store s;
  auto [s1, x] = s.fresh("x");
  auto [s2, y] = s1.fresh("y");
  std::set<int> syms;
  collect_symbols(ite(x > y, x + lit(1L), y * y), syms);
  CHECK(syms == std::set<int>{0, 1});
}

// ---------------------------------------------------------------------------
// Kinematics
// ---------------------------------------------------------------------------

TEST_CASE("one-step motion: frozen values") {
  // Accelerating: v 10 -> 10.2 over 0.1 s, distance 1.01 m.
  ConcreteStep s = step_concrete(Rat(10), Rat(2), Rat(1, 10), StepMode::ClampAtZero);
  CHECK(s.vel_after == Rat(51, 5));
  CHECK(s.displacement == Rat(101, 100));

  // Hard braking through zero: stops after t* = 1/8 s, creep distance 1/16 m.
  ConcreteStep c = step_concrete(Rat(1), Rat(-8), Rat(1, 2), StepMode::ClampAtZero);
  CHECK(c.vel_after == Rat(0));
  CHECK(c.displacement == Rat(1, 16));

  // The unclamped twin lets the speed go negative.
  ConcreteStep u = step_concrete(Rat(1), Rat(-8), Rat(1, 2), StepMode::Unclamped);
  CHECK(u.vel_after == Rat(-3));
  CHECK(u.displacement == Rat(-1, 2));

  CHECK_THROWS_AS(step_concrete(Rat(-1), Rat(-8), Rat(1, 2), StepMode::ClampAtZero), Error);
  CHECK_THROWS_AS(step_concrete(Rat(1), Rat(1), Rat(-1), StepMode::ClampAtZero), Error);
}

TEST_CASE("stepping is an exact semigroup in both modes") {
  RatGen gen(11);
  for (StepMode mode : {StepMode::ClampAtZero, StepMode::Unclamped}) {
    for (int i = 0; i < 4000; ++i) {
      Rat v = mode == StepMode::ClampAtZero ? gen.in(0, 400, 10) : gen.in(-200, 400, 10);
      Rat a = gen.in(-80, 20, 10);
      Rat d1 = gen.in(1, 60, 100);
      Rat d2 = gen.in(1, 60, 100);

      ConcreteStep leg1 = step_concrete(v, a, d1, mode);
      ConcreteStep leg2 = step_concrete(leg1.vel_after, a, d2, mode);
      ConcreteStep whole = step_concrete(v, a, d1 + d2, mode);
      CAPTURE(rat_to_string(v));
      CAPTURE(rat_to_string(a));
      CHECK(leg2.vel_after == whole.vel_after);
      CHECK(leg1.displacement + leg2.displacement == whole.displacement);
    }
  }
}

TEST_CASE("symbolic stepping is satisfied exactly by its concrete twin") {
  RatGen gen(13);
  for (StepMode mode : {StepMode::ClampAtZero, StepMode::Unclamped}) {
    for (int i = 0; i < 300; ++i) {
      Rat v = mode == StepMode::ClampAtZero ? gen.in(0, 200, 10) : gen.in(-100, 200, 10);
      Rat a = gen.in(-80, 20, 10);
      Rat d = gen.in(1, 50, 100);

      Store s;
      auto [s1, vt] = s.fresh("v");
      auto [s2, at] = s1.fresh("a");
      Store bound = s2.require(vt == lit(v)).require(at == lit(a));
      SymStep sym = step_symbolic(bound, vt, at, lit(d), mode, "t");
      ConcreteStep conc = step_concrete(v, a, d, mode);

      Assignment good;
      good.set(0, v);
      good.set(1, a);
      good.set(2, conc.vel_after);
      good.set(3, conc.displacement);
      CHECK(sym.store.satisfied_by(good));
      CHECK(eval(sym.vel_after, good) == conc.vel_after);

      Assignment bad = good;
      bad.set(3, conc.displacement + Rat(1, 1000000));
      CHECK(!sym.store.satisfied_by(bad));
    }
  }
}

TEST_CASE("symbolic stepping with a literal zero acceleration stays linear") {
  Store s;
  auto [s1, vt] = s.fresh("v");
  SymStep sym = step_symbolic(s1.require(vt == lit(3L)), vt, lit(0L), lit(Rat(1, 2)),
                              StepMode::ClampAtZero, "t");
  Assignment a;
  a.set(0, Rat(3));
  a.set(1, Rat(3));         // vel_after
  a.set(2, Rat(3, 2));      // displacement
  CHECK(sym.store.satisfied_by(a));
}

// ---------------------------------------------------------------------------
// Risk guards
// ---------------------------------------------------------------------------

TEST_CASE("level names round trip") {
  for (int i = 0; i < kLevelCount; ++i) {
    Level l = static_cast<Level>(i);
    CHECK(level_from_name(level_name(l)) == l);
  }
  CHECK_THROWS_AS(level_from_name("safest"), Error);
}

TEST_CASE("pedestrian gaps: frozen thresholds and classification") {
  GapsPedestrian fam{Rat(3), Rat(2), Rat(1), Rat(-8)};
  // At v = 10: stopping distance 100/16 = 6.25; thresholds 36.25 / 26.25 / 16.25.
  CHECK(threshold(fam, Level::Safer, Rat(10)) == Rat(145, 4));
  CHECK(threshold(fam, Level::Safe, Rat(10)) == Rat(105, 4));
  CHECK(threshold(fam, Level::Unsafe, Rat(10)) == Rat(65, 4));

  Family f = fam;
  CHECK(classify(f, Rat(40), Rat(10)) == Level::Safer);
  CHECK(classify(f, Rat(145, 4), Rat(10)) == Level::Safer);  // boundary is inclusive
  CHECK(classify(f, Rat(30), Rat(10)) == Level::Safe);
  CHECK(classify(f, Rat(20), Rat(10)) == Level::Unsafe);
  CHECK(classify(f, Rat(10), Rat(10)) == Level::Bad);
  // A stopped vehicle clears every threshold at any nonnegative distance.
  CHECK(classify(f, Rat(0), Rat(0)) == Level::Safer);
}

TEST_CASE("bounded pedestrian gaps: low-speed and far-away rescues") {
  GapsPedestrianBounded fam{Rat(3), Rat(2), Rat(1), Rat(-8), Rat(4, 5), Rat(50)};
  Family f = fam;
  CHECK(classify(f, Rat(1, 100), Rat(1, 2)) == Level::Safer);   // slow => safer
  CHECK(classify(f, Rat(1, 100), Rat(4, 5)) == Level::Safer);   // boundary inclusive
  CHECK(classify(f, Rat(1, 100), Rat(1)) == Level::Bad);        // just too fast
  CHECK(classify(f, Rat(55), Rat(10)) == Level::Safer);         // far => safer
  CHECK(classify(f, Rat(50), Rat(10)) == Level::Safer);         // boundary inclusive
  CHECK(classify(f, Rat(40), Rat(10)) == Level::Safer);         // plain margin
  CHECK(classify(f, Rat(30), Rat(10)) == Level::Safe);
}

TEST_CASE("shared-deceleration following gaps: frozen thresholds") {
  GapsFollowing fam{Rat(3), Rat(2), Rat(1), Rat(-8)};
  // vf = 20, vl = 10: stopping-distance shortfall (400-100)/16 = 18.75.
  CHECK(threshold(fam, Level::Safer, Rat(20), Rat(10)) == Rat(315, 4));
  Family f = fam;
  CHECK(classify(f, Rat(80), Rat(20), Rat(10)) == Level::Safer);
  CHECK(classify(f, Rat(60), Rat(20), Rat(10)) == Level::Safe);
  CHECK(classify(f, Rat(40), Rat(20), Rat(10)) == Level::Unsafe);
  CHECK(classify(f, Rat(30), Rat(20), Rat(10)) == Level::Bad);
  // A slower follower owes no stopping-distance shortfall.
  CHECK(classify(f, Rat(30), Rat(10), Rat(20)) == Level::Safer);
}

TEST_CASE("response-time following gaps: frozen thresholds, both conventions") {
  RssFollowing lit_fam{Rat(2), Rat(-8), Rat(-2), Rat(1, 10), RssSign::Literal};
  // vf = vl = 20, tier rho = 0.1: 2 + 0.01 + 20.2^2/16 + 100 = 10201/80.
  CHECK(threshold(lit_fam, Level::Unsafe, Rat(20), Rat(20)) == Rat(10201, 80));
  CHECK(threshold(lit_fam, Level::Safe, Rat(20), Rat(20)) == Rat(2601, 20));
  CHECK(threshold(lit_fam, Level::Safer, Rat(20), Rat(20)) == Rat(10609, 80));

  Family fl = lit_fam;
  CHECK(classify(fl, Rat(127), Rat(20), Rat(20)) == Level::Bad);
  CHECK(classify(fl, Rat(128), Rat(20), Rat(20)) == Level::Unsafe);
  CHECK(classify(fl, Rat(131), Rat(20), Rat(20)) == Level::Safe);
  CHECK(classify(fl, Rat(133), Rat(20), Rat(20)) == Level::Safer);

  // The standard convention subtracts the leader's stopping distance instead.
  RssFollowing std_fam{Rat(2), Rat(-8), Rat(-2), Rat(1, 10), RssSign::Standard};
  CHECK(threshold(std_fam, Level::Unsafe, Rat(20), Rat(20)) == Rat(-5799, 80));
  Family fs = std_fam;
  CHECK(classify(fs, Rat(0), Rat(20), Rat(20)) == Level::Safer);
}

TEST_CASE("family validation rejects out-of-range parameters") {
  CHECK_THROWS_AS(validate_family(GapsPedestrian{Rat(1), Rat(2), Rat(3), Rat(-8)}), Error);
  CHECK_THROWS_AS(validate_family(GapsPedestrian{Rat(3), Rat(2), Rat(1), Rat(8)}), Error);
  CHECK_THROWS_AS(validate_family(GapsPedestrianBounded{Rat(3), Rat(2), Rat(1), Rat(-8),
                                                        Rat(-1), Rat(50)}), Error);
  CHECK_THROWS_AS(validate_family(RssFollowing{Rat(-2), Rat(-8), Rat(-2), Rat(1, 10)}), Error);
  CHECK_THROWS_AS(validate_family(RssFollowing{Rat(2), Rat(8), Rat(-2), Rat(1, 10)}), Error);
  CHECK_THROWS_AS(validate_family(RssFollowing{Rat(2), Rat(-8), Rat(-2), Rat(0)}), Error);
  CHECK_NOTHROW(validate_family(GapsPedestrian{Rat(3), Rat(2), Rat(1), Rat(-8)}));
}

TEST_CASE("guards partition states and agree with exact classification") {
  std::vector<Family> fams = {
      GapsPedestrian{Rat(3), Rat(2), Rat(1), Rat(-8)},
      GapsPedestrianBounded{Rat(3), Rat(2), Rat(1), Rat(-8), Rat(4, 5), Rat(50)},
      GapsFollowing{Rat(6), Rat(4), Rat(2), Rat(-8)},
      RssFollowing{Rat(2), Rat(-8), Rat(-2), Rat(1, 10), RssSign::Literal},
  };

  RatGen gen(17);
  for (const Family& fam : fams) {
    const bool following = family_needs_leader(fam);
    for (int i = 0; i < 1500; ++i) {
      Rat dist = gen.in(-200, 4000, 20);
      Rat vel = gen.in(0, 800, 20);
      Rat lv = following ? gen.in(0, 800, 20) : Rat(0);

      Level by_classify = classify(fam, dist, vel, lv);

      RiskInputs in{lit(dist), lit(vel), following ? lit(lv) : Term()};
      Assignment none;
      int true_guards = 0;
      Level by_guard = Level::Bad;
      for (int l = 0; l < kLevelCount; ++l) {
        if (eval(guard(fam, static_cast<Level>(l), in), none)) {
          ++true_guards;
          by_guard = static_cast<Level>(l);
        }
      }
      CAPTURE(rat_to_string(dist));
      CAPTURE(rat_to_string(vel));
      CHECK(true_guards == 1);
      CHECK(by_guard == by_classify);
    }

    // Exactly at a threshold the raw test is inclusive, so the guard ladder
    // must put the state at the higher level.
    for (int l = 1; l < kLevelCount; ++l) {
      Rat vel(10);
      Rat lv = following ? Rat(10) : Rat(0);
      Rat at = threshold(fam, static_cast<Level>(l), vel, lv);
      CHECK(classify(fam, at, vel, lv) >= static_cast<Level>(l));
    }
  }
}

// ---------------------------------------------------------------------------
// Adequacy case tables
// ---------------------------------------------------------------------------

TEST_CASE("chain-neighbour cases for the four-level chain") {
  auto cases = enumerate_prec1_cases(kLevelCount);
  REQUIRE(cases.size() == 7);

  CHECK(cases[0].id == "pair:bad<->unsafe");
  CHECK(cases[1].id == "pair:unsafe<->safe");
  CHECK(cases[2].id == "pair:safe<->safer");
  CHECK(cases[3].id == "same:bad");
  CHECK(cases[4].id == "same:unsafe");
  CHECK(cases[5].id == "same:safe");
  CHECK(cases[6].id == "same:safer");

  CHECK(cases[0].disallowed == std::vector<int>{2, 3});
  CHECK(cases[1].disallowed == std::vector<int>{0, 3});
  CHECK(cases[2].disallowed == std::vector<int>{0, 1});
  CHECK(cases[3].disallowed.empty());   // nothing two levels below bad
  CHECK(cases[4].disallowed.empty());   // one-below is allowed
  CHECK(cases[5].disallowed == std::vector<int>{0});
  CHECK(cases[6].disallowed == std::vector<int>{0, 1});

  int orientations = 0;
  for (const auto& c : cases) orientations += static_cast<int>(c.orientations.size());
  CHECK(orientations == 10);  // 3 neighbouring pairs x 2 + 4 same-level

  using P = std::pair<int, int>;
  CHECK(cases[0].orientations == std::vector<P>{{0, 1}, {1, 0}});
  CHECK(cases[2].orientations == std::vector<P>{{2, 3}, {3, 2}});
  CHECK(cases[6].orientations == std::vector<P>{{3, 3}});
}

TEST_CASE("chain-neighbour cases against a combinatorial reference") {
  for (int chain = 2; chain <= 8; ++chain) {
    auto cases = enumerate_prec1_cases(chain);
    CHECK(static_cast<int>(cases.size()) == 2 * chain - 1);

    int orientations = 0;
    std::set<std::pair<int, int>> seen;
    for (const auto& c : cases) {
      for (auto [a, b] : c.orientations) {
        CHECK(a >= 0);
        CHECK(b >= 0);
        CHECK(a < chain);
        CHECK(b < chain);
        CHECK(std::abs(a - b) <= 1);  // only neighbours and same-level
        CHECK(seen.insert({a, b}).second);
        ++orientations;
      }
      // The disallowed set must be disjoint from the endpoints' allowed set.
      for (auto [a, b] : c.orientations) {
        for (int d : c.disallowed) {
          CHECK(d != a);
          CHECK(d != b);
          if (a == b) CHECK(d + 2 <= a);  // same-level: only deep dips are banned
        }
      }
    }
    CHECK(orientations == 3 * chain - 2);
    // Every ordered neighbour pair and every diagonal appears exactly once.
    for (int a = 0; a < chain; ++a) {
      CHECK(seen.count({a, a}) == 1);
      if (a + 1 < chain) {
        CHECK(seen.count({a, a + 1}) == 1);
        CHECK(seen.count({a + 1, a}) == 1);
      }
    }
  }
  CHECK_THROWS_AS(enumerate_prec1_cases(1), Error);
}

TEST_CASE("bad-avoidance cases") {
  auto cases = enumerate_bad_cases(kLevelCount);
  REQUIRE(cases.size() == 4);  // ordered pairs over {safe, safer}
  std::set<std::pair<int, int>> seen;
  for (const auto& c : cases) {
    REQUIRE(c.orientations.size() == 1);
    auto [a, b] = c.orientations[0];
    CHECK(a >= 2);
    CHECK(b >= 2);
    CHECK(c.disallowed == std::vector<int>{0});
    CHECK(seen.insert({a, b}).second);
  }
  CHECK(seen.size() == 4);

  for (int chain = 3; chain <= 6; ++chain) {
    CHECK(static_cast<int>(enumerate_bad_cases(chain).size()) ==
          (chain - 2) * (chain - 2));
  }
  CHECK_THROWS_AS(enumerate_bad_cases(2), Error);
}

TEST_CASE("chain labels use the risk-level names only for the four-chain") {
  CHECK(chain_level_label(kLevelCount, 0) == "bad");
  CHECK(chain_level_label(kLevelCount, 3) == "safer");
  CHECK(chain_level_label(6, 2) == "L2");
}
