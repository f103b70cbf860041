// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0

#include "rta/scenario.hpp"

#include "rta/digest.hpp"

#include <json.hpp>

#include <set>
#include <utility>

namespace rta {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw Error(ErrCode::Config, path + ": " + msg);
}

Rat rq(const json& v, const std::string& path) {
  try {
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_number_float()) return rat_from_double(v.get<double>());
    if (v.is_string()) return rat_from_string(v.get<std::string>());
  } catch (const Error& e) {
    bad(path, e.what());
  }
  bad(path, "expected a number or a rational string like \"350/9\"");
}

RatRange range_q(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) bad(path, "expected a two-element range [lo, hi]");
  RatRange r{rq(v[0], path + "/0"), rq(v[1], path + "/1")};
  if (r.lo > r.hi) bad(path, "range is empty (lo > hi)");
  return r;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) bad(path + "/" + key, "unknown field");
  }
}

ControllerSpec parse_controller(const json& v, const std::string& path, bool is_leader) {
  if (!v.is_object()) bad(path, "expected an object");
  reject_unknown_keys(v, {"kind", "decel", "latch"}, path);
  ControllerSpec spec;
  std::string kind = v.value("kind", is_leader ? "free-symbolic" : "cautious");
  if (kind == "cautious") {
    spec.kind = ControllerSpec::Kind::Cautious;
  } else if (kind == "aggressive") {
    spec.kind = ControllerSpec::Kind::Aggressive;
  } else if (kind == "free" || kind == "free-symbolic") {
    spec.kind = ControllerSpec::Kind::FreeSymbolic;
  } else if (kind == "brake-constant") {
    spec.kind = ControllerSpec::Kind::BrakeConstant;
  } else {
    bad(path + "/kind", "unknown controller kind '" + kind + "'");
  }
  if (is_leader && spec.kind == ControllerSpec::Kind::Cautious)
    bad(path + "/kind", "the leader has no sensing; 'cautious' is not a leader behavior");
  if (v.contains("decel")) {
    spec.decel = rq(v["decel"], path + "/decel");
    if (spec.decel >= 0) bad(path + "/decel", "braking command must be negative");
  }
  if (v.contains("latch")) {
    if (!v["latch"].is_boolean()) bad(path + "/latch", "expected a boolean");
    spec.latch = v["latch"].get<bool>();
  }
  return spec;
}

}  // namespace

ScenarioDef parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrCode::Config, std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) bad("", "expected a JSON object");
  reject_unknown_keys(root,
                      {"name", "kind", "dt", "step_mode", "odd", "geometry", "property", "senerr",
                       "sense_range", "controller", "leader", "rss_sign_convention"},
                      "");

  ScenarioDef def;
  def.config_text = json_text;
  def.config_digest = sha256_hex(json_text);

  if (!root.contains("kind") || !root["kind"].is_string()) bad("/kind", "required string field");
  def.kind = root["kind"].get<std::string>();
  if (def.kind != "pedCross" && def.kind != "pedCrBnds" && def.kind != "folGap" &&
      def.kind != "folRSS")
    bad("/kind", "expected one of pedCross, pedCrBnds, folGap, folRSS");
  def.following = (def.kind == "folGap" || def.kind == "folRSS");
  def.name = root.value("name", def.kind);

  if (root.contains("dt")) def.dt = rq(root["dt"], "/dt");
  if (def.dt <= 0) bad("/dt", "sampling interval must be positive");

  if (root.contains("step_mode")) {
    std::string m = root["step_mode"].is_string() ? root["step_mode"].get<std::string>() : "";
    if (m == "clamp")
      def.step_mode = StepMode::ClampAtZero;
    else if (m == "unclamped")
      def.step_mode = StepMode::Unclamped;
    else
      bad("/step_mode", "expected \"clamp\" or \"unclamped\"");
  }

  if (root.contains("senerr")) def.senerr = rq(root["senerr"], "/senerr");
  if (def.senerr < 0 || def.senerr >= 1) bad("/senerr", "sensing error factor must be in [0, 1)");
  if (def.following && def.senerr != 0)
    bad("/senerr", "following scenarios sense the gap exactly; senerr must be 0");
  if (root.contains("sense_range")) {
    Rat r = rq(root["sense_range"], "/sense_range");
    if (r <= 0) bad("/sense_range", "must be positive");
    def.sense_range = r;
  }

  // --- property: the guard family -----------------------------------------
  std::string implied_family = def.kind == "pedCross"   ? "gaps"
                               : def.kind == "pedCrBnds" ? "gapsBounded"
                               : def.kind == "folGap"    ? "folGap"
                                                         : "folRSS";
  json prop = root.value("property", json::object());
  if (!prop.is_object()) bad("/property", "expected an object");
  reject_unknown_keys(prop, {"family", "gaps", "maxDec", "lowSpd", "farAway", "rss"}, "/property");
  std::string family_name = prop.value("family", implied_family);
  if (family_name != implied_family)
    bad("/property/family", "family '" + family_name + "' does not match scenario kind '" +
                                def.kind + "' (expected '" + implied_family + "')");

  auto parse_gap_triple = [&](Rat& g3, Rat& g2, Rat& g1) {
    if (!prop.contains("gaps")) bad("/property/gaps", "required for gap families");
    const json& g = prop["gaps"];
    if (!g.is_array() || g.size() != 3)
      bad("/property/gaps", "expected [g_safer, g_safe, g_unsafe]");
    g3 = rq(g[0], "/property/gaps/0");
    g2 = rq(g[1], "/property/gaps/1");
    g1 = rq(g[2], "/property/gaps/2");
  };
  Rat max_dec = prop.contains("maxDec") ? rq(prop["maxDec"], "/property/maxDec") : Rat(-8);

  if (family_name == "gaps") {
    GapsPedestrian f;
    parse_gap_triple(f.g_safer, f.g_safe, f.g_unsafe);
    f.max_dec = max_dec;
    def.family = f;
  } else if (family_name == "gapsBounded") {
    GapsPedestrianBounded f;
    parse_gap_triple(f.g_safer, f.g_safe, f.g_unsafe);
    f.max_dec = max_dec;
    f.low_spd = prop.contains("lowSpd") ? rq(prop["lowSpd"], "/property/lowSpd") : Rat(1, 2);
    f.far_away = prop.contains("farAway") ? rq(prop["farAway"], "/property/farAway") : Rat(50);
    def.family = f;
  } else if (family_name == "folGap") {
    GapsFollowing f;
    parse_gap_triple(f.g_safer, f.g_safe, f.g_unsafe);
    f.max_dec = max_dec;
    def.family = f;
  } else {
    RssFollowing f;
    json rss = prop.value("rss", json::object());
    if (!rss.is_object()) bad("/property/rss", "expected an object");
    reject_unknown_keys(rss, {"maxAcc", "maxDecFollower", "maxDecLeader"}, "/property/rss");
    f.max_acc = rss.contains("maxAcc") ? rq(rss["maxAcc"], "/property/rss/maxAcc") : Rat(2);
    f.max_dec_f = rss.contains("maxDecFollower")
                      ? rq(rss["maxDecFollower"], "/property/rss/maxDecFollower")
                      : Rat(-8);
    if (!rss.contains("maxDecLeader"))
      bad("/property/rss/maxDecLeader", "required for the rss family");
    f.max_dec_l = rq(rss["maxDecLeader"], "/property/rss/maxDecLeader");
    f.dt = def.dt;
    std::string sign = root.value("rss_sign_convention", "literal");
    if (sign == "literal")
      f.sign = RssSign::Literal;
    else if (sign == "standard")
      f.sign = RssSign::Standard;
    else
      bad("/rss_sign_convention", "expected \"literal\" or \"standard\"");
    def.family = f;
  }
  if (root.contains("rss_sign_convention") && family_name != "folRSS")
    bad("/rss_sign_convention", "only meaningful for folRSS");
  try {
    validate_family(def.family);
  } catch (const Error& e) {
    bad("/property", e.what());
  }

  // --- odd ------------------------------------------------------------------
  if (!root.contains("odd") || !root["odd"].is_object()) bad("/odd", "required object field");
  const json& odd = root["odd"];
  reject_unknown_keys(odd, {"vel", "acc", "pvel", "lead_vel", "lead_acc", "gap"}, "/odd");
  if (!odd.contains("vel")) bad("/odd/vel", "required");
  def.vel = range_q(odd["vel"], "/odd/vel");
  if (def.vel.lo < 0) bad("/odd/vel", "speeds are nonnegative");
  if (!odd.contains("acc")) bad("/odd/acc", "required");
  def.acc = range_q(odd["acc"], "/odd/acc");

  if (def.following) {
    if (odd.contains("pvel")) bad("/odd/pvel", "not a following-scenario field");
    def.lead_vel = odd.contains("lead_vel") ? range_q(odd["lead_vel"], "/odd/lead_vel") : def.vel;
    if (def.lead_vel.lo < 0) bad("/odd/lead_vel", "speeds are nonnegative");
    if (odd.contains("lead_acc")) {
      def.lead_acc = range_q(odd["lead_acc"], "/odd/lead_acc");
    } else if (const auto* rss = std::get_if<RssFollowing>(&def.family)) {
      def.lead_acc = RatRange{rss->max_dec_l, def.acc.hi};
    } else {
      def.lead_acc = def.acc;
    }
    if (odd.contains("gap")) {
      def.init_gap = range_q(odd["gap"], "/odd/gap");
      if (def.init_gap->lo < 0) bad("/odd/gap", "the initial gap is nonnegative");
    }
  } else {
    if (odd.contains("lead_vel") || odd.contains("lead_acc") || odd.contains("gap"))
      bad("/odd", "lead_vel/lead_acc/gap are following-scenario fields");
    if (odd.contains("pvel")) def.pvel = range_q(odd["pvel"], "/odd/pvel");
    if (def.pvel.lo < 0) bad("/odd/pvel", "speeds are nonnegative");
  }

  // --- geometry (pedestrian scenarios) ---------------------------------------
  if (root.contains("geometry")) {
    if (def.following) bad("/geometry", "not a following-scenario field");
    const json& geo = root["geometry"];
    if (!geo.is_object()) bad("/geometry", "expected an object");
    reject_unknown_keys(geo, {"cross_y", "veh_x", "veh_y", "ped_x", "ped_y"}, "/geometry");
    if (geo.contains("cross_y")) def.cross_y = rq(geo["cross_y"], "/geometry/cross_y");
    def.veh_y0 = RatRange{Rat(0), def.cross_y};
    if (geo.contains("veh_y")) def.veh_y0 = range_q(geo["veh_y"], "/geometry/veh_y");
    if (geo.contains("veh_x")) def.veh_x = rq(geo["veh_x"], "/geometry/veh_x");
    if (geo.contains("ped_x")) def.ped_x0 = range_q(geo["ped_x"], "/geometry/ped_x");
    def.ped_y0 = RatRange{def.cross_y, def.cross_y};
    if (geo.contains("ped_y")) {
      if (geo["ped_y"].is_array())
        def.ped_y0 = range_q(geo["ped_y"], "/geometry/ped_y");
      else
        def.ped_y0 = RatRange{rq(geo["ped_y"], "/geometry/ped_y"),
                              rq(geo["ped_y"], "/geometry/ped_y")};
    }
    if (def.veh_y0.lo < 0) bad("/geometry/veh_y", "the vehicle starts at y >= 0");
    if (def.veh_y0.lo >= def.cross_y)
      bad("/geometry/veh_y", "the vehicle starts before the crossing line");
    if (def.ped_y0.lo < def.cross_y)
      bad("/geometry/ped_y", "the crossing band starts at or beyond the crossing line");
  } else if (!def.following) {
    def.veh_y0 = RatRange{Rat(0), def.cross_y};
    def.ped_y0 = RatRange{def.cross_y, def.cross_y};
  }

  // --- controllers ------------------------------------------------------------
  if (root.contains("controller"))
    def.controller = parse_controller(root["controller"], "/controller", false);
  if (root.contains("leader")) {
    if (!def.following) bad("/leader", "not a pedestrian-scenario field");
    def.leader = parse_controller(root["leader"], "/leader", true);
  } else if (def.following) {
    def.leader.kind = ControllerSpec::Kind::FreeSymbolic;
  }
  if (def.following && def.leader.kind == ControllerSpec::Kind::BrakeConstant &&
      !root["leader"].contains("decel")) {
    // A constantly-braking leader defaults to its assumed worst braking.
    if (const auto* rss = std::get_if<RssFollowing>(&def.family))
      def.leader.decel = rss->max_dec_l;
    else
      def.leader.decel = std::get<GapsFollowing>(def.family).max_dec;
  }
  return def;
}

// ---------------------------------------------------------------------------
// Symbolic traces
// ---------------------------------------------------------------------------

SymTraceBuilder::SymTraceBuilder(ScenarioDef def)
    : def_(std::move(def)), engaged_(c_bool(false)) {}

const SymConf& SymTraceBuilder::init() {
  if (!confs_.empty()) throw Error(ErrCode::Internal, "trace already initialized");
  SymConf conf;
  if (def_.following) {
    auto [s1, vf] = store_.fresh("veh_vel0");
    auto [s2, gap] = s1.fresh("gap0");
    auto [s3, vl] = s2.fresh("lead_vel0");
    store_ = s3;
    conf.veh = SymAgent{lit(0L), lit(0L), vf};
    conf.other = SymAgent{lit(0L), gap, vl};
    store_ = store_.require(vf >= lit(def_.vel.lo)).require(vf <= lit(def_.vel.hi));
    store_ = store_.require(vl >= lit(def_.lead_vel.lo)).require(vl <= lit(def_.lead_vel.hi));
    if (def_.init_gap) {
      store_ = store_.require(gap >= lit(def_.init_gap->lo)).require(gap <= lit(def_.init_gap->hi));
    } else {
      store_ = store_.require(gap > lit(0L));
    }
  } else {
    auto [s1, vy] = store_.fresh("veh_y0");
    auto [s2, vv] = s1.fresh("veh_vel0");
    auto [s3, px] = s2.fresh("ped_x0");
    auto [s4, py] = s3.fresh("ped_y0");
    auto [s5, pv] = s4.fresh("ped_vel0");
    store_ = s5;
    conf.veh = SymAgent{lit(def_.veh_x), vy, vv};
    conf.other = SymAgent{px, py, pv};
    store_ = store_.require(vy >= lit(def_.veh_y0.lo)).require(vy <= lit(def_.veh_y0.hi));
    store_ = store_.require(vy < lit(def_.cross_y));
    store_ = store_.require(vv >= lit(def_.vel.lo)).require(vv <= lit(def_.vel.hi));
    store_ = store_.require(px >= lit(def_.ped_x0.lo)).require(px <= lit(def_.ped_x0.hi));
    store_ = store_.require(py >= lit(def_.ped_y0.lo)).require(py <= lit(def_.ped_y0.hi));
    store_ = store_.require(pv >= lit(def_.pvel.lo)).require(pv <= lit(def_.pvel.hi));
  }
  confs_.push_back(conf);
  return confs_.back();
}

RiskInputs SymTraceBuilder::ground(const SymConf& conf) const {
  RiskInputs in;
  if (def_.following) {
    in.dist = conf.other.y - conf.veh.y;
    in.vel = conf.veh.vel;
    in.lead_vel = conf.other.vel;
  } else {
    in.dist = lit(def_.cross_y) - conf.veh.y;
    in.vel = conf.veh.vel;
  }
  return in;
}

Term SymTraceBuilder::controlled_accel(const SymConf& conf, int k) {
  const ControllerSpec& ctl = def_.controller;
  const std::string t = "t" + std::to_string(k);
  switch (ctl.kind) {
    case ControllerSpec::Kind::Aggressive:
      sensing_.push_back({});
      return lit(def_.acc.lo);
    case ControllerSpec::Kind::BrakeConstant:
      sensing_.push_back({});
      return lit(ctl.decel);
    case ControllerSpec::Kind::FreeSymbolic: {
      auto [s, a] = store_.fresh(t + "_veh_acc");
      store_ = s.require(a >= lit(def_.acc.lo)).require(a <= lit(def_.acc.hi));
      sensing_.push_back({});
      return a;
    }
    case ControllerSpec::Kind::Cautious:
      break;
  }

  // Cautious: engage (and, with the latch, stay engaged) while a detected
  // hazard is not sensed at the safer level; brake when braking for a full
  // tick is feasible, otherwise hold speed.
  Term sensed_dist;
  SensingRec rec;
  if (!def_.following && def_.senerr != 0) {
    Term true_ped_dist = conf.other.y - conf.veh.y;
    auto [s1, err] = store_.fresh(t + "_err");
    auto [s2, spy] = s1.fresh(t + "_spy");
    store_ = s2;
    store_ = store_.require(err >= lit(0L))
                 .require(err <= lit(def_.senerr) * max_term(lit(0L), true_ped_dist));
    store_ = store_.require(spy >= conf.other.y - err).require(spy <= conf.other.y + err);
    sensed_dist = spy - conf.veh.y;
    std::set<int> syms;
    collect_symbols(err, syms);
    rec.err_sym = *syms.begin();
    syms.clear();
    collect_symbols(spy, syms);
    rec.sensed_py_sym = *syms.begin();
  } else if (!def_.following) {
    sensed_dist = conf.other.y - conf.veh.y;
  } else {
    sensed_dist = conf.other.y - conf.veh.y;
  }
  sensing_.push_back(rec);

  RiskInputs sensed{sensed_dist, conf.veh.vel,
                    def_.following ? conf.other.vel : Term()};
  Constraint sensed_safer = reach_raw(def_.family, Level::Safer, sensed);
  Constraint detected = c_bool(true);
  if (def_.sense_range) {
    Term true_dist = conf.other.y - conf.veh.y;
    detected = true_dist <= lit(*def_.sense_range);
  }
  Constraint trigger = c_and({detected, negate(sensed_safer)});
  Constraint engaged_now = ctl.latch ? c_or({engaged_, trigger}) : trigger;
  engaged_ = engaged_now;

  Constraint feasible = conf.veh.vel + lit(ctl.decel * def_.dt) >= lit(0L);
  return ite(engaged_now, ite(feasible, lit(ctl.decel), lit(0L)), lit(0L));
}

Term SymTraceBuilder::leader_accel(int k) {
  const ControllerSpec& ld = def_.leader;
  const std::string t = "t" + std::to_string(k);
  switch (ld.kind) {
    case ControllerSpec::Kind::FreeSymbolic: {
      auto [s, a] = store_.fresh(t + "_lead_acc");
      store_ = s.require(a >= lit(def_.lead_acc.lo)).require(a <= lit(def_.lead_acc.hi));
      return a;
    }
    case ControllerSpec::Kind::BrakeConstant:
      return lit(ld.decel);
    case ControllerSpec::Kind::Aggressive:
      return lit(def_.lead_acc.lo);
    case ControllerSpec::Kind::Cautious:
      break;
  }
  throw Error(ErrCode::Internal, "leader controller kind rejected at parse time");
}

SymConf SymTraceBuilder::step_agents(const SymConf& conf, const Term& veh_acc,
                                     const Term& oth_acc, const Term& dt,
                                     const std::string& tag) {
  SymStep veh = step_symbolic(store_, conf.veh.vel, veh_acc, dt, def_.step_mode, tag + "_veh");
  store_ = veh.store;
  SymStep oth = step_symbolic(store_, conf.other.vel, oth_acc, dt, def_.step_mode,
                              tag + (def_.following ? "_lead" : "_ped"));
  store_ = oth.store;

  SymConf next;
  next.veh = SymAgent{conf.veh.x, conf.veh.y + veh.displacement, veh.vel_after};
  if (def_.following) {
    next.other = SymAgent{conf.other.x, conf.other.y + oth.displacement, oth.vel_after};
  } else {
    next.other = SymAgent{conf.other.x + oth.displacement, conf.other.y, oth.vel_after};
  }
  return next;
}

const SymConf& SymTraceBuilder::tick_controlled() {
  if (confs_.empty()) throw Error(ErrCode::Internal, "init() must be called first");
  int k = tick_count_++;
  const SymConf conf = confs_.back();
  Term veh_acc = controlled_accel(conf, k);
  Term oth_acc = def_.following ? leader_accel(k) : lit(0L);
  accels_.emplace_back(veh_acc, oth_acc);
  confs_.push_back(step_agents(conf, veh_acc, oth_acc, lit(def_.dt), "t" + std::to_string(k)));
  return confs_.back();
}

const SymConf& SymTraceBuilder::tick_free() {
  if (confs_.empty()) throw Error(ErrCode::Internal, "init() must be called first");
  int k = tick_count_++;
  const SymConf conf = confs_.back();
  const std::string t = "t" + std::to_string(k);
  auto [s1, veh_acc] = store_.fresh(t + "_veh_acc");
  store_ = s1.require(veh_acc >= lit(def_.acc.lo)).require(veh_acc <= lit(def_.acc.hi));
  Term oth_acc;
  if (def_.following) {
    auto [s2, lead_acc] = store_.fresh(t + "_lead_acc");
    store_ = s2.require(lead_acc >= lit(def_.lead_acc.lo))
                 .require(lead_acc <= lit(def_.lead_acc.hi));
    oth_acc = lead_acc;
  } else {
    oth_acc = lit(0L);
  }
  sensing_.push_back({});
  accels_.emplace_back(veh_acc, oth_acc);
  confs_.push_back(step_agents(conf, veh_acc, oth_acc, lit(def_.dt), t));
  return confs_.back();
}

SplitStep split_step(const ScenarioDef& def, const Store& base, const SymConf& from,
                     const Term& veh_acc, const Term& oth_acc, bool closed,
                     std::string_view tag) {
  auto [s1, delta] = base.fresh(std::string(tag) + "_delta");
  Store store = s1.require(delta > lit(0L));
  store = store.require(closed ? (delta <= lit(def.dt)) : (delta < lit(def.dt)));

  SymStep veh = step_symbolic(store, from.veh.vel, veh_acc, delta, def.step_mode,
                              std::string(tag) + "_veh");
  store = veh.store;
  SymStep oth = step_symbolic(store, from.other.vel, oth_acc, delta, def.step_mode,
                              std::string(tag) + (def.following ? "_lead" : "_ped"));
  store = oth.store;

  SymConf conf;
  conf.veh = SymAgent{from.veh.x, from.veh.y + veh.displacement, veh.vel_after};
  if (def.following) {
    conf.other = SymAgent{from.other.x, from.other.y + oth.displacement, oth.vel_after};
  } else {
    conf.other = SymAgent{from.other.x + oth.displacement, from.other.y, oth.vel_after};
  }
  return {store, conf, delta};
}

// ---------------------------------------------------------------------------
// Concrete twin
// ---------------------------------------------------------------------------

Rat ground_dist(const ScenarioDef& def, const ConcConf& conf) {
  return def.following ? conf.other.y - conf.veh.y : def.cross_y - conf.veh.y;
}

Level classify_ground(const ScenarioDef& def, const ConcConf& conf) {
  return classify(def.family, ground_dist(def, conf), conf.veh.vel,
                  def.following ? conf.other.vel : Rat(0));
}

Rat ConcreteDriver::controlled_veh_accel(const ConcConf& conf, const Rat& sensed_py) {
  const ControllerSpec& ctl = def_->controller;
  switch (ctl.kind) {
    case ControllerSpec::Kind::Aggressive:
      return def_->acc.lo;
    case ControllerSpec::Kind::BrakeConstant:
      return ctl.decel;
    case ControllerSpec::Kind::FreeSymbolic:
      throw Error(ErrCode::Invalid,
                  "a free-symbolic vehicle controller needs an explicit acceleration schedule");
    case ControllerSpec::Kind::Cautious:
      break;
  }

  Rat true_dist = conf.other.y - conf.veh.y;
  Rat sensed_dist = def_->following ? true_dist : sensed_py - conf.veh.y;
  bool detected = !def_->sense_range || true_dist <= *def_->sense_range;
  Level sensed_level = classify(def_->family, sensed_dist, conf.veh.vel,
                                def_->following ? conf.other.vel : Rat(0));
  bool trigger = detected && sensed_level != Level::Safer;
  engaged_ = ctl.latch ? (engaged_ || trigger) : trigger;
  if (!engaged_) return Rat(0);
  bool feasible = conf.veh.vel + ctl.decel * def_->dt >= 0;
  return feasible ? ctl.decel : Rat(0);
}

Rat ConcreteDriver::leader_accel(const ConcConf&) const {
  switch (def_->leader.kind) {
    case ControllerSpec::Kind::BrakeConstant:
      return def_->leader.decel;
    case ControllerSpec::Kind::Aggressive:
      return def_->lead_acc.lo;
    case ControllerSpec::Kind::FreeSymbolic:
      throw Error(ErrCode::Invalid,
                  "a free-symbolic leader needs an explicit acceleration schedule");
    case ControllerSpec::Kind::Cautious:
      break;
  }
  throw Error(ErrCode::Internal, "leader controller kind rejected at parse time");
}

ConcConf ConcreteDriver::advance(const ScenarioDef& def, const ConcConf& conf,
                                 const Rat& veh_acc, const Rat& oth_acc, const Rat& duration) {
  ConcreteStep veh = step_concrete(conf.veh.vel, veh_acc, duration, def.step_mode);
  ConcreteStep oth = step_concrete(conf.other.vel, oth_acc, duration, def.step_mode);
  ConcConf next = conf;
  next.veh.y += veh.displacement;
  next.veh.vel = veh.vel_after;
  if (def.following) {
    next.other.y += oth.displacement;
  } else {
    next.other.x += oth.displacement;
  }
  next.other.vel = oth.vel_after;
  return next;
}

}  // namespace rta
