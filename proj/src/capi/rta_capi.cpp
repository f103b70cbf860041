// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0
//
// C API implementation: thin handle/serialization layer over the C++ core.

#include "rta/rta.h"

#include "rta/checkers.hpp"
#include "rta/version.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <sstream>

using json = nlohmann::json;
using namespace rta;

struct rta_scenario {
  ScenarioDef def;
};

struct rta_report {
  CheckReport rep;
  std::string verdict;  // stable storage for rta_report_verdict
};

namespace {

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void set_err(char** err_msg, const std::string& msg) {
  if (err_msg) *err_msg = dup_string(msg);
}

template <typename F>
rta_status guarded(char** err_msg, F&& body) {
  try {
    body();
    return RTA_OK;
  } catch (const Error& e) {
    set_err(err_msg, e.what());
    switch (e.code()) {
      case ErrCode::Invalid: return RTA_ERR_INVALID;
      case ErrCode::Config: return RTA_ERR_CONFIG;
      case ErrCode::Solver: return RTA_ERR_SOLVER;
      default: return RTA_ERR_INTERNAL;
    }
  } catch (const std::exception& e) {
    set_err(err_msg, e.what());
    return RTA_ERR_INTERNAL;
  } catch (...) {
    set_err(err_msg, "unknown error");
    return RTA_ERR_INTERNAL;
  }
}

std::vector<std::string> split_ws(const char* s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

CheckOptions to_cpp_options(const rta_check_options* o) {
  CheckOptions c;
  if (!o) return c;
  if (o->solver_cmd && *o->solver_cmd) c.solver_argv = split_ws(o->solver_cmd);
  if (o->timeout_sec > 0) c.timeout_sec = o->timeout_sec;
  if (o->jobs > 0) c.jobs = o->jobs;
  c.oracle_prepass = o->oracle_prepass != 0;
  if (o->prepass_budget > 0) c.prepass_budget = o->prepass_budget;
  c.monolithic = o->monolithic != 0;
  c.closed_split = o->closed_split != 0;
  c.no_prereq = o->no_prereq != 0;
  c.dump_only = o->dump_only != 0;
  if (o->dump_dir) c.dump_dir = o->dump_dir;
  if (o->seed) c.seed = o->seed;
  return c;
}

Level level_arg(const char* name, Level fallback) {
  if (!name || !*name) return fallback;
  return level_from_name(name);
}

rta_status make_report(CheckReport rep, rta_report** out) {
  auto* h = new rta_report{std::move(rep), {}};
  h->verdict = h->rep.verdict;
  *out = h;
  return RTA_OK;
}

// ---- JSON request helpers --------------------------------------------------

Rat rat_in(const json& v, const std::string& what) {
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_number_float()) return rat_from_double(v.get<double>());
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  throw Error(ErrCode::Invalid, what + ": expected a number or an exact string like \"7/3\"");
}

ConcAgent agent_in(const json& v, const std::string& what, const Rat& default_x) {
  if (!v.is_object()) throw Error(ErrCode::Invalid, what + ": expected an object");
  ConcAgent a{default_x, Rat(0), Rat(0)};
  if (v.contains("x")) a.x = rat_in(v["x"], what + ".x");
  if (!v.contains("y")) throw Error(ErrCode::Invalid, what + ".y: required");
  a.y = rat_in(v["y"], what + ".y");
  if (!v.contains("vel")) throw Error(ErrCode::Invalid, what + ".vel: required");
  a.vel = rat_in(v["vel"], what + ".vel");
  return a;
}

ConcConf conf_in(const ScenarioDef& def, const json& v) {
  if (!v.is_object()) throw Error(ErrCode::Invalid, "initial: expected an object");
  ConcConf c;
  if (!v.contains("vehicle")) throw Error(ErrCode::Invalid, "initial.vehicle: required");
  c.veh = agent_in(v["vehicle"], "initial.vehicle", def.following ? Rat(0) : def.veh_x);
  const char* other = def.following ? "leader" : "pedestrian";
  if (!v.contains(other))
    throw Error(ErrCode::Invalid, std::string("initial.") + other + ": required");
  c.other = agent_in(v[other], std::string("initial.") + other, Rat(0));
  return c;
}

std::vector<std::optional<Rat>> optional_array_in(const json& v, const std::string& what) {
  if (!v.is_array()) throw Error(ErrCode::Invalid, what + ": expected an array");
  std::vector<std::optional<Rat>> out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_null())
      out.emplace_back(std::nullopt);
    else
      out.emplace_back(rat_in(v[i], what + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

extern "C" {

const char* rta_version(void) { return kToolVersion; }

rta_status rta_scenario_load_json(const char* json_text, rta_scenario** out, char** err_msg) {
  if (!json_text || !out) {
    set_err(err_msg, "null argument");
    return RTA_ERR_INVALID;
  }
  return guarded(err_msg, [&] {
    auto* h = new rta_scenario{parse_scenario(json_text)};
    *out = h;
  });
}

void rta_scenario_free(rta_scenario* sc) { delete sc; }

const char* rta_scenario_name(const rta_scenario* sc) { return sc ? sc->def.name.c_str() : ""; }

const char* rta_scenario_digest(const rta_scenario* sc) {
  return sc ? sc->def.config_digest.c_str() : "";
}

void rta_check_options_init(rta_check_options* o) {
  if (!o) return;
  std::memset(o, 0, sizeof(*o));
  o->timeout_sec = 3600;
  o->jobs = 1;
  o->oracle_prepass = 1;
  o->prepass_budget = 10000;
  o->seed = 1;
}

rta_status rta_check_adequacy(const rta_scenario* sc, const char* kind,
                              const rta_check_options* opt, rta_report** out, char** err_msg) {
  if (!sc || !out) {
    set_err(err_msg, "null argument");
    return RTA_ERR_INVALID;
  }
  return guarded(err_msg, [&] {
    std::string k = kind ? kind : "prec1";
    bool chain_neighbor;
    if (k == "prec1")
      chain_neighbor = true;
    else if (k == "bad")
      chain_neighbor = false;
    else
      throw Error(ErrCode::Invalid, "adequacy kind must be \"prec1\" or \"bad\"");
    make_report(check_adequacy(sc->def, chain_neighbor, to_cpp_options(opt)), out);
  });
}

rta_status rta_check_noskip(const rta_scenario* sc, const char* sp_safe,
                            const rta_check_options* opt, rta_report** out, char** err_msg) {
  if (!sc || !out) {
    set_err(err_msg, "null argument");
    return RTA_ERR_INVALID;
  }
  return guarded(err_msg, [&] {
    make_report(check_noskip(sc->def, level_arg(sp_safe, Level::Safe), to_cpp_options(opt)), out);
  });
}

rta_status rta_check_recoverability(const rta_scenario* sc, int horizon, const char* sp_safe,
                                    const char* sp_safer, const rta_check_options* opt,
                                    rta_report** out, char** err_msg) {
  if (!sc || !out) {
    set_err(err_msg, "null argument");
    return RTA_ERR_INVALID;
  }
  return guarded(err_msg, [&] {
    make_report(check_recoverability(sc->def, horizon, level_arg(sp_safe, Level::Safe),
                                     level_arg(sp_safer, Level::Safer), to_cpp_options(opt)),
                out);
  });
}

const char* rta_report_verdict(const rta_report* rep) { return rep ? rep->verdict.c_str() : ""; }

int rta_report_exit_code(const rta_report* rep) {
  return rep ? verdict_exit_code(rep->rep.verdict) : 3;
}

char* rta_report_json(const rta_report* rep) {
  if (!rep) return nullptr;
  return dup_string(rep->rep.to_json().dump(2));
}

char* rta_report_summary(const rta_report* rep) {
  if (!rep) return nullptr;
  return dup_string(rep->rep.summary());
}

void rta_report_free(rta_report* rep) { delete rep; }

rta_status rta_simulate_json(const rta_scenario* sc, const char* request_json, char** out_json,
                             char** err_msg) {
  if (!sc || !request_json || !out_json) {
    set_err(err_msg, "null argument");
    return RTA_ERR_INVALID;
  }
  return guarded(err_msg, [&] {
    json req;
    try {
      req = json::parse(request_json);
    } catch (const json::exception& e) {
      throw Error(ErrCode::Invalid, std::string("request is not valid JSON: ") + e.what());
    }
    if (!req.is_object()) throw Error(ErrCode::Invalid, "request: expected a JSON object");
    if (!req.contains("initial")) throw Error(ErrCode::Invalid, "initial: required");
    if (!req.contains("ticks") || !req["ticks"].is_number_integer())
      throw Error(ErrCode::Invalid, "ticks: required integer");

    const ScenarioDef& def = sc->def;
    ConcConf init = conf_in(def, req["initial"]);
    int ticks = req["ticks"].get<int>();
    SimOptions so;
    if (req.contains("subdiv")) so.subdiv = req["subdiv"].get<int>();
    if (req.contains("optimistic_sensing"))
      so.optimistic_sensing = req["optimistic_sensing"].get<bool>();
    if (req.contains("sensed")) so.sensed = optional_array_in(req["sensed"], "sensed");
    if (req.contains("veh_accels"))
      so.veh_accels = optional_array_in(req["veh_accels"], "veh_accels");
    if (req.contains("other_accels"))
      so.other_accels = optional_array_in(req["other_accels"], "other_accels");

    SimTrace tr = simulate(def, init, ticks, so);

    json out;
    out["initial"] = conf_json(def, init);
    json jt = json::array();
    for (const SimTick& tk : tr.ticks) {
      json t;
      t["before"] = conf_json(def, tk.before);
      if (!def.following && def.senerr != 0) t["sensed_pedestrian_y"] = jrat(tk.sensed_py);
      t["vehicle_accel"] = jrat(tk.veh_acc);
      if (def.following) t["leader_accel"] = jrat(tk.other_acc);
      json levels = json::array();
      for (Level l : tk.fine) levels.push_back(level_name(l));
      t["levels"] = levels;
      jt.push_back(t);
    }
    out["ticks"] = jt;
    out["final"] = conf_json(def, tr.final_conf);
    json tl = json::array();
    for (Level l : tr.tick_levels) tl.push_back(level_name(l));
    out["tick_levels"] = tl;
    *out_json = dup_string(out.dump(2));
  });
}

rta_status rta_falsify_json(const rta_scenario* sc, const char* request_json, char** out_json,
                            char** err_msg) {
  if (!sc || !request_json || !out_json) {
    set_err(err_msg, "null argument");
    return RTA_ERR_INVALID;
  }
  return guarded(err_msg, [&] {
    json req;
    try {
      req = json::parse(request_json);
    } catch (const json::exception& e) {
      throw Error(ErrCode::Invalid, std::string("request is not valid JSON: ") + e.what());
    }
    if (!req.is_object() || !req.contains("property") || !req["property"].is_string())
      throw Error(ErrCode::Invalid, "property: required string");

    const ScenarioDef& def = sc->def;
    const std::string prop = req["property"].get<std::string>();
    const int budget = req.value("budget", 10000);
    const std::uint64_t seed = req.value("seed", std::uint64_t{1});
    const int subdiv = req.value("subdiv", 100);

    json out;
    out["found"] = false;

    if (prop == "adequacy-prec1" || prop == "adequacy-bad") {
      auto specs =
          prop == "adequacy-prec1" ? enumerate_prec1_cases(kLevelCount) : enumerate_bad_cases(kLevelCount);
      std::string only = req.value("case", std::string{});
      bool matched = only.empty();
      for (size_t ci = 0; ci < specs.size(); ++ci) {
        const AdequacyCaseSpec& spec = specs[ci];
        if (!only.empty() && spec.id != only) continue;
        matched = true;
        if (spec.disallowed.empty()) continue;
        std::vector<Level> disallowed;
        for (int d : spec.disallowed) disallowed.push_back(static_cast<Level>(d));
        for (size_t oi = 0; oi < spec.orientations.size(); ++oi) {
          Level from = static_cast<Level>(spec.orientations[oi].first);
          Level to = static_cast<Level>(spec.orientations[oi].second);
          auto w = falsify_adequacy(def, from, to, disallowed, budget,
                                    seed + ci * 7919 + oi, subdiv);
          if (w && confirm_adequacy(def, *w, disallowed, false)) {
            out["found"] = true;
            out["case"] = spec.id;
            out["witness"] = witness_json(def, *w);
            *out_json = dup_string(out.dump(2));
            return;
          }
        }
      }
      if (!matched) throw Error(ErrCode::Invalid, "case: no adequacy case named '" + only + "'");
    } else if (prop == "noskip") {
      Level sp = level_arg(req.value("sp_safe", std::string{}).c_str(), Level::Safe);
      auto w = falsify_noskip(def, sp, budget, seed);
      if (w && confirm_noskip(def, sp, *w)) {
        out["found"] = true;
        out["case"] = std::string("skip:") + level_name(sp);
        out["witness"] = witness_json(def, *w);
      }
    } else if (prop == "recoverability") {
      if (!req.contains("horizon") || !req["horizon"].is_number_integer())
        throw Error(ErrCode::Invalid, "horizon: required integer for recoverability");
      int horizon = req["horizon"].get<int>();
      Level sp_safe = level_arg(req.value("sp_safe", std::string{}).c_str(), Level::Safe);
      Level sp_safer = level_arg(req.value("sp_safer", std::string{}).c_str(), Level::Safer);
      auto w = falsify_recoverability(def, horizon, sp_safe, sp_safer, budget, seed);
      if (w && confirm_recoverability(def, horizon, sp_safe, sp_safer, *w)) {
        out["found"] = true;
        out["case"] = "recover";
        out["witness"] = witness_json(def, *w, horizon);
      }
    } else {
      throw Error(ErrCode::Invalid,
                  "property must be adequacy-prec1, adequacy-bad, noskip or recoverability");
    }
    *out_json = dup_string(out.dump(2));
  });
}

void rta_string_free(char* s) { std::free(s); }

}  // extern "C"
