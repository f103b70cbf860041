// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0

#include "rta/checkers.hpp"

#include "rta/version.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <functional>
#include <thread>
#include <utility>

namespace rta {

using json = nlohmann::json;

namespace {

class Stopwatch {
 public:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string sanitize_file(std::string_view s) {
  std::string out;
  for (char ch : s) {
    bool keep = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    out += keep ? ch : '-';
  }
  return out;
}

const char* status_str(SolveStatus s, bool dump_only) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Unknown: return dump_only ? "dumped" : "unknown";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::SolverError: return "solver-error";
  }
  return "solver-error";
}

struct RunOut {
  SolveResult result;
  QueryRec query;
};

// Per-check solver front end: resolves the command once and names dump files
// deterministically after property, case and query.
class Runner {
 public:
  Runner(const CheckOptions& opt, std::string property)
      : opt_(&opt), property_(std::move(property)) {
    argv_ = opt.solver_argv.empty() ? default_solver_argv() : opt.solver_argv;
  }

  RunOut run(const Store& store, const std::string& case_id, const std::string& query_id) const {
    SolveOptions so;
    so.argv = argv_;
    so.timeout_sec = opt_->timeout_sec;
    so.dump_only = opt_->dump_only;
    if (!opt_->dump_dir.empty()) {
      so.dump_file = opt_->dump_dir + "/" + sanitize_file(property_) + "_" +
                     sanitize_file(case_id) + "_" + sanitize_file(query_id) + ".smt2";
    }
    RunOut out;
    out.result = solve(store, so);
    out.query.id = query_id;
    out.query.status = status_str(out.result.status, opt_->dump_only);
    out.query.seconds = out.result.seconds;
    if (out.result.status == SolveStatus::SolverError)
      out.query.note = out.result.transcript.substr(0, 300);
    return out;
  }

 private:
  const CheckOptions* opt_;
  std::string property_;
  std::vector<std::string> argv_;
};

void parallel_for(int jobs, int n, const std::function<void(int)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errs(static_cast<size_t>(n));
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errs[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < std::min(jobs, n); ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  for (std::exception_ptr& e : errs)
    if (e) std::rethrow_exception(e);
}

// Replays a sat model exactly; on any failure records a case-level error
// (a sat claim that does not replay is solver or tool misbehavior, never a
// counterexample).
std::optional<Assignment> validated_assignment(const Store& store, const SolveResult& r,
                                               CaseRec& rec) {
  if (!r.model) {
    rec.status = "error";
    rec.note = "solver reported sat but no model could be parsed";
    return std::nullopt;
  }
  try {
    if (!replay(store, *r.model)) {
      rec.status = "error";
      rec.note = "solver model failed exact replay against the query";
      return std::nullopt;
    }
  } catch (const Error& e) {
    rec.status = "error";
    rec.note = std::string("solver model not exactly replayable: ") + e.what();
    return std::nullopt;
  }
  Assignment a;
  for (const auto& [idx, v] : r.model->values) a.set(idx, v);
  return a;
}

ConcConf eval_conf(const SymConf& sc, const Assignment& a) {
  ConcConf c;
  c.veh = {eval(sc.veh.x, a), eval(sc.veh.y, a), eval(sc.veh.vel, a)};
  c.other = {eval(sc.other.x, a), eval(sc.other.y, a), eval(sc.other.vel, a)};
  return c;
}

json agent_json(const ConcAgent& a) {
  return json{{"x", jrat(a.x)}, {"y", jrat(a.y)}, {"vel", jrat(a.vel)}};
}

std::vector<Level> levels_below(Level sp) {
  std::vector<Level> out;
  for (int l = 0; l < static_cast<int>(sp); ++l) out.push_back(static_cast<Level>(l));
  return out;
}

std::vector<Level> levels_above(Level sp) {
  std::vector<Level> out;
  for (int l = static_cast<int>(sp) + 1; l < kLevelCount; ++l) out.push_back(static_cast<Level>(l));
  return out;
}

Constraint any_guard(const Family& fam, const std::vector<Level>& levels, const RiskInputs& in) {
  std::vector<Constraint> gs;
  gs.reserve(levels.size());
  for (Level l : levels) gs.push_back(guard(fam, l, in));
  return c_or(std::move(gs));
}

CheckReport base_report(const ScenarioDef& def, const CheckOptions& opt, std::string property) {
  CheckReport r;
  r.property = std::move(property);
  r.scenario = def.name;
  r.config_digest = def.config_digest;
  r.monolithic = opt.monolithic;
  r.closed_split = opt.closed_split;
  r.oracle_prepass = opt.oracle_prepass;
  r.dump_only = opt.dump_only;
  r.timeout_sec = opt.timeout_sec;
  r.jobs = opt.jobs;
  return r;
}

std::string fold_cases(const std::vector<CaseRec>& cs) {
  bool err = false, to = false, unk = false;
  for (const CaseRec& c : cs) {
    if (c.status == "counterexample") return "counterexample";
    err |= c.status == "error";
    to |= c.status == "timeout";
    unk |= c.status == "unknown";
  }
  if (err) return "error";
  if (to) return "timeout";
  if (unk) return "unknown";
  return "holds";
}

void prepare_dump_dir(const CheckOptions& opt) {
  if (!opt.dump_dir.empty()) std::filesystem::create_directories(opt.dump_dir);
}

}  // namespace

json jrat(const Rat& r) { return json{{"exact", rat_to_string(r)}, {"approx", rat_to_double(r)}}; }

json conf_json(const ScenarioDef& def, const ConcConf& c) {
  return json{{"vehicle", agent_json(c.veh)},
              {def.following ? "leader" : "pedestrian", agent_json(c.other)}};
}

json witness_json(const ScenarioDef& def, const AdequacyWitness& w) {
  json j;
  j["initial"] = conf_json(def, w.conf0);
  j["vehicle_accel"] = jrat(w.veh_acc);
  if (def.following) j["leader_accel"] = jrat(w.other_acc);
  j["delta"] = jrat(w.delta);
  j["levels"] = json{{"start", level_name(w.from)},
                     {"end", level_name(w.to)},
                     {"mid", level_name(w.mid)}};
  return j;
}

json witness_json(const ScenarioDef& def, const SkipWitness& w) {
  json j;
  j["initial"] = conf_json(def, w.conf0);
  j["vehicle_accel"] = jrat(w.veh_acc);
  if (def.following) j["leader_accel"] = jrat(w.other_acc);
  j["levels"] = json{{"start", level_name(w.from)}, {"end", level_name(w.to)}};
  return j;
}

json witness_json(const ScenarioDef& def, const RecoveryWitness& w, int horizon) {
  json j;
  j["initial"] = conf_json(def, w.conf0);
  json va = json::array();
  for (const Rat& a : w.veh_accels) va.push_back(jrat(a));
  j["vehicle_accels"] = va;
  if (def.following) {
    json oa = json::array();
    for (const Rat& a : w.other_accels) oa.push_back(jrat(a));
    j["leader_accels"] = oa;
  }
  if (!w.sensed.empty()) {
    json s = json::array();
    for (const Rat& v : w.sensed) s.push_back(jrat(v));
    j["sensed_pedestrian_y"] = s;
  }
  j["violation"] = json{{"query", w.violation_tick < 0 ? "horizon" : "floor"},
                        {"tick", w.violation_tick < 0 ? horizon : w.violation_tick},
                        {"level", level_name(w.violation_level)}};
  return j;
}

int verdict_exit_code(const std::string& v) {
  if (v == "holds") return 0;
  if (v == "counterexample") return 1;
  if (v == "unknown" || v == "timeout") return 2;
  return 3;
}

// ---------------------------------------------------------------------------
// Sampling-time adequacy
// ---------------------------------------------------------------------------

CheckReport check_adequacy(const ScenarioDef& def, bool chain_neighbor, const CheckOptions& opt) {
  Stopwatch sw;
  prepare_dump_dir(opt);
  CheckReport rep = base_report(def, opt, chain_neighbor ? "adequacy-prec1" : "adequacy-bad");
  std::vector<AdequacyCaseSpec> specs =
      chain_neighbor ? enumerate_prec1_cases(kLevelCount) : enumerate_bad_cases(kLevelCount);

  // One shared symbolic tick of the free dynamics; every case branches off
  // this store.
  SymTraceBuilder builder(def);
  builder.init();
  builder.tick_free();
  const Store base = builder.store();
  const SymConf& c0 = builder.conf(0);
  const SymConf& c1 = builder.conf(1);
  const Term va = builder.veh_accel(0);
  const Term oa = builder.other_accel(0);
  const RiskInputs g0 = builder.ground(c0);
  const RiskInputs g1 = builder.ground(c1);

  Runner runner(opt, rep.property);
  rep.cases.resize(specs.size());

  parallel_for(opt.jobs, static_cast<int>(specs.size()), [&](int ci) {
    const AdequacyCaseSpec& spec = specs[static_cast<size_t>(ci)];
    CaseRec& rec = rep.cases[static_cast<size_t>(ci)];
    Stopwatch csw;
    rec.id = spec.id;
    if (spec.disallowed.empty()) {
      rec.status = "vacuous";
      rec.note = "every level is allowed between these endpoints";
      rec.seconds = csw.elapsed();
      return;
    }
    std::vector<Level> disallowed;
    for (int d : spec.disallowed) disallowed.push_back(static_cast<Level>(d));

    bool err = false, to = false, unk = false;
    auto note_status = [&](SolveStatus st) {
      err |= st == SolveStatus::SolverError;
      to |= st == SolveStatus::Timeout;
      unk |= st == SolveStatus::Unknown;
    };

    for (size_t oi = 0; oi < spec.orientations.size(); ++oi) {
      const Level from = static_cast<Level>(spec.orientations[oi].first);
      const Level to_lvl = static_cast<Level>(spec.orientations[oi].second);
      const std::string oid = std::string(level_name(from)) + "->" + level_name(to_lvl);

      if (opt.oracle_prepass && !opt.dump_only) {
        std::uint64_t seed =
            opt.seed + static_cast<std::uint64_t>(ci) * 7919 + static_cast<std::uint64_t>(oi);
        auto w = falsify_adequacy(def, from, to_lvl, disallowed, opt.prepass_budget, seed, 100);
        if (w && confirm_adequacy(def, *w, disallowed, opt.closed_split)) {
          rec.status = "counterexample";
          rec.origin = "oracle";
          rec.note = "found by concrete falsification; solver not invoked for this case";
          rec.witness = witness_json(def, *w);
          rec.seconds = csw.elapsed();
          return;
        }
      }

      Store s1 = base.require(guard(def.family, from, g0)).require(guard(def.family, to_lvl, g1));
      if (!opt.monolithic) {
        RunOut r1 = runner.run(s1, spec.id, "reach:" + oid);
        rec.queries.push_back(r1.query);
        if (r1.result.status == SolveStatus::Unsat) continue;  // endpoints unreachable
        if (r1.result.status != SolveStatus::Sat) note_status(r1.result.status);
        // Reachable (or undecided): fall through to the split stage, whose
        // unsat results are conclusive on their own.
      }

      SplitStep split = split_step(def, s1, c0, va, oa, opt.closed_split, "mid");
      const RiskInputs gm = builder.ground(split.conf);
      for (Level d : disallowed) {
        Store s2 = split.store.require(guard(def.family, d, gm));
        RunOut r2 = runner.run(s2, spec.id, "split:" + oid + ":" + level_name(d));
        rec.queries.push_back(r2.query);
        if (r2.result.status == SolveStatus::Unsat) continue;
        if (r2.result.status != SolveStatus::Sat) {
          note_status(r2.result.status);
          continue;
        }
        auto asgn = validated_assignment(s2, r2.result, rec);
        if (!asgn) {
          rec.seconds = csw.elapsed();
          return;
        }
        try {
          AdequacyWitness w;
          w.conf0 = eval_conf(c0, *asgn);
          w.veh_acc = eval(va, *asgn);
          w.other_acc = eval(oa, *asgn);
          w.delta = eval(split.delta, *asgn);
          w.from = from;
          w.to = to_lvl;
          w.mid = classify_ground(
              def, ConcreteDriver::advance(def, w.conf0, w.veh_acc, w.other_acc, w.delta));
          if (w.mid != d || !confirm_adequacy(def, w, disallowed, opt.closed_split)) {
            rec.status = "error";
            rec.note = "replayed solver model rejected by the concrete oracle";
            rec.seconds = csw.elapsed();
            return;
          }
          rec.status = "counterexample";
          rec.origin = "smt";
          rec.witness = witness_json(def, w);
        } catch (const Error& e) {
          rec.status = "error";
          rec.note = std::string("witness extraction failed: ") + e.what();
        }
        rec.seconds = csw.elapsed();
        return;
      }
    }

    rec.status = err ? "error" : to ? "timeout" : unk ? "unknown" : "holds";
    if (opt.dump_only) rec.note = "queries dumped, not solved";
    rec.seconds = csw.elapsed();
  });

  rep.verdict = fold_cases(rep.cases);
  rep.seconds = sw.elapsed();
  return rep;
}

// ---------------------------------------------------------------------------
// noSkip
// ---------------------------------------------------------------------------

CheckReport check_noskip(const ScenarioDef& def, Level sp_safe, const CheckOptions& opt) {
  Stopwatch sw;
  prepare_dump_dir(opt);
  CheckReport rep = base_report(def, opt, "noskip");
  rep.sp_safe = level_name(sp_safe);

  CaseRec rec;
  Stopwatch csw;
  rec.id = std::string("skip:") + level_name(sp_safe);
  const std::vector<Level> above = levels_above(sp_safe);
  const std::vector<Level> below = levels_below(sp_safe);

  if (above.empty() || below.empty()) {
    rec.status = "vacuous";
    rec.note = "no level above or below the boundary";
  } else {
    bool done = false;
    if (opt.oracle_prepass && !opt.dump_only) {
      auto w = falsify_noskip(def, sp_safe, opt.prepass_budget, opt.seed);
      if (w && confirm_noskip(def, sp_safe, *w)) {
        rec.status = "counterexample";
        rec.origin = "oracle";
        rec.note = "found by concrete falsification; solver not invoked";
        rec.witness = witness_json(def, *w);
        done = true;
      }
    }
    if (!done) {
      SymTraceBuilder builder(def);
      builder.init();
      builder.tick_free();
      const SymConf& c0 = builder.conf(0);
      const Store s = builder.store()
                          .require(any_guard(def.family, above, builder.ground(c0)))
                          .require(any_guard(def.family, below, builder.ground(builder.conf(1))));
      Runner runner(opt, rep.property);
      RunOut r = runner.run(s, rec.id, "skip");
      rec.queries.push_back(r.query);
      switch (r.result.status) {
        case SolveStatus::Unsat:
          rec.status = "holds";
          break;
        case SolveStatus::Sat: {
          auto asgn = validated_assignment(s, r.result, rec);
          if (!asgn) break;  // error recorded
          try {
            SkipWitness w;
            w.conf0 = eval_conf(c0, *asgn);
            w.veh_acc = eval(builder.veh_accel(0), *asgn);
            w.other_acc = eval(builder.other_accel(0), *asgn);
            w.from = classify_ground(def, w.conf0);
            w.to = classify_ground(
                def, ConcreteDriver::advance(def, w.conf0, w.veh_acc, w.other_acc, def.dt));
            if (confirm_noskip(def, sp_safe, w)) {
              rec.status = "counterexample";
              rec.origin = "smt";
              rec.witness = witness_json(def, w);
            } else {
              rec.status = "error";
              rec.note = "replayed solver model rejected by the concrete oracle";
            }
          } catch (const Error& e) {
            rec.status = "error";
            rec.note = std::string("witness extraction failed: ") + e.what();
          }
          break;
        }
        case SolveStatus::Timeout:
          rec.status = "timeout";
          break;
        case SolveStatus::Unknown:
          rec.status = "unknown";
          if (opt.dump_only) rec.note = "queries dumped, not solved";
          break;
        case SolveStatus::SolverError:
          rec.status = "error";
          break;
      }
    }
  }
  rec.seconds = csw.elapsed();
  rep.cases.push_back(std::move(rec));
  rep.verdict = fold_cases(rep.cases);
  rep.seconds = sw.elapsed();
  return rep;
}

// ---------------------------------------------------------------------------
// Time-bounded recoverability
// ---------------------------------------------------------------------------

CheckReport check_recoverability(const ScenarioDef& def, int horizon, Level sp_safe,
                                 Level sp_safer, const CheckOptions& opt) {
  if (horizon < 0) throw Error(ErrCode::Invalid, "horizon must be non-negative");
  if (static_cast<int>(sp_safer) < static_cast<int>(sp_safe))
    throw Error(ErrCode::Invalid, "recovery target level is below the floor level");
  Stopwatch sw;
  prepare_dump_dir(opt);
  CheckReport rep = base_report(def, opt, "recoverability");
  rep.horizon = horizon;
  rep.sp_safe = level_name(sp_safe);
  rep.sp_safer = level_name(sp_safer);
  rep.prereqs_applicable = true;

  // The per-tick floor only constrains samples; bad-avoidance adequacy and
  // noSkip carry the guarantee between samples, so they are checked first
  // and their verdicts recorded alongside the main result.
  if (!opt.no_prereq) {
    CheckReport pa = check_adequacy(def, false, opt);
    rep.prerequisites.push_back({pa.property, pa.verdict});
    CheckReport pn = check_noskip(def, sp_safe, opt);
    rep.prerequisites.push_back({pn.property, pn.verdict});
    rep.prereqs_verified = true;
  }

  CaseRec rec;
  Stopwatch csw;
  rec.id = "recover";

  bool done = false;
  if (opt.oracle_prepass && !opt.dump_only) {
    auto w = falsify_recoverability(def, horizon, sp_safe, sp_safer, opt.prepass_budget, opt.seed);
    if (w && confirm_recoverability(def, horizon, sp_safe, sp_safer, *w)) {
      rec.status = "counterexample";
      rec.origin = "oracle";
      rec.note = "found by concrete falsification; solver not invoked";
      rec.witness = witness_json(def, *w, horizon);
      done = true;
    }
  }

  if (!done) {
    SymTraceBuilder builder(def);
    builder.init();
    for (int k = 0; k < horizon; ++k) builder.tick_controlled();
    const Store base =
        builder.store().require(guard(def.family, sp_safe, builder.ground(builder.conf(0))));

    struct Q {
      std::string id;
      Store store;
      int tick;  // -1 for the horizon query
    };
    std::vector<Q> qs;
    qs.push_back({"horizon",
                  base.require(any_guard(def.family, levels_below(sp_safer),
                                         builder.ground(builder.conf(horizon)))),
                  -1});
    for (int i = 0; i <= horizon; ++i) {
      qs.push_back({"floor:" + std::to_string(i),
                    base.require(
                        any_guard(def.family, levels_below(sp_safe), builder.ground(builder.conf(i)))),
                    i});
    }

    Runner runner(opt, rep.property);
    const auto nq = qs.size();
    std::vector<QueryRec> qrecs(nq);
    std::vector<json> wits(nq);
    std::vector<std::string> errs(nq);
    std::atomic<bool> found{false};

    // Extracts schedules from a model, re-derives the violated level by exact
    // re-simulation, and confirms.  Returns the witness JSON or an error note.
    auto extract = [&](const Store& store, const SolveResult& r, int tick, json& wit,
                       std::string& errnote) {
      CaseRec scratch;
      auto asgn = validated_assignment(store, r, scratch);
      if (!asgn) {
        errnote = scratch.note;
        return;
      }
      try {
        RecoveryWitness w;
        w.conf0 = eval_conf(builder.conf(0), *asgn);
        const bool noisy = !def.following && def.senerr != 0;
        for (int k = 0; k < horizon; ++k) {
          w.veh_accels.push_back(eval(builder.veh_accel(k), *asgn));
          if (def.following) w.other_accels.push_back(eval(builder.other_accel(k), *asgn));
          if (noisy)
            w.sensed.push_back(eval(symbol_term(builder.sensing(k).sensed_py_sym), *asgn));
        }
        w.violation_tick = tick;
        SimOptions so;
        if (def.controller.kind == ControllerSpec::Kind::FreeSymbolic)
          for (const Rat& a : w.veh_accels) so.veh_accels.push_back(a);
        if (def.following && def.leader.kind == ControllerSpec::Kind::FreeSymbolic)
          for (const Rat& a : w.other_accels) so.other_accels.push_back(a);
        if (noisy)
          for (const Rat& s : w.sensed) so.sensed.push_back(s);
        SimTrace tr = simulate(def, w.conf0, horizon, so);
        w.violation_level = tr.tick_levels[static_cast<size_t>(tick < 0 ? horizon : tick)];
        if (!confirm_recoverability(def, horizon, sp_safe, sp_safer, w)) {
          errnote = "replayed solver model rejected by the concrete oracle";
          return;
        }
        wit = witness_json(def, w, horizon);
      } catch (const Error& e) {
        errnote = std::string("witness extraction failed: ") + e.what();
      }
    };

    parallel_for(opt.jobs, static_cast<int>(nq), [&](int qi) {
      const auto qu = static_cast<size_t>(qi);
      if (found.load()) {
        qrecs[qu] = {qs[qu].id, "skipped", 0, "a counterexample was already found"};
        return;
      }
      RunOut r = runner.run(qs[qu].store, rec.id, qs[qu].id);
      qrecs[qu] = r.query;
      if (r.result.status == SolveStatus::Sat) {
        extract(qs[qu].store, r.result, qs[qu].tick, wits[qu], errs[qu]);
        if (!wits[qu].is_null()) found.store(true);
      }
    });

    for (size_t i = 0; i < nq; ++i) rec.queries.push_back(qrecs[i]);
    bool err = false, to = false, unk = false;
    std::string first_err;
    for (size_t i = 0; i < nq && rec.status.empty(); ++i) {
      if (!wits[i].is_null()) {
        rec.status = "counterexample";
        rec.origin = "smt";
        rec.witness = wits[i];
      }
    }
    for (size_t i = 0; i < nq; ++i) {
      if (!errs[i].empty() && first_err.empty()) first_err = errs[i];
      err |= qrecs[i].status == "solver-error" || !errs[i].empty();
      to |= qrecs[i].status == "timeout";
      unk |= qrecs[i].status == "unknown" || qrecs[i].status == "dumped";
    }
    if (rec.status.empty()) {
      rec.status = err ? "error" : to ? "timeout" : unk ? "unknown" : "holds";
      if (!first_err.empty()) rec.note = first_err;
      else if (opt.dump_only) rec.note = "queries dumped, not solved";
    }
  }

  rec.seconds = csw.elapsed();
  rep.cases.push_back(std::move(rec));
  rep.verdict = fold_cases(rep.cases);
  rep.seconds = sw.elapsed();
  return rep;
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

json CheckReport::to_json() const {
  json j;
  j["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
  j["property"] = property;
  j["scenario"] = scenario;
  j["config_digest"] = config_digest;
  j["verdict"] = verdict;
  j["seconds"] = seconds;
  j["options"] = json{{"monolithic", monolithic},       {"closed_split", closed_split},
                      {"oracle_prepass", oracle_prepass}, {"dump_only", dump_only},
                      {"timeout_sec", timeout_sec},      {"jobs", jobs}};
  if (horizon >= 0) j["horizon"] = horizon;
  if (!sp_safe.empty()) j["sp_safe"] = sp_safe;
  if (!sp_safer.empty()) j["sp_safer"] = sp_safer;
  if (prereqs_applicable) {
    json p;
    p["verified"] = prereqs_verified;
    if (!prereqs_verified) p["note"] = "prerequisites-unverified";
    json results = json::array();
    for (const PrereqRec& pr : prerequisites)
      results.push_back(json{{"property", pr.property}, {"verdict", pr.verdict}});
    p["results"] = results;
    j["prerequisites"] = p;
  }
  json cs = json::array();
  for (const CaseRec& c : cases) {
    json cj;
    cj["id"] = c.id;
    cj["status"] = c.status;
    cj["seconds"] = c.seconds;
    if (!c.origin.empty()) cj["origin"] = c.origin;
    if (!c.note.empty()) cj["note"] = c.note;
    json queries = json::array();
    for (const QueryRec& q : c.queries) {
      json qj = json{{"id", q.id}, {"status", q.status}, {"seconds", q.seconds}};
      if (!q.note.empty()) qj["note"] = q.note;
      queries.push_back(qj);
    }
    cj["queries"] = queries;
    if (!c.witness.is_null()) cj["witness"] = c.witness;
    cs.push_back(cj);
  }
  j["cases"] = cs;
  return j;
}

std::string CheckReport::summary() const {
  std::string s = property + " on " + scenario + ": " + verdict;
  if (verdict == "counterexample") {
    for (const CaseRec& c : cases) {
      if (c.status == "counterexample") {
        s += " (case " + c.id + ", " + c.origin + ")";
        break;
      }
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), " [%.2fs]", seconds);
  s += buf;
  return s;
}

}  // namespace rta
