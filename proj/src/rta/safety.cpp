// Copyright (c) 2026 the rta-verify authors
// SPDX-License-Identifier: Apache-2.0

#include "rta/safety.hpp"

namespace rta {

const char* level_name(Level l) {
  switch (l) {
    case Level::Bad: return "bad";
    case Level::Unsafe: return "unsafe";
    case Level::Safe: return "safe";
    case Level::Safer: return "safer";
  }
  throw Error(ErrCode::Internal, "unreachable level");
}

Level level_from_name(std::string_view s) {
  if (s == "bad") return Level::Bad;
  if (s == "unsafe") return Level::Unsafe;
  if (s == "safe") return Level::Safe;
  if (s == "safer") return Level::Safer;
  throw Error(ErrCode::Invalid, "unknown risk level: '" + std::string(s) + "'");
}

void validate_family(const Family& fam) {
  auto check_gaps = [](const Rat& g3, const Rat& g2, const Rat& g1, const Rat& max_dec) {
    if (max_dec >= 0) throw Error(ErrCode::Config, "max_dec must be negative");
    if (!(g3 >= g2 && g2 >= g1 && g1 > 0))
      throw Error(ErrCode::Config, "gaps must be descending and positive");
  };
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GapsPedestrian> || std::is_same_v<T, GapsFollowing>) {
          check_gaps(f.g_safer, f.g_safe, f.g_unsafe, f.max_dec);
        } else if constexpr (std::is_same_v<T, GapsPedestrianBounded>) {
          check_gaps(f.g_safer, f.g_safe, f.g_unsafe, f.max_dec);
          if (f.low_spd < 0) throw Error(ErrCode::Config, "lowSpd must be nonnegative");
          if (f.far_away <= 0) throw Error(ErrCode::Config, "farAway must be positive");
        } else if constexpr (std::is_same_v<T, RssFollowing>) {
          if (f.max_acc < 0) throw Error(ErrCode::Config, "rss maxAcc must be nonnegative");
          if (f.max_dec_f >= 0) throw Error(ErrCode::Config, "rss follower maxDec must be negative");
          if (f.max_dec_l >= 0) throw Error(ErrCode::Config, "rss leader maxDec must be negative");
          if (f.dt <= 0) throw Error(ErrCode::Config, "rss dt must be positive");
        }
      },
      fam);
}

bool family_needs_leader(const Family& fam) {
  return std::holds_alternative<GapsFollowing>(fam) || std::holds_alternative<RssFollowing>(fam);
}

namespace {

// Gap value g for the level whose raw test is a distance threshold.
const Rat& gap_for(Level l, const Rat& g3, const Rat& g2, const Rat& g1) {
  switch (l) {
    case Level::Safer: return g3;
    case Level::Safe: return g2;
    case Level::Unsafe: return g1;
    case Level::Bad: break;
  }
  throw Error(ErrCode::Internal, "bad has no distance threshold");
}

int rss_tier(Level l) {
  switch (l) {
    case Level::Safer: return 3;
    case Level::Safe: return 2;
    case Level::Unsafe: return 1;
    case Level::Bad: break;
  }
  throw Error(ErrCode::Internal, "bad has no distance threshold");
}

// Leader-term coefficient for v_l^2 in d_rss: the formula's literal reading
// adds the term for negative max_dec_l; the standard convention subtracts it.
Rat rss_lead_coeff(const RssFollowing& f) {
  return f.sign == RssSign::Literal ? Rat(-1) / (2 * f.max_dec_l) : Rat(1) / (2 * f.max_dec_l);
}

// --- Symbolic thresholds -----------------------------------------------------

Term threshold_term(const GapsPedestrian& f, Level l, const RiskInputs& in) {
  Rat c = Rat(-1) / (2 * f.max_dec);  // stop_dist = c * v^2
  return in.vel * in.vel * lit(c) + lit(gap_for(l, f.g_safer, f.g_safe, f.g_unsafe)) * in.vel;
}

Term threshold_term(const GapsPedestrianBounded& f, Level l, const RiskInputs& in) {
  GapsPedestrian base{f.g_safer, f.g_safe, f.g_unsafe, f.max_dec};
  return threshold_term(base, l, in);
}

Term threshold_term(const GapsFollowing& f, Level l, const RiskInputs& in) {
  Rat c = Rat(-1) / (2 * f.max_dec);
  Term stop_diff = (in.vel * in.vel - in.lead_vel * in.lead_vel) * lit(c);
  return max_term(lit(0L), stop_diff) +
         lit(gap_for(l, f.g_safer, f.g_safe, f.g_unsafe)) * in.vel;
}

Term threshold_term(const RssFollowing& f, Level l, const RiskInputs& in) {
  Rat rho = Rat(rss_tier(l)) * f.dt;
  Rat cf = Rat(-1) / (2 * f.max_dec_f);
  Rat cl = rss_lead_coeff(f);
  Term reach = in.vel + lit(f.max_acc * rho);  // follower speed after the response window
  return in.vel * lit(rho) + lit(f.max_acc * rho * rho / 2) + reach * reach * lit(cf) +
         in.lead_vel * in.lead_vel * lit(cl);
}

// --- Exact thresholds --------------------------------------------------------

Rat threshold_rat(const GapsPedestrian& f, Level l, const Rat& v, const Rat&) {
  Rat c = Rat(-1) / (2 * f.max_dec);
  return c * v * v + gap_for(l, f.g_safer, f.g_safe, f.g_unsafe) * v;
}

Rat threshold_rat(const GapsPedestrianBounded& f, Level l, const Rat& v, const Rat& vl) {
  GapsPedestrian base{f.g_safer, f.g_safe, f.g_unsafe, f.max_dec};
  return threshold_rat(base, l, v, vl);
}

Rat threshold_rat(const GapsFollowing& f, Level l, const Rat& v, const Rat& vl) {
  Rat c = Rat(-1) / (2 * f.max_dec);
  Rat diff = c * (v * v - vl * vl);
  if (diff < 0) diff = 0;
  return diff + gap_for(l, f.g_safer, f.g_safe, f.g_unsafe) * v;
}

Rat threshold_rat(const RssFollowing& f, Level l, const Rat& v, const Rat& vl) {
  Rat rho = Rat(rss_tier(l)) * f.dt;
  Rat cf = Rat(-1) / (2 * f.max_dec_f);
  Rat cl = rss_lead_coeff(f);
  Rat reach = v + f.max_acc * rho;
  return v * rho + f.max_acc * rho * rho / 2 + cf * reach * reach + cl * vl * vl;
}

// Raw test S_level over exact values.
bool reach_rat(const Family& fam, Level l, const Rat& dist, const Rat& v, const Rat& vl) {
  if (l == Level::Bad) return true;
  bool cleared = std::visit(
      [&](const auto& f) { return dist >= threshold_rat(f, l, v, vl); }, fam);
  if (l == Level::Safer) {
    if (const auto* b = std::get_if<GapsPedestrianBounded>(&fam)) {
      cleared = cleared || v <= b->low_spd || dist >= b->far_away;
    }
  }
  return cleared;
}

}  // namespace

Constraint reach_raw(const Family& fam, Level l, const RiskInputs& in) {
  if (l == Level::Bad) return c_bool(true);
  Constraint cleared = std::visit(
      [&](const auto& f) { return in.dist >= threshold_term(f, l, in); }, fam);
  if (l == Level::Safer) {
    if (const auto* b = std::get_if<GapsPedestrianBounded>(&fam)) {
      return c_or({cleared, in.vel <= lit(b->low_spd), in.dist >= lit(b->far_away)});
    }
  }
  return cleared;
}

Constraint guard(const Family& fam, Level l, const RiskInputs& in) {
  std::vector<Constraint> parts;
  for (int higher = static_cast<int>(Level::Safer); higher > static_cast<int>(l); --higher) {
    parts.push_back(negate(reach_raw(fam, static_cast<Level>(higher), in)));
  }
  if (l != Level::Bad) parts.push_back(reach_raw(fam, l, in));
  return c_and(std::move(parts));
}

Level classify(const Family& fam, const Rat& dist, const Rat& vel, const Rat& lead_vel) {
  for (int l = static_cast<int>(Level::Safer); l > static_cast<int>(Level::Bad); --l) {
    if (reach_rat(fam, static_cast<Level>(l), dist, vel, lead_vel)) return static_cast<Level>(l);
  }
  return Level::Bad;
}

Rat threshold(const Family& fam, Level l, const Rat& vel, const Rat& lead_vel) {
  return std::visit([&](const auto& f) { return threshold_rat(f, l, vel, lead_vel); }, fam);
}

}  // namespace rta
