#include "tennis/system.hpp"

#include "tennis/game.hpp"
#include "tennis/set.hpp"

namespace tennis {

SystemKind parse_system(const std::string& name) {
  if (name == "gt") return SystemKind::GT;
  if (name == "game") return SystemKind::Game;
  if (name == "stt") return SystemKind::STT;
  if (name == "st") return SystemKind::ST;
  if (name == "set") return SystemKind::Set;
  if (name == "match") return SystemKind::Match;
  if (name == "bofk") return SystemKind::BofK;
  if (name == "bog") return SystemKind::BoG;
  throw DomainError("system", "unknown system '" + name + "' (expected gt, game, stt, st, set, match, bofk, bog)");
}

std::string system_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::GT: return "gt";
    case SystemKind::Game: return "game";
    case SystemKind::STT: return "stt";
    case SystemKind::ST: return "st";
    case SystemKind::Set: return "set";
    case SystemKind::Match: return "match";
    case SystemKind::BofK: return "bofk";
    case SystemKind::BoG: return "bog";
  }
  return "?";
}

std::string system_symbol(SystemKind kind) {
  switch (kind) {
    case SystemKind::GT: return "GT";
    case SystemKind::Game: return "G";
    case SystemKind::STT: return "STT";
    case SystemKind::ST: return "ST";
    case SystemKind::Set: return "S";
    case SystemKind::Match: return "M";
    case SystemKind::BofK: return "BofK";
    case SystemKind::BoG: return "BofG";
  }
  return "?";
}

std::string describe(const SystemSpec& spec) {
  const std::string name = system_name(spec.kind);
  switch (spec.kind) {
    case SystemKind::ST:
    case SystemKind::Set: return name + "(k=" + std::to_string(spec.K) + ")";
    case SystemKind::Match:
      return name + "(k0=" + std::to_string(spec.match.K0) + ",k1=" + std::to_string(spec.match.K1) +
             ",q=" + std::to_string(spec.match.Q) + ")";
    case SystemKind::BofK: return name + "(l=" + std::to_string(spec.L) + ")";
    case SystemKind::BoG: return name + "(l=" + std::to_string(spec.L) + "," + tiebreak_name(spec.tiebreak) + ")";
    default: return name;
  }
}

bool is_one_parameter(SystemKind kind) {
  return kind == SystemKind::GT || kind == SystemKind::Game || kind == SystemKind::BofK;
}

void validate(const SystemSpec& spec) {
  switch (spec.kind) {
    case SystemKind::ST:
    case SystemKind::Set:
      if (spec.K < 2) throw DomainError("k", "k must be at least 2");
      break;
    case SystemKind::Match: check_match_spec(spec.match); break;
    case SystemKind::BofK:
    case SystemKind::BoG:
      if (spec.L < 1) throw DomainError("l", "l must be at least 1");
      break;
    default: break;
  }
}

double system_win_prob(const SystemSpec& spec, const ServePair& pair) {
  switch (spec.kind) {
    case SystemKind::GT: return gt_win_prob(pair.pa);
    case SystemKind::Game: return game_win_prob(pair.pa);
    case SystemKind::STT: return stt_win_prob(pair);
    case SystemKind::ST: return st_win_prob(pair, spec.K);
    case SystemKind::Set: return set_win_prob(pair, spec.K);
    case SystemKind::Match: return match_win_prob(pair, spec.match);
    case SystemKind::BofK: return bofk_win_prob(pair.pa, spec.L);
    case SystemKind::BoG: return bog_match_win_prob(pair, {spec.L, spec.tiebreak});
  }
  return 0.0;
}

Moments system_points_moments(const SystemSpec& spec, const ServePair& pair) {
  switch (spec.kind) {
    case SystemKind::GT: return gt_points_moments(pair.pa);
    case SystemKind::Game: return game_points_moments(pair.pa);
    case SystemKind::STT: return stt_points_moments(pair);
    case SystemKind::ST: return st_points_moments(pair, spec.K);
    case SystemKind::Set: return set_points_moments(pair, spec.K);
    case SystemKind::Match: return match_points_moments(pair, spec.match);
    case SystemKind::BofK: return bofk_points_distribution(pair.pa, spec.L).moments;
    case SystemKind::BoG: return bog_match_points_moments(pair, {spec.L, spec.tiebreak});
  }
  return {};
}

}  // namespace tennis
