#pragma once

#include <string>

#include "tennis/bestof.hpp"
#include "tennis/core.hpp"
#include "tennis/match.hpp"

namespace tennis {

enum class SystemKind { GT, Game, STT, ST, Set, Match, BofK, BoG };

struct SystemSpec {
  SystemKind kind = SystemKind::Game;
  int K = 7;             // ST, Set
  MatchSpec match{};     // Match
  int L = 4;             // BofK, BoG
  TieBreak tiebreak = TieBreak::STTG;  // BoG
};

SystemKind parse_system(const std::string& name);
std::string system_name(SystemKind kind);
// Short identifier used in output symbols, e.g. "G", "ST", "M", "BofK".
std::string system_symbol(SystemKind kind);
// Human-readable label including parameters, e.g. "match(k0=7,k1=10,q=2)".
std::string describe(const SystemSpec& spec);

// One-parameter systems (GT, Game, BofK) depend on the server's p only; for
// them pb is ignored.
bool is_one_parameter(SystemKind kind);

void validate(const SystemSpec& spec);

double system_win_prob(const SystemSpec& spec, const ServePair& pair);
Moments system_points_moments(const SystemSpec& spec, const ServePair& pair);

}  // namespace tennis
