#pragma once

#include <string>

#include "tennis/core.hpp"
#include "tennis/game.hpp"

namespace tennis {

// Best-of-(2L+1) points with a single server: first to L+1 points.
double bofk_win_prob(double p, int L);
PointCountDistribution bofk_points_distribution(double p, int L);

// How a best-of-(2L+1)-games contest is settled at L-L.
enum class TieBreak {
  SG,    // one sudden-death game, server chosen by a fair coin
  STTG,  // keep alternating games until one player is two games ahead
  STTP,  // keep playing alternating-serve points until one player is two points ahead
};

TieBreak parse_tiebreak(const std::string& name);
std::string tiebreak_name(TieBreak t);

struct BestOfGamesSpec {
  int L = 22;
  TieBreak tiebreak = TieBreak::STTG;
};

// Point cost attached to the STTG tie branch. Compound counts the points of
// every game played in it; GamesCount adds the number of games instead.
enum class TieCount { Compound, GamesCount };

double bog_match_win_prob(const ServePair& pair, const BestOfGamesSpec& spec);
Moments bog_match_points_moments(const ServePair& pair, const BestOfGamesSpec& spec,
                                 TieCount count = TieCount::Compound);

// Final game scores. a_wins[b] = Pr{A wins L+1 to b}, b_wins[a] = Pr{B wins L+1 to a}
// for 0 <= a, b < L; tie = Pr{L-L}.
struct GameScoreJpmf {
  std::vector<double> a_wins;
  std::vector<double> b_wins;
  double tie = 0.0;
};
GameScoreJpmf bog_game_jpmf(const ServePair& pair, int L);

}  // namespace tennis
