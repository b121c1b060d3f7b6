#pragma once

#include <map>
#include <utility>

#include "tennis/core.hpp"
#include "tennis/game.hpp"
#include "tennis/set.hpp"

namespace tennis {

// Best-of-(2Q+1) sets. Sets 1..2Q use a K0-point tie-breaker, the deciding
// set a K1-point one.
struct MatchSpec {
  int K0 = 7;
  int K1 = 10;
  int Q = 2;
};

void check_match_spec(const MatchSpec& spec);

// Joint mass of the set score (S_A, S_B). absorbing holds the final scores,
// transient the probability of passing through each unfinished score.
struct SetScoreJpmf {
  std::map<std::pair<int, int>, double> absorbing;
  std::map<std::pair<int, int>, double> transient;
};

SetScoreJpmf match_set_jpmf(const ServePair& pair, const MatchSpec& spec);
double match_win_prob(const ServePair& pair, const MatchSpec& spec);
Moments match_points_moments(const ServePair& pair, const MatchSpec& spec);

// Rows by the loser's set count 0..Q, then the overall line.
Breakdown match_breakdown(const ServePair& pair, const MatchSpec& spec);

// Distribution of points in the match from convolving the set-level
// distributions (every set opened by A). Its moments field holds the values
// from match_points_moments.
PointCountDistribution match_points_distribution(const ServePair& pair, const MatchSpec& spec, int n_max = 4000);

}  // namespace tennis
