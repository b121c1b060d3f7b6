#pragma once

#include <string>
#include <vector>

#include "tennis/core.hpp"

namespace tennis {

// One line of a per-final-score summary: probability that each player wins
// with this score, and the mean and variance of the points played given it.
struct ScoreRow {
  std::string label;
  double win_a = 0.0;
  double win_b = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double probability() const { return win_a + win_b; }
};

struct Breakdown {
  std::vector<ScoreRow> rows;
  ScoreRow overall;
};

// Game tie-breaker (deuce) with a single server.
double gt_win_prob(double p);
// Points played from deuce onwards.
Moments gt_points_moments(double p);

double game_win_prob(double p);
Moments game_points_moments(double p);
PointCountDistribution game_points_pmf(double p, int n_max = 400);

// Rows 4-0, 4-1, 4-2 and GT (won from deuce), then the overall line.
Breakdown game_breakdown(double p);

// Joint distribution of (server wins, N_G): win[n] and loss[n] for n = 0..n_max.
struct GameJointPmf {
  std::vector<double> win;
  std::vector<double> loss;
};
GameJointPmf game_joint_pmf(double p, int n_max);

}  // namespace tennis
