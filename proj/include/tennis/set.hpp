#pragma once

#include <array>
#include <vector>

#include "tennis/core.hpp"
#include "tennis/game.hpp"

namespace tennis {

// Tie-breaker's tie-breaker: play on from level until one player leads by two.
double stt_win_prob(const ServePair& pair);
Moments stt_points_moments(const ServePair& pair);
PointCountDistribution stt_points_distribution(const ServePair& pair, int n_max = 1000);

// Masses of the K-point set tie-breaker's end states. a_wins[h] is
// Pr{A wins K-h}, b_wins[h] is Pr{B wins K-h}, h = 0..K-2, and tie is
// Pr{reach (K-1, K-1)}. A serves the first point.
struct TieBreakTerms {
  std::vector<double> a_wins;
  std::vector<double> b_wins;
  double tie = 0.0;
};
TieBreakTerms st_terms(const ServePair& pair, int K);

double st_win_prob(const ServePair& pair, int K);
Moments st_points_moments(const ServePair& pair, int K);
PointCountDistribution st_points_distribution(const ServePair& pair, int K, int n_max = 1000);

// Distribution of points played, split by winner; the tie-breaker mass
// beyond n_max is returned in truncation_mass.
struct JointPointPmf {
  std::vector<double> a_wins;
  std::vector<double> b_wins;
  double truncation_mass = 0.0;
};
JointPointPmf st_joint_pmf(const ServePair& pair, int K, int n_max);

// Final game scores of a set. Index h in 0..4 stands for 6-h, index 5 for 7-5.
// tie is Pr{6-6}, after which the set is decided by the K-point tie-breaker.
struct SetScores {
  std::array<double, 6> a_wins{};
  std::array<double, 6> b_wins{};
  double tie = 0.0;
};
SetScores set_scores(const ServePair& pair);

double set_win_prob(const ServePair& pair, int K);
Moments set_points_moments(const ServePair& pair, int K);

// Rows 6-0 .. 6-4, 7-5, 7-6 and the overall line. Per-row moments treat
// each game's length as independent of who won it.
Breakdown set_breakdown(const ServePair& pair, int K);

// Distribution of points in a set obtained by convolving the game and
// tie-breaker distributions along every score path. Its moments field holds
// the decomposition values from set_points_moments.
JointPointPmf set_joint_pmf(const ServePair& pair, int K, int n_max);
PointCountDistribution set_points_distribution(const ServePair& pair, int K, int n_max = 2000);

namespace detail {
void require_terminating(const ServePair& pair, double tie_mass);
// out[n + m] += scale * a[n] * b[m], clipped to out.size().
void convolve_into(std::vector<double>& out, const std::vector<double>& a, const std::vector<double>& b,
                   double scale = 1.0);
}  // namespace detail

}  // namespace tennis
