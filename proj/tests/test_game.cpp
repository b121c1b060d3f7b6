#include <gtest/gtest.h>

#include <map>
#include <utility>
#include <vector>

#include "tennis/game.hpp"

using namespace tennis;

namespace {

struct PointDp {
  std::vector<double> win;   // server wins at n points
  std::vector<double> loss;  // receiver wins at n points
};

// Plays a game point by point from 0-0 up to n_max points.
PointDp play_game(double p, int n_max) {
  PointDp out{std::vector<double>(n_max + 1, 0.0), std::vector<double>(n_max + 1, 0.0)};
  std::map<std::pair<int, int>, double> live{{{0, 0}, 1.0}};
  for (int n = 1; n <= n_max; ++n) {
    std::map<std::pair<int, int>, double> next;
    for (const auto& [s, w] : live) {
      for (int side = 0; side < 2; ++side) {
        const int a = s.first + (side == 0);
        const int b = s.second + (side == 1);
        const double x = w * (side == 0 ? p : 1.0 - p);
        if (a >= 4 && a - b >= 2) out.win[n] += x;
        else if (b >= 4 && b - a >= 2) out.loss[n] += x;
        else next[{a, b}] += x;
      }
    }
    live.swap(next);
  }
  return out;
}

// Deuce played out over at most n_max points.
double deuce_oracle(double p, int n_max) {
  double lead[3] = {0.0, 1.0, 0.0};  // difference -1, 0, +1
  double won = 0.0;
  for (int n = 0; n < n_max; ++n) {
    const double q = 1.0 - p;
    won += lead[2] * p;
    const double m1 = lead[1] * q, z = lead[2] * q + lead[0] * p, p1 = lead[1] * p;
    lead[0] = m1;
    lead[1] = z;
    lead[2] = p1;
  }
  return won;
}

std::vector<double> grid99() {
  std::vector<double> g;
  for (int i = 1; i <= 99; ++i) g.push_back(i / 100.0);
  return g;
}

}  // namespace

TEST(GameTieBreak, Examples) {
  EXPECT_DOUBLE_EQ(gt_win_prob(0.5), 0.5);
  EXPECT_NEAR(gt_win_prob(0.6), 0.36 / 0.52, 1e-12);
  EXPECT_DOUBLE_EQ(gt_win_prob(1.0), 1.0);
  EXPECT_DOUBLE_EQ(gt_win_prob(0.0), 0.0);
}

TEST(GameTieBreak, MatchesSequenceEnumeration) {
  for (double p : grid99()) EXPECT_NEAR(gt_win_prob(p), deuce_oracle(p, 200), 1e-9) << p;
}

TEST(GameTieBreak, MomentsAreTwiceGeometric) {
  const Moments m = gt_points_moments(0.6);
  const double eta = 0.36 + 0.16;
  EXPECT_NEAR(m.mean, 2.0 / eta, 1e-12);
  EXPECT_NEAR(m.variance, 4.0 * (1 - eta) / (eta * eta), 1e-12);
}

TEST(Game, Examples) {
  EXPECT_DOUBLE_EQ(game_win_prob(0.5), 0.5);
  EXPECT_NEAR(game_win_prob(0.6), 0.735, 0.001);
  const Moments m = game_points_moments(0.5);
  EXPECT_NEAR(m.mean, 6.75, 1e-9);
  EXPECT_NEAR(m.variance, 7.6875, 1e-9);
}

TEST(Game, WinProbMatchesPointDp) {
  for (double p : grid99()) {
    const PointDp dp = play_game(p, 300);
    double w = 0.0;
    for (double x : dp.win) w += x;
    EXPECT_NEAR(game_win_prob(p), w, 1e-12) << p;
  }
}

TEST(Game, BreakdownAtPointSix) {
  const Breakdown b = game_breakdown(0.6);
  ASSERT_EQ(b.rows.size(), 4u);
  const double ref[4][5] = {{0.129, 0.025, 0.155, 4.000, 0.000},
                            {0.207, 0.061, 0.268, 5.000, 0.000},
                            {0.207, 0.092, 0.299, 6.000, 0.000},
                            {0.191, 0.085, 0.276, 9.846, 7.100}};
  for (int h = 0; h < 4; ++h) {
    const ScoreRow& r = b.rows[h];
    EXPECT_NEAR(r.win_a, ref[h][0], 0.001) << r.label;
    EXPECT_NEAR(r.win_b, ref[h][1], 0.001) << r.label;
    EXPECT_NEAR(r.probability(), ref[h][2], 0.001) << r.label;
    EXPECT_NEAR(r.mean, ref[h][3], 0.005) << r.label;
    EXPECT_NEAR(r.variance, ref[h][4], 0.005) << r.label;
  }
  EXPECT_NEAR(b.overall.win_a, 0.735, 0.001);
  EXPECT_NEAR(b.overall.win_b, 0.264, 0.001);
  EXPECT_NEAR(b.overall.mean, 6.484, 0.005);
  EXPECT_NEAR(b.overall.variance, 6.708, 0.005);
}

TEST(Game, BreakdownIsConsistent) {
  for (double p : grid99()) {
    const Breakdown b = game_breakdown(p);
    double total = 0.0, mean = 0.0;
    for (const ScoreRow& r : b.rows) {
      total += r.probability();
      mean += r.probability() * r.mean;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
    EXPECT_NEAR(mean, b.overall.mean, 1e-9);
    EXPECT_NEAR(b.overall.mean, game_points_moments(p).mean, 1e-9);
    EXPECT_NEAR(b.overall.variance, game_points_moments(p).variance, 1e-9);
  }
  const Breakdown even = game_breakdown(0.5);
  for (const ScoreRow& r : even.rows) EXPECT_DOUBLE_EQ(r.win_a, r.win_b);
}

TEST(Game, SShape) {
  for (double p : grid99()) {
    EXPECT_NEAR(gt_win_prob(1 - p), 1 - gt_win_prob(p), 1e-12);
    EXPECT_NEAR(game_win_prob(1 - p), 1 - game_win_prob(p), 1e-12);
    if (p > 0.5) EXPECT_GT(game_win_prob(p), p);
    if (p < 0.5) EXPECT_LT(game_win_prob(p), p);
  }
}

TEST(Game, MomentsSymmetricInServerAndReceiver) {
  for (double p : grid99()) {
    const Moments a = game_points_moments(p), b = game_points_moments(1 - p);
    EXPECT_NEAR(a.mean, b.mean, 1e-12);
    EXPECT_NEAR(a.variance, b.variance, 1e-12);
  }
}

TEST(Game, PmfMatchesPointDp) {
  for (double p : {0.05, 0.3, 0.5, 0.6, 0.95}) {
    const PointCountDistribution d = game_points_pmf(p, 120);
    const PointDp dp = play_game(p, 120);
    for (int n = 0; n <= 120; ++n) EXPECT_NEAR(d.mass[n], dp.win[n] + dp.loss[n], 1e-14) << p << " " << n;
    const GameJointPmf j = game_joint_pmf(p, 120);
    for (int n = 0; n <= 120; ++n) {
      EXPECT_NEAR(j.win[n], dp.win[n], 1e-14);
      EXPECT_NEAR(j.loss[n], dp.loss[n], 1e-14);
    }
  }
}

TEST(Game, PmfTerminates) {
  for (double p = 0.0; p <= 1.0 + 1e-12; p += 0.01) {
    const PointCountDistribution d = game_points_pmf(std::min(p, 1.0));
    EXPECT_NEAR(d.total_mass() + d.truncation_mass, 1.0, 1e-9);
    for (double x : d.mass) EXPECT_GE(x, 0.0);
    if (p >= 0.05 - 1e-12 && p <= 0.95 + 1e-12) EXPECT_LT(d.truncation_mass, 1e-12) << p;
  }
}

TEST(Game, ClosedMomentsMatchTruncatedPmf) {
  for (double p : grid99()) {
    const PointCountDistribution d = game_points_pmf(p, 400);
    const Moments t = d.truncated_moments();
    EXPECT_NEAR(t.mean, d.moments.mean, 1e-8) << p;
    EXPECT_NEAR(t.variance, d.moments.variance, 1e-8) << p;
    EXPECT_DOUBLE_EQ(d.moments.mean, game_points_moments(p).mean);
  }
}

TEST(Game, DegenerateServer) {
  for (double p : {0.0, 1.0}) {
    const PointCountDistribution d = game_points_pmf(p);
    EXPECT_DOUBLE_EQ(d.mass[4], 1.0);
    EXPECT_DOUBLE_EQ(d.moments.mean, 4.0);
    EXPECT_DOUBLE_EQ(d.moments.variance, 0.0);
  }
  EXPECT_THROW(game_points_pmf(0.5, 5), DomainError);
}
