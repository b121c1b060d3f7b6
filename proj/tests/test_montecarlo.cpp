#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "tennis/montecarlo.hpp"
#include "tennis/set.hpp"

using namespace tennis;

namespace {

SimConfig config(SystemKind kind, ServePair params, std::uint64_t reps, std::uint64_t seed) {
  SimConfig c;
  c.system.kind = kind;
  c.params = params;
  c.replications = reps;
  c.seed = seed;
  return c;
}

void expect_same(const SimSummary& a, const SimSummary& b) {
  EXPECT_EQ(a.completed, b.completed);
  EXPECT_EQ(a.capped_replications, b.capped_replications);
  EXPECT_EQ(a.wins_a, b.wins_a);
  EXPECT_EQ(a.points.mean, b.points.mean);
  EXPECT_EQ(a.points.variance, b.points.variance);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].wins_a, b.rows[i].wins_a);
    EXPECT_EQ(a.rows[i].points.variance, b.rows[i].points.variance);
  }
}

}  // namespace

TEST(StreamRng, StreamsAreDistinctAndReproducible) {
  StreamRng a(7, 0), b(7, 0), c(7, 1), d(8, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = a.next();
    EXPECT_EQ(x, b.next());
    seen.insert(x);
    seen.insert(c.next());
    seen.insert(d.next());
  }
  EXPECT_EQ(seen.size(), 3000u);
  StreamRng u(1, 2);
  double s = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    s += x;
  }
  EXPECT_NEAR(s / 100000, 0.5, 4 * std::sqrt(1.0 / 12 / 100000));
}

TEST(Simulate, DeterministicAcrossRunsAndThreads) {
  SimConfig c = config(SystemKind::Set, {0.62, 0.57}, 20000, 99);
  c.threads = 1;
  const SimSummary a = simulate(c);
  const SimSummary b = simulate(c);
  c.threads = 3;
  const SimSummary t = simulate(c);
  expect_same(a, b);
  expect_same(a, t);
  c.seed = 100;
  EXPECT_NE(simulate(c).points.mean, a.points.mean);
}

TEST(Simulate, NonTerminatingReplicationsAreCapped) {
  SimConfig c = config(SystemKind::STT, {1.0, 1.0}, 10, 1);
  c.max_points = 1000;
  const SimSummary s = simulate(c);
  EXPECT_EQ(s.capped_replications, 10u);
  EXPECT_EQ(s.completed, 0u);
  EXPECT_EQ(s.points.count, 0u);
}

TEST(Simulate, RejectsBadConfig) {
  SimConfig c = config(SystemKind::Game, {0.5, 0.5}, 0, 1);
  EXPECT_THROW(simulate(c), DomainError);
  c.replications = 10;
  c.max_points = 99;
  EXPECT_THROW(simulate(c), DomainError);
  c.max_points = 1000;
  c.params.pa = 1.5;
  EXPECT_THROW(simulate(c), DomainError);
}

TEST(Simulate, TieBreakServeScheduleFollowsAbba) {
  for (int K : {2, 5, 7, 10}) {
    for (std::uint64_t rep = 0; rep < 50; ++rep) {
      const std::string trace = trace_tiebreak_servers({0.5, 0.5}, K, 3, rep, 64);
      ASSERT_FALSE(trace.empty());
      for (std::size_t n = 1; n <= trace.size(); ++n)
        EXPECT_EQ(trace[n - 1] == 'A', first_server_on_point(static_cast<int>(n))) << K << " " << n;
      EXPECT_EQ(static_cast<int>(std::count(trace.begin(), trace.end(), 'A')),
                serves_by_first_server(static_cast<int>(trace.size())));
    }
  }
  // Strong servers on both sides keep the race going up to the cap.
  EXPECT_EQ(trace_tiebreak_servers({0.99, 0.99}, 7, 3, 0, 64).size(), 64u);
}

TEST(Simulate, GameAgreesWithClosedForms) {
  SimConfig c = config(SystemKind::Game, {0.5, 0.5}, 1000000, 2024);
  const SimSummary s = simulate(c);
  EXPECT_NEAR(s.points.mean, 6.75, 3 * s.points.mean_se);
  EXPECT_NEAR(s.points.stddev, std::sqrt(7.6875), 4 * s.points.stddev_se);
  EXPECT_NEAR(s.win_rate_a, 0.5, 4 * s.win_rate_se);
  std::uint64_t rows = 0;
  for (const SimRow& r : s.rows) rows += r.wins_a + r.wins_b;
  EXPECT_EQ(rows, s.completed);
}

TEST(Simulate, BestOfPointsAgreesWithExactDistribution) {
  SimConfig c = config(SystemKind::BofK, {0.5, 0.5}, 400000, 5);
  c.system.L = 4;
  const SimSummary s = simulate(c);
  const PointCountDistribution d = bofk_points_distribution(0.5, 4);
  EXPECT_NEAR(s.points.mean, d.moments.mean, 4 * s.points.mean_se);
  EXPECT_NEAR(s.points.stddev, d.moments.stddev(), 4 * s.points.stddev_se);
}

TEST(Simulate, SetAgreesWithExactPointDistribution) {
  // At strong serves the decomposition variance overstates the spread; the
  // rules-level distribution is what the simulator must reproduce.
  const ServePair x{0.9, 0.8};
  SimConfig c = config(SystemKind::Set, x, 400000, 6);
  const SimSummary s = simulate(c);
  const PointCountDistribution d = set_points_distribution(x, 7);
  const Moments exact = d.truncated_moments();
  EXPECT_NEAR(s.points.mean, exact.mean, 4 * s.points.mean_se);
  EXPECT_NEAR(s.points.stddev, exact.stddev(), 4 * s.points.stddev_se);
  EXPECT_NEAR(s.win_rate_a, set_win_prob(x, 7), 4 * s.win_rate_se);
  EXPECT_GT(std::abs(s.points.stddev - d.moments.stddev()), 4 * s.points.stddev_se);
}

TEST(Simulate, SetRowsAgreeWithBreakdown) {
  const ServePair x{0.6, 0.55};
  SimConfig c = config(SystemKind::Set, x, 300000, 8);
  const SimSummary s = simulate(c);
  const Breakdown b = set_breakdown(x, 7);
  ASSERT_EQ(s.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const double pa = static_cast<double>(s.rows[i].wins_a) / s.completed;
    const double se = std::sqrt(b.rows[i].win_a * (1 - b.rows[i].win_a) / s.completed);
    EXPECT_EQ(s.rows[i].label, b.rows[i].label);
    EXPECT_NEAR(pa, b.rows[i].win_a, 4 * se) << s.rows[i].label;
  }
}

TEST(Simulate, MatchWinRate) {
  SimConfig c = config(SystemKind::Match, {0.6, 0.55}, 100000, 42);
  const SimSummary s = simulate(c);
  EXPECT_NEAR(s.win_rate_a, match_win_prob({0.6, 0.55}, {7, 10, 2}), 4 * s.win_rate_se);
  EXPECT_NEAR(s.points.mean, match_points_moments({0.6, 0.55}, {7, 10, 2}).mean, 4 * s.points.mean_se);
}

TEST(Simulate, BestOfGamesTieBreakVariants) {
  for (TieBreak t : {TieBreak::SG, TieBreak::STTG, TieBreak::STTP}) {
    SimConfig c = config(SystemKind::BoG, {0.55, 0.55}, 100000, 77);
    c.system.L = 5;
    c.system.tiebreak = t;
    const SimSummary s = simulate(c);
    const BestOfGamesSpec spec{5, t};
    EXPECT_NEAR(s.win_rate_a, bog_match_win_prob(c.params, spec), 4 * s.win_rate_se) << tiebreak_name(t);
    EXPECT_NEAR(s.points.mean, bog_match_points_moments(c.params, spec).mean, 4 * s.points.mean_se)
        << tiebreak_name(t);
  }
}
