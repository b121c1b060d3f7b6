#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "tennis/system.hpp"

using namespace tennis;

namespace {

class Identities : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240601};
  std::uniform_real_distribution<double> unit{0.0, 1.0};
  std::uniform_real_distribution<double> inner{0.02, 0.98};
  std::uniform_int_distribution<int> target{2, 12};

  ServePair pair() { return {inner(rng), inner(rng)}; }
};

}  // namespace

TEST_F(Identities, Reflection) {
  for (int i = 0; i < 500; ++i) {
    const double p = unit(rng);
    EXPECT_NEAR(gt_win_prob(1 - p), 1 - gt_win_prob(p), 1e-12);
    EXPECT_NEAR(game_win_prob(1 - p), 1 - game_win_prob(p), 1e-12);
    for (int L : {3, 4, 5}) EXPECT_NEAR(bofk_win_prob(1 - p, L), 1 - bofk_win_prob(p, L), 1e-12);
  }
}

TEST_F(Identities, FairAtEqualServe) {
  for (int i = 0; i < 200; ++i) {
    const double p = inner(rng);
    const int K = target(rng);
    EXPECT_NEAR(gt_win_prob(0.5), 0.5, 1e-12);
    EXPECT_NEAR(stt_win_prob({p, p}), 0.5, 1e-12);
    EXPECT_NEAR(st_win_prob({p, p}, K), 0.5, 1e-12);
    EXPECT_NEAR(set_win_prob({p, p}, K), 0.5, 1e-12);
    EXPECT_NEAR(match_win_prob({p, p}, {K, target(rng), 1 + i % 3}), 0.5, 1e-12);
  }
}

TEST_F(Identities, ReversalSymmetry) {
  for (int i = 0; i < 200; ++i) {
    const ServePair x = pair();
    const ServePair r{1 - x.pb, 1 - x.pa};
    const int K = target(rng);
    const MatchSpec m{K, target(rng), 1 + i % 3};
    EXPECT_NEAR(stt_win_prob(x), stt_win_prob(r), 1e-12);
    EXPECT_NEAR(st_win_prob(x, K), st_win_prob(r, K), 1e-12);
    EXPECT_NEAR(set_win_prob(x, K), set_win_prob(r, K), 1e-12);
    EXPECT_NEAR(match_win_prob(x, m), match_win_prob(r, m), 1e-12);
  }
}

TEST_F(Identities, BestOfSevenGap) {
  for (int i = 0; i < 500; ++i) {
    const double p = unit(rng), q = 1 - p;
    EXPECT_NEAR(game_win_prob(p) - bofk_win_prob(p, 3), 20 * std::pow(p * q, 3) * (gt_win_prob(p) - p), 1e-12);
  }
}

TEST_F(Identities, SetTieBreakTail) {
  for (int i = 0; i < 200; ++i) {
    const ServePair x{unit(rng), unit(rng)};
    const int K = target(rng);
    const TieBreakTerms t = st_terms(x, K);
    double s = 0.0;
    for (double a : t.a_wins) s += a;
    EXPECT_NEAR(s, binomial_convolution_tail(K - 1, x.pa, K - 1, 1 - x.pb, K), 1e-12);
  }
}

TEST_F(Identities, SetFirstServerIrrelevant) {
  for (int i = 0; i < 200; ++i) {
    const ServePair x = pair();
    const int K = target(rng);
    EXPECT_NEAR(1 - set_win_prob({x.pb, x.pa}, K), set_win_prob(x, K), 1e-10);
    EXPECT_NEAR(1 - st_win_prob({x.pb, x.pa}, K), st_win_prob(x, K), 1e-10);
  }
}
