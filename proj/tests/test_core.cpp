#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>

#include "tennis/core.hpp"

using namespace tennis;

namespace {

// First n letters of the ABBAABBA... serving pattern.
std::string abba(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (i % 4 == 0 || i % 4 == 3) ? 'A' : 'B';
  return s;
}

double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double f = 1.0;
  for (int i = 1; i <= n; ++i) f *= i;
  for (int i = 1; i <= k; ++i) f /= i;
  for (int i = 1; i <= n - k; ++i) f /= i;
  return f;
}

}  // namespace

TEST(Core, OddsValues) {
  EXPECT_DOUBLE_EQ(odds(0.5), 1.0);
  EXPECT_DOUBLE_EQ(odds(0.75), 3.0);
  EXPECT_TRUE(std::isinf(odds(1.0)));
  EXPECT_DOUBLE_EQ(odds(0.0), 0.0);
  EXPECT_NEAR(odds_ratio({0.6, 0.55}), (0.6 / 0.4) / (0.55 / 0.45), 1e-15);
}

TEST(Core, RejectsInvalidProbability) {
  EXPECT_THROW(check_probability(-0.01, "pa"), DomainError);
  EXPECT_THROW(check_probability(1.01, "pa"), DomainError);
  EXPECT_THROW(check_probability(std::numeric_limits<double>::quiet_NaN(), "pa"), DomainError);
  try {
    check_pair({0.5, 2.0});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.parameter(), "pb");
  }
  EXPECT_NO_THROW(check_probability(0.0, "p"));
  EXPECT_NO_THROW(check_probability(1.0, "p"));
}

TEST(Core, ServeCountsExamples) {
  EXPECT_EQ(serves_by_first_server(1), 1);
  EXPECT_EQ(serves_by_first_server(4), 2);
  EXPECT_EQ(serves_by_first_server(13), 7);
  EXPECT_TRUE(first_server_on_point(1));
  EXPECT_TRUE(first_server_on_point(13));
  EXPECT_FALSE(first_server_on_point(19));
  EXPECT_THROW(serves_by_first_server(0), DomainError);
}

TEST(Core, ServeCountsMatchEnumeration) {
  const std::string s = abba(400);
  int a = 0;
  for (int n = 1; n <= 400; ++n) {
    a += s[n - 1] == 'A';
    EXPECT_EQ(first_server_on_point(n), s[n - 1] == 'A') << n;
    EXPECT_EQ(serves_by_first_server(n), a) << n;
    EXPECT_EQ(serves_by_first_server(n) + serves_by_second_server(n), n);
    EXPECT_LE(std::abs(serves_by_first_server(n) - serves_by_second_server(n)), 1);
  }
}

TEST(Core, FullTieBreakSplitsServesEvenly) {
  for (int K = 2; K <= 40; ++K) EXPECT_EQ(serves_by_first_server(2 * (K - 1)), K - 1) << K;
}

TEST(Core, GameServeCounts) {
  EXPECT_EQ(games_served_by_first_server(1), 1);
  EXPECT_EQ(games_served_by_first_server(11), 6);
  EXPECT_TRUE(first_server_on_game(11));
  EXPECT_EQ(games_served_by_first_server(12), 6);
  EXPECT_FALSE(first_server_on_game(12));
  for (int g = 1; g <= 100; ++g) {
    EXPECT_EQ(games_served_by_first_server(g) + games_served_by_second_server(g), g);
    EXPECT_EQ(first_server_on_game(g), g % 2 == 1);
  }
  EXPECT_THROW(games_served_by_first_server(0), DomainError);
}

TEST(Core, BinomialCoefficients) {
  EXPECT_DOUBLE_EQ(binomial_coefficient(12, 6), 924.0);
  EXPECT_DOUBLE_EQ(binomial_coefficient(5, 7), 0.0);
  for (int n = 0; n <= 20; ++n)
    for (int k = 0; k <= n; ++k) EXPECT_NEAR(binomial_coefficient(n, k), choose(n, k), 1e-9 * choose(n, k));
}

TEST(Core, ConvolutionExamples) {
  EXPECT_NEAR(binomial_convolution_mass(1, 0.5, 1, 0.5, 1), 0.5, 1e-15);
  EXPECT_NEAR(binomial_convolution_mass(2, 1.0, 2, 0.0, 2), 1.0, 1e-15);
}

TEST(Core, ConvolutionMatchesDoubleLoop) {
  const int n1 = 6, n2 = 6;
  const double p1 = 0.6, p2 = 0.45;
  double total = 0.0;
  for (int k = 0; k <= n1 + n2; ++k) {
    double oracle = 0.0;
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j)
        if (i + j == k)
          oracle += choose(n1, i) * std::pow(p1, i) * std::pow(1 - p1, n1 - i) * choose(n2, j) * std::pow(p2, j) *
                    std::pow(1 - p2, n2 - j);
    EXPECT_NEAR(binomial_convolution_mass(n1, p1, n2, p2, k), oracle, 1e-14) << k;
    double tail = 0.0;
    for (int m = k; m <= n1 + n2; ++m) tail += binomial_convolution_mass(n1, p1, n2, p2, m);
    EXPECT_NEAR(binomial_convolution_tail(n1, p1, n2, p2, k), tail, 1e-14) << k;
    total += oracle;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Core, ConvolutionSumsToOne) {
  for (int n1 : {0, 1, 5, 9})
    for (int n2 : {0, 3, 8})
      for (double p1 : {0.0, 0.3, 0.77, 1.0})
        for (double p2 : {0.0, 0.5, 0.91}) {
          double s = 0.0;
          for (int k = 0; k <= n1 + n2; ++k) s += binomial_convolution_mass(n1, p1, n2, p2, k);
          EXPECT_NEAR(s, 1.0, 1e-12);
        }
}

TEST(Core, GeometricMomentsExamples) {
  Moments m = geometric_moments(1.0);
  EXPECT_DOUBLE_EQ(m.mean, 1.0);
  EXPECT_DOUBLE_EQ(m.variance, 0.0);
  m = geometric_moments(0.5);
  EXPECT_DOUBLE_EQ(m.mean, 2.0);
  EXPECT_DOUBLE_EQ(m.variance, 2.0);
  m = geometric_moments(0.52);
  EXPECT_NEAR(m.mean, 1.923076923076923, 1e-12);
  EXPECT_NEAR(m.variance, 1.775147928994083, 1e-12);
  EXPECT_THROW(geometric_moments(0.0), NonTerminatingError);
}

TEST(Core, GeometricMomentsMatchTruncatedSeries) {
  for (double eta = 0.01; eta <= 1.0; eta += 0.03) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, w = eta;
    for (int n = 1; n <= 20000; ++n) {
      s0 += w;
      s1 += n * w;
      s2 += static_cast<double>(n) * n * w;
      w *= 1.0 - eta;
    }
    const Moments m = geometric_moments(eta);
    EXPECT_NEAR(s0, 1.0, 1e-12);
    EXPECT_NEAR(m.mean, s1, 1e-9) << eta;
    EXPECT_NEAR(m.variance, s2 - s1 * s1, 1e-9 * std::max(1.0, m.variance)) << eta;
  }
}
