#include "tennis/core.hpp"

#include <limits>

namespace tennis {

double PointCountDistribution::total_mass() const {
  double s = 0.0;
  for (double m : mass) s += m;
  return s;
}

Moments PointCountDistribution::truncated_moments() const {
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t n = 0; n < mass.size(); ++n) {
    s0 += mass[n];
    s1 += mass[n] * static_cast<double>(n);
  }
  if (s0 <= 0.0) return {};
  const double mean = s1 / s0;
  double s2 = 0.0;
  for (std::size_t n = 0; n < mass.size(); ++n) {
    const double d = static_cast<double>(n) - mean;
    s2 += mass[n] * d * d;
  }
  return {mean, s2 / s0};
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError(name, std::string(name) + " must be a probability in [0, 1]");
}

void check_pair(const ServePair& pair) {
  check_probability(pair.pa, "pa");
  check_probability(pair.pb, "pb");
}

double odds(double p) {
  check_probability(p, "p");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (1.0 - p);
}

double odds_ratio(const ServePair& pair) {
  check_pair(pair);
  const double num = pair.pa * (1.0 - pair.pb);
  const double den = (1.0 - pair.pa) * pair.pb;
  if (den == 0.0) {
    if (num == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::numeric_limits<double>::infinity();
  }
  return num / den;
}

namespace {
void check_count(int n, const char* name) {
  if (n < 1) throw DomainError(name, std::string(name) + " must be at least 1");
}
}  // namespace

int serves_by_first_server(int n) {
  check_count(n, "n");
  // Each block of four points ABBA gives the first server two serves; the
  // leftover points r = n mod 4 contribute 1 for r in {1,2,3}.
  const int r = n % 4;
  return 2 * (n / 4) + (r > 0 ? 1 : 0);
}

int serves_by_second_server(int n) { return n - serves_by_first_server(n); }

bool first_server_on_point(int n) {
  check_count(n, "n");
  const int r = n % 4;
  return r == 0 || r == 1;
}

int games_served_by_first_server(int g) {
  check_count(g, "g");
  return (g + 1) / 2;
}

int games_served_by_second_server(int g) { return g - games_served_by_first_server(g); }

bool first_server_on_game(int g) {
  check_count(g, "g");
  return g % 2 == 1;
}

double binomial_coefficient(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

double binomial_pmf(int n, double p, int k) {
  if (k < 0 || k > n) return 0.0;
  return binomial_coefficient(n, k) * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

double binomial_convolution_mass(int n1, double p1, int n2, double p2, int k) {
  if (k < 0 || k > n1 + n2) return 0.0;
  double s = 0.0;
  const int lo = k - n2 > 0 ? k - n2 : 0;
  const int hi = k < n1 ? k : n1;
  for (int i = lo; i <= hi; ++i) s += binomial_pmf(n1, p1, i) * binomial_pmf(n2, p2, k - i);
  return s;
}

double binomial_convolution_tail(int n1, double p1, int n2, double p2, int k) {
  double s = 0.0;
  for (int j = k < 0 ? 0 : k; j <= n1 + n2; ++j) s += binomial_convolution_mass(n1, p1, n2, p2, j);
  return s;
}

Moments geometric_moments(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    if (eta == 0.0) throw NonTerminatingError("non-terminating: geometric success probability is 0");
    throw DomainError("eta", "eta must lie in (0, 1]");
  }
  return {1.0 / eta, (1.0 - eta) / (eta * eta)};
}

}  // namespace tennis
