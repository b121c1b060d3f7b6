#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tennis {

// Thrown for arguments outside an operation's domain. `parameter` names the
// offending argument so front ends can report the flag that caused it.
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string parameter, const std::string& what)
      : std::invalid_argument(what), parameter_(std::move(parameter)) {}
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

// The process reaches, with positive probability, a tie-breaker that never ends.
class NonTerminatingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure missed its tolerance; carries the best estimate found.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_(best_estimate), err_(error_estimate) {}
  double best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return err_; }

 private:
  double best_;
  double err_;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double stddev() const { return std::sqrt(variance); }
};

// Distribution of the number of points played. mass[n] is Pr{N = n} for
// n = 0..n_max; whatever lies beyond n_max is reported in truncation_mass.
struct PointCountDistribution {
  std::vector<double> mass;
  double truncation_mass = 0.0;
  Moments moments;

  int n_max() const { return static_cast<int>(mass.size()) - 1; }
  double total_mass() const;
  // Moments of the truncated support alone, renormalised by its total mass.
  Moments truncated_moments() const;
};

struct ServePair {
  double pa;
  double pb;
};

void check_probability(double p, const char* name);
void check_pair(const ServePair& pair);

// p / (1 - p); +infinity at p = 1.
double odds(double p);
double odds_ratio(const ServePair& pair);

// Serve order ABBAABBAA... inside set tie-breakers.
int serves_by_first_server(int n);
int serves_by_second_server(int n);
bool first_server_on_point(int n);

// Simple alternation of games starting with the first server.
int games_served_by_first_server(int g);
int games_served_by_second_server(int g);
bool first_server_on_game(int g);

double binomial_coefficient(int n, int k);
double binomial_pmf(int n, double p, int k);

// Pr{X + Y = k} and Pr{X + Y >= k} for independent X ~ Bin(n1, p1), Y ~ Bin(n2, p2).
double binomial_convolution_mass(int n1, double p1, int n2, double p2, int k);
double binomial_convolution_tail(int n1, double p1, int n2, double p2, int k);

// Mean and variance of a geometric count of trials with success probability eta.
Moments geometric_moments(double eta);

}  // namespace tennis
