#include "tennis/game.hpp"

#include <cstdio>

namespace tennis {

double gt_win_prob(double p) {
  check_probability(p, "p");
  const double q = 1.0 - p;
  return p * p / (p * p + q * q);
}

Moments gt_points_moments(double p) {
  check_probability(p, "p");
  const double q = 1.0 - p;
  // Points come in pairs; a pair ends the tie-breaker unless it is split.
  const Moments pairs = geometric_moments(p * p + q * q);
  return {2.0 * pairs.mean, 4.0 * pairs.variance};
}

double game_win_prob(double p) {
  check_probability(p, "p");
  const double q = 1.0 - p;
  const double p4 = p * p * p * p;
  return p4 + 4.0 * p4 * q + 10.0 * p4 * q * q + 20.0 * p * p * p * q * q * q * gt_win_prob(p);
}

namespace {
// Mass of reaching deuce (3-3).
double deuce_mass(double p) {
  const double q = 1.0 - p;
  return 20.0 * p * p * p * q * q * q;
}

double straight_mass(double p, int n) {
  const double q = 1.0 - p;
  return binomial_coefficient(n - 1, 3) * (std::pow(p, 4) * std::pow(q, n - 4) + std::pow(q, 4) * std::pow(p, n - 4));
}
}  // namespace

Moments game_points_moments(double p) {
  check_probability(p, "p");
  double m1 = 0.0, m2 = 0.0;
  for (int n = 4; n <= 6; ++n) {
    const double w = straight_mass(p, n);
    m1 += n * w;
    m2 += n * n * w;
  }
  const double d = deuce_mass(p);
  const Moments gt = gt_points_moments(p);
  const double tb_mean = 6.0 + gt.mean;
  m1 += d * tb_mean;
  m2 += d * (gt.variance + tb_mean * tb_mean);
  return {m1, m2 - m1 * m1};
}

PointCountDistribution game_points_pmf(double p, int n_max) {
  check_probability(p, "p");
  if (n_max < 6) throw DomainError("n_max", "n_max must be at least 6");
  const double q = 1.0 - p;
  PointCountDistribution out;
  out.mass.assign(n_max + 1, 0.0);
  for (int n = 4; n <= 6; ++n) out.mass[n] = straight_mass(p, n);
  const double d = deuce_mass(p);
  const double s = p * p + q * q;
  const double split = 2.0 * p * q;
  double run = d * s;
  int pairs = 0;
  for (int n = 8; n <= n_max; n += 2) {
    out.mass[n] = run;
    run *= split;
    ++pairs;
  }
  out.truncation_mass = d * std::pow(split, pairs);
  out.moments = game_points_moments(p);
  return out;
}

Breakdown game_breakdown(double p) {
  check_probability(p, "p");
  const double q = 1.0 - p;
  Breakdown b;
  for (int h = 0; h <= 2; ++h) {
    const double c = binomial_coefficient(3 + h, 3);
    char label[8];
    std::snprintf(label, sizeof label, "4-%d", h);
    b.rows.push_back({label, c * std::pow(p, 4) * std::pow(q, h), c * std::pow(q, 4) * std::pow(p, h), 4.0 + h, 0.0});
  }
  const double d = deuce_mass(p);
  const double tgt = gt_win_prob(p);
  const Moments gt = gt_points_moments(p);
  b.rows.push_back({"GT", d * tgt, d * (1.0 - tgt), 6.0 + gt.mean, gt.variance});
  const double theta = game_win_prob(p);
  const Moments m = game_points_moments(p);
  b.overall = {"overall", theta, 1.0 - theta, m.mean, m.variance};
  return b;
}

GameJointPmf game_joint_pmf(double p, int n_max) {
  check_probability(p, "p");
  const double q = 1.0 - p;
  GameJointPmf j;
  j.win.assign(n_max + 1, 0.0);
  j.loss.assign(n_max + 1, 0.0);
  for (int n = 4; n <= 6 && n <= n_max; ++n) {
    const double c = binomial_coefficient(n - 1, 3);
    j.win[n] = c * std::pow(p, 4) * std::pow(q, n - 4);
    j.loss[n] = c * std::pow(q, 4) * std::pow(p, n - 4);
  }
  double run = deuce_mass(p);
  for (int n = 8; n <= n_max; n += 2) {
    j.win[n] = run * p * p;
    j.loss[n] = run * q * q;
    run *= 2.0 * p * q;
  }
  return j;
}

}  // namespace tennis
