#include "tennis/match.hpp"

#include <string>
#include <vector>

namespace tennis {

void check_match_spec(const MatchSpec& spec) {
  if (spec.K0 < 2) throw DomainError("k0", "k0 must be at least 2");
  if (spec.K1 < 2) throw DomainError("k1", "k1 must be at least 2");
  if (spec.Q < 1) throw DomainError("q", "q must be at least 1");
}

namespace {

double path_mass(int a, int b, double theta) {
  return binomial_coefficient(a + b, a) * std::pow(theta, a) * std::pow(1.0 - theta, b);
}

}  // namespace

SetScoreJpmf match_set_jpmf(const ServePair& pair, const MatchSpec& spec) {
  check_pair(pair);
  check_match_spec(spec);
  const int Q = spec.Q;
  const double t0 = set_win_prob(pair, spec.K0);
  const double t1 = spec.K1 == spec.K0 ? t0 : set_win_prob(pair, spec.K1);
  SetScoreJpmf j;
  for (int a = 0; a <= Q; ++a)
    for (int b = 0; b <= Q; ++b) j.transient[{a, b}] = path_mass(a, b, t0);
  for (int h = 0; h < Q; ++h) {
    j.absorbing[{Q + 1, h}] = path_mass(Q, h, t0) * t0;
    j.absorbing[{h, Q + 1}] = path_mass(h, Q, t0) * (1.0 - t0);
  }
  const double level = path_mass(Q, Q, t0);
  j.absorbing[{Q + 1, Q}] = level * t1;
  j.absorbing[{Q, Q + 1}] = level * (1.0 - t1);
  return j;
}

double match_win_prob(const ServePair& pair, const MatchSpec& spec) {
  const SetScoreJpmf j = match_set_jpmf(pair, spec);
  double w = 0.0;
  for (int b = 0; b <= spec.Q; ++b) w += j.absorbing.at({spec.Q + 1, b});
  return w;
}

Breakdown match_breakdown(const ServePair& pair, const MatchSpec& spec) {
  const SetScoreJpmf j = match_set_jpmf(pair, spec);
  const int Q = spec.Q;
  const Moments s0 = set_points_moments(pair, spec.K0);
  const Moments s1 = spec.K1 == spec.K0 ? s0 : set_points_moments(pair, spec.K1);
  Breakdown b;
  for (int h = 0; h <= Q; ++h) {
    Moments m;
    if (h < Q) {
      const int sets = h + Q + 1;
      m = {sets * s0.mean, sets * s0.variance};
    } else {
      m = {2 * Q * s0.mean + s1.mean, 2 * Q * s0.variance + s1.variance};
    }
    const std::string label = std::to_string(Q + 1) + "-" + std::to_string(h);
    b.rows.push_back({label, j.absorbing.at({Q + 1, h}), j.absorbing.at({h, Q + 1}), m.mean, m.variance});
  }
  double win = 0.0, m1 = 0.0, m2 = 0.0, within = 0.0;
  for (const ScoreRow& r : b.rows) {
    const double w = r.probability();
    win += r.win_a;
    m1 += w * r.mean;
    m2 += w * r.mean * r.mean;
    within += w * r.variance;
  }
  b.overall = {"overall", win, 1.0 - win, m1, within + m2 - m1 * m1};
  return b;
}

Moments match_points_moments(const ServePair& pair, const MatchSpec& spec) {
  const Breakdown b = match_breakdown(pair, spec);
  return {b.overall.mean, b.overall.variance};
}

PointCountDistribution match_points_distribution(const ServePair& pair, const MatchSpec& spec, int n_max) {
  check_pair(pair);
  check_match_spec(spec);
  const int Q = spec.Q;
  auto trimmed = [](JointPointPmf j) {
    for (auto* v : {&j.a_wins, &j.b_wins})
      while (v->size() > 1 && v->back() < 1e-300) v->pop_back();
    return j;
  };
  const JointPointPmf regular = trimmed(set_joint_pmf(pair, spec.K0, n_max));
  const JointPointPmf decider = spec.K1 == spec.K0 ? regular : trimmed(set_joint_pmf(pair, spec.K1, n_max));

  std::vector<double> finished(n_max + 1, 0.0);
  std::map<std::pair<int, int>, std::vector<double>> states;
  states[{0, 0}] = std::vector<double>(n_max + 1, 0.0);
  states[{0, 0}][0] = 1.0;
  for (int set = 1; set <= 2 * Q + 1; ++set) {
    const JointPointPmf& s = set == 2 * Q + 1 ? decider : regular;
    std::map<std::pair<int, int>, std::vector<double>> next;
    for (const auto& [score, v] : states) {
      for (int a_won = 1; a_won >= 0; --a_won) {
        const int na = score.first + a_won;
        const int nb = score.second + 1 - a_won;
        std::vector<double>* dst;
        if (na == Q + 1 || nb == Q + 1) {
          dst = &finished;
        } else {
          auto& slot = next[{na, nb}];
          if (slot.empty()) slot.assign(n_max + 1, 0.0);
          dst = &slot;
        }
        detail::convolve_into(*dst, v, a_won ? s.a_wins : s.b_wins);
      }
    }
    states = std::move(next);
  }
  PointCountDistribution out;
  out.mass = std::move(finished);
  double total = 0.0;
  for (double m : out.mass) total += m;
  out.truncation_mass = std::max(0.0, 1.0 - total);
  out.moments = match_points_moments(pair, spec);
  return out;
}

}  // namespace tennis
