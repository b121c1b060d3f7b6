#include "tennis/set.hpp"

#include <cstdio>
#include <map>
#include <utility>

namespace tennis {

namespace detail {

void require_terminating(const ServePair& pair, double tie_mass) {
  const double eta = pair.pa * (1.0 - pair.pb) + (1.0 - pair.pa) * pair.pb;
  if (tie_mass > 0.0 && eta == 0.0)
    throw NonTerminatingError("non-terminating: the tie-breaker's tie-breaker never ends for this serve pair");
}

void convolve_into(std::vector<double>& out, const std::vector<double>& a, const std::vector<double>& b,
                   double scale) {
  const std::size_t size = out.size();
  for (std::size_t i = 0; i < a.size() && i < size; ++i) {
    const double ai = a[i] * scale;
    if (ai == 0.0) continue;
    const std::size_t lim = std::min(b.size(), size - i);
    double* dst = out.data() + i;
    for (std::size_t j = 0; j < lim; ++j) dst[j] += ai * b[j];
  }
}

}  // namespace detail

namespace {

double eta_of(const ServePair& pair) { return pair.pa * (1.0 - pair.pb) + (1.0 - pair.pa) * pair.pb; }

void check_K(int K) {
  if (K < 2) throw DomainError("k", "tie-breaker target K must be at least 2");
}

// Drop trailing entries that carry no meaningful mass.
void trim(std::vector<double>& v, double floor) {
  while (v.size() > 1 && v.back() < floor) v.pop_back();
}

}  // namespace

double stt_win_prob(const ServePair& pair) {
  check_pair(pair);
  detail::require_terminating(pair, 1.0);
  const double a = pair.pa * (1.0 - pair.pb);
  return a / (a + (1.0 - pair.pa) * pair.pb);
}

Moments stt_points_moments(const ServePair& pair) {
  check_pair(pair);
  detail::require_terminating(pair, 1.0);
  const Moments g = geometric_moments(eta_of(pair));
  return {2.0 * g.mean, 4.0 * g.variance};
}

PointCountDistribution stt_points_distribution(const ServePair& pair, int n_max) {
  check_pair(pair);
  detail::require_terminating(pair, 1.0);
  if (n_max < 2) throw DomainError("n_max", "n_max must be at least 2");
  const double eta = eta_of(pair);
  PointCountDistribution out;
  out.mass.assign(n_max + 1, 0.0);
  double run = 1.0;
  for (int n = 2; n <= n_max; n += 2) {
    out.mass[n] = run * eta;
    run *= 1.0 - eta;
  }
  out.truncation_mass = run;
  out.moments = stt_points_moments(pair);
  return out;
}

TieBreakTerms st_terms(const ServePair& pair, int K) {
  check_pair(pair);
  check_K(K);
  const double pa = pair.pa, qa = 1.0 - pair.pa, pb = pair.pb, qb = 1.0 - pair.pb;
  TieBreakTerms t;
  for (int h = 0; h <= K - 2; ++h) {
    const int n = K + h - 1;
    const int sa = serves_by_first_server(n);
    const int sb = n - sa;
    const bool a_serves_last = first_server_on_point(K + h);
    t.a_wins.push_back(binomial_convolution_mass(sa, pa, sb, qb, K - 1) * (a_serves_last ? pa : qb));
    t.b_wins.push_back(binomial_convolution_mass(sa, pa, sb, qb, h) * (a_serves_last ? qa : pb));
  }
  t.tie = binomial_convolution_mass(K - 1, pa, K - 1, qb, K - 1);
  return t;
}

double st_win_prob(const ServePair& pair, int K) {
  const TieBreakTerms t = st_terms(pair, K);
  double s = 0.0;
  for (double a : t.a_wins) s += a;
  if (t.tie > 0.0) {
    detail::require_terminating(pair, t.tie);
    const double w = first_server_on_point(2 * K - 1) ? stt_win_prob(pair)
                                                      : 1.0 - stt_win_prob({pair.pb, pair.pa});
    s += t.tie * w;
  }
  return s;
}

Moments st_points_moments(const ServePair& pair, int K) {
  const TieBreakTerms t = st_terms(pair, K);
  double m1 = 0.0, m2 = 0.0;
  for (int h = 0; h <= K - 2; ++h) {
    const double w = t.a_wins[h] + t.b_wins[h];
    const double n = K + h;
    m1 += w * n;
    m2 += w * n * n;
  }
  if (t.tie > 0.0) {
    detail::require_terminating(pair, t.tie);
    const Moments stt = stt_points_moments(pair);
    const double mean = 2.0 * (K - 1) + stt.mean;
    m1 += t.tie * mean;
    m2 += t.tie * (stt.variance + mean * mean);
  }
  return {m1, m2 - m1 * m1};
}

JointPointPmf st_joint_pmf(const ServePair& pair, int K, int n_max) {
  const TieBreakTerms t = st_terms(pair, K);
  JointPointPmf j;
  j.a_wins.assign(n_max + 1, 0.0);
  j.b_wins.assign(n_max + 1, 0.0);
  for (int h = 0; h <= K - 2; ++h) {
    if (K + h > n_max) {
      j.truncation_mass += t.a_wins[h] + t.b_wins[h];
      continue;
    }
    j.a_wins[K + h] = t.a_wins[h];
    j.b_wins[K + h] = t.b_wins[h];
  }
  if (t.tie > 0.0) {
    detail::require_terminating(pair, t.tie);
    const double eta = eta_of(pair);
    const double a_pair = pair.pa * (1.0 - pair.pb);
    const double b_pair = (1.0 - pair.pa) * pair.pb;
    double run = t.tie;
    for (int n = 2 * K; n <= n_max; n += 2) {
      j.a_wins[n] += run * a_pair;
      j.b_wins[n] += run * b_pair;
      run *= 1.0 - eta;
    }
    j.truncation_mass += run;
  }
  return j;
}

PointCountDistribution st_points_distribution(const ServePair& pair, int K, int n_max) {
  if (n_max < 2 * K - 2) throw DomainError("n_max", "n_max must cover the regular tie-breaker scores");
  const JointPointPmf j = st_joint_pmf(pair, K, n_max);
  PointCountDistribution out;
  out.mass.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) out.mass[n] = j.a_wins[n] + j.b_wins[n];
  out.truncation_mass = j.truncation_mass;
  out.moments = st_points_moments(pair, K);
  return out;
}

SetScores set_scores(const ServePair& pair) {
  check_pair(pair);
  const double ga = game_win_prob(pair.pa);
  const double gb = game_win_prob(pair.pb);
  SetScores s;
  for (int h = 0; h <= 4; ++h) {
    const int n = 5 + h;
    const int ta = games_served_by_first_server(n);
    const int tb = n - ta;
    const bool a_serves_last = first_server_on_game(6 + h);
    s.a_wins[h] = binomial_convolution_mass(ta, ga, tb, 1.0 - gb, 5) * (a_serves_last ? ga : 1.0 - gb);
    s.b_wins[h] = binomial_convolution_mass(ta, 1.0 - ga, tb, gb, 5) * (a_serves_last ? 1.0 - ga : gb);
  }
  // From 5-5, A serves game 11 and B serves game 12.
  const double s55 = binomial_convolution_mass(5, ga, 5, 1.0 - gb, 5);
  s.a_wins[5] = s55 * ga * (1.0 - gb);
  s.b_wins[5] = s55 * (1.0 - ga) * gb;
  s.tie = s55 * (ga * gb + (1.0 - ga) * (1.0 - gb));
  return s;
}

double set_win_prob(const ServePair& pair, int K) {
  check_K(K);
  const SetScores s = set_scores(pair);
  double w = 0.0;
  for (double a : s.a_wins) w += a;
  if (s.tie > 0.0) w += s.tie * st_win_prob(pair, K);
  return w;
}

Breakdown set_breakdown(const ServePair& pair, int K) {
  check_K(K);
  const SetScores s = set_scores(pair);
  const Moments ga = game_points_moments(pair.pa);
  const Moments gb = game_points_moments(pair.pb);
  auto games_moments = [&](int g) {
    const int ta = games_served_by_first_server(g);
    const int tb = g - ta;
    return Moments{ta * ga.mean + tb * gb.mean, ta * ga.variance + tb * gb.variance};
  };

  Breakdown b;
  for (int h = 0; h <= 5; ++h) {
    const int games = h <= 4 ? 6 + h : 12;
    const Moments m = games_moments(games);
    char label[8];
    std::snprintf(label, sizeof label, "%d-%d", h <= 4 ? 6 : 7, h);
    b.rows.push_back({label, s.a_wins[h], s.b_wins[h], m.mean, m.variance});
  }
  ScoreRow tie{"7-6", 0.0, 0.0, 0.0, 0.0};
  const Moments twelve = games_moments(12);
  if (s.tie > 0.0) {
    const double theta_st = st_win_prob(pair, K);
    const Moments st = st_points_moments(pair, K);
    tie = {"7-6", s.tie * theta_st, s.tie * (1.0 - theta_st), twelve.mean + st.mean, twelve.variance + st.variance};
  } else {
    tie.mean = twelve.mean;
    tie.variance = twelve.variance;
  }
  b.rows.push_back(tie);

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

Moments set_points_moments(const ServePair& pair, int K) {
  const Breakdown b = set_breakdown(pair, K);
  return {b.overall.mean, b.overall.variance};
}

JointPointPmf set_joint_pmf(const ServePair& pair, int K, int n_max) {
  check_pair(pair);
  check_K(K);
  if (n_max < 24) throw DomainError("n_max", "n_max must be at least 24");
  const int game_cap = std::min(n_max, 800);
  GameJointPmf ga = game_joint_pmf(pair.pa, game_cap);
  GameJointPmf gb = game_joint_pmf(pair.pb, game_cap);
  for (auto* v : {&ga.win, &ga.loss, &gb.win, &gb.loss}) trim(*v, 1e-300);

  JointPointPmf out;
  out.a_wins.assign(n_max + 1, 0.0);
  out.b_wins.assign(n_max + 1, 0.0);

  std::map<std::pair<int, int>, std::vector<double>> states;
  states[{0, 0}] = std::vector<double>(n_max + 1, 0.0);
  states[{0, 0}][0] = 1.0;
  for (int g = 1; g <= 12; ++g) {
    const bool a_serves = first_server_on_game(g);
    const std::vector<double>& a_takes = a_serves ? ga.win : gb.loss;
    const std::vector<double>& b_takes = a_serves ? ga.loss : gb.win;
    std::map<std::pair<int, int>, std::vector<double>> next;
    for (const auto& [score, v] : states) {
      for (int a_won = 1; a_won >= 0; --a_won) {
        const int na = score.first + a_won;
        const int nb = score.second + 1 - a_won;
        const bool a_done = (na >= 6 && na - nb >= 2) || na == 7;
        const bool b_done = (nb >= 6 && nb - na >= 2) || nb == 7;
        std::vector<double>* dst;
        if (a_done) {
          dst = &out.a_wins;
        } else if (b_done) {
          dst = &out.b_wins;
        } else {
          auto& slot = next[{na, nb}];
          if (slot.empty()) slot.assign(n_max + 1, 0.0);
          dst = &slot;
        }
        detail::convolve_into(*dst, v, a_won ? a_takes : b_takes);
      }
    }
    states = std::move(next);
  }

  auto it = states.find({6, 6});
  if (it != states.end()) {
    double reach = 0.0;
    for (double m : it->second) reach += m;
    if (reach > 0.0) {
      JointPointPmf st = st_joint_pmf(pair, K, n_max);
      trim(st.a_wins, 1e-300);
      trim(st.b_wins, 1e-300);
      detail::convolve_into(out.a_wins, it->second, st.a_wins);
      detail::convolve_into(out.b_wins, it->second, st.b_wins);
    }
  }
  double total = 0.0;
  for (int n = 0; n <= n_max; ++n) total += out.a_wins[n] + out.b_wins[n];
  out.truncation_mass = std::max(0.0, 1.0 - total);
  return out;
}

PointCountDistribution set_points_distribution(const ServePair& pair, int K, int n_max) {
  const JointPointPmf j = set_joint_pmf(pair, K, n_max);
  PointCountDistribution out;
  out.mass.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) out.mass[n] = j.a_wins[n] + j.b_wins[n];
  out.truncation_mass = j.truncation_mass;
  out.moments = set_points_moments(pair, K);
  return out;
}

}  // namespace tennis
