#include "tennis/bestof.hpp"

#include "tennis/set.hpp"

namespace tennis {

namespace {
void check_L(int L) {
  if (L < 1) throw DomainError("l", "l must be at least 1");
}
}  // namespace

double bofk_win_prob(double p, int L) {
  check_probability(p, "p");
  check_L(L);
  const double q = 1.0 - p;
  double s = 0.0;
  for (int j = 0; j <= L; ++j) s += binomial_coefficient(L + j, L) * std::pow(q, j);
  return s * std::pow(p, L + 1);
}

PointCountDistribution bofk_points_distribution(double p, int L) {
  check_probability(p, "p");
  check_L(L);
  const double q = 1.0 - p;
  PointCountDistribution out;
  out.mass.assign(2 * L + 2, 0.0);
  for (int n = L + 1; n <= 2 * L + 1; ++n) {
    out.mass[n] = binomial_coefficient(n - 1, L) *
                  (std::pow(p, L + 1) * std::pow(q, n - 1 - L) + std::pow(q, L + 1) * std::pow(p, n - 1 - L));
  }
  // Finite support, so the moments are exact sums.
  double m1 = 0.0, m2 = 0.0;
  for (int n = L + 1; n <= 2 * L + 1; ++n) {
    m1 += n * out.mass[n];
    m2 += static_cast<double>(n) * n * out.mass[n];
  }
  out.moments = {m1, m2 - m1 * m1};
  return out;
}

TieBreak parse_tiebreak(const std::string& name) {
  if (name == "sg" || name == "SG") return TieBreak::SG;
  if (name == "sttg" || name == "STTG") return TieBreak::STTG;
  if (name == "sttp" || name == "STTP") return TieBreak::STTP;
  throw DomainError("tiebreak", "tiebreak must be one of sg, sttg, sttp");
}

std::string tiebreak_name(TieBreak t) {
  switch (t) {
    case TieBreak::SG: return "sg";
    case TieBreak::STTG: return "sttg";
    case TieBreak::STTP: return "sttp";
  }
  return "?";
}

GameScoreJpmf bog_game_jpmf(const ServePair& pair, int L) {
  check_pair(pair);
  check_L(L);
  const double ga = game_win_prob(pair.pa);
  const double gb = game_win_prob(pair.pb);
  GameScoreJpmf j;
  for (int k = 0; k < L; ++k) {
    const int n = L + k;
    const int ta = games_served_by_first_server(n);
    const int tb = n - ta;
    const bool a_serves_last = first_server_on_game(n + 1);
    j.a_wins.push_back(binomial_convolution_mass(ta, ga, tb, 1.0 - gb, L) * (a_serves_last ? ga : 1.0 - gb));
    j.b_wins.push_back(binomial_convolution_mass(ta, 1.0 - ga, tb, gb, L) * (a_serves_last ? 1.0 - ga : gb));
  }
  j.tie = binomial_convolution_mass(L, ga, L, 1.0 - gb, L);
  return j;
}

namespace {

struct TieBranch {
  double win_a;
  Moments points;
};

TieBranch tie_branch(const ServePair& pair, TieBreak t, TieCount count) {
  const double ga = game_win_prob(pair.pa);
  const double gb = game_win_prob(pair.pb);
  const Moments ma = game_points_moments(pair.pa);
  const Moments mb = game_points_moments(pair.pb);
  switch (t) {
    case TieBreak::SG: {
      // Equal-weight mixture of an A-served and a B-served game.
      const double d = ma.mean - mb.mean;
      return {0.5 * (ga + 1.0 - gb),
              {0.5 * (ma.mean + mb.mean), 0.5 * (ma.variance + mb.variance) + 0.25 * d * d}};
    }
    case TieBreak::STTG: {
      const ServePair games{ga, gb};
      const double win = stt_win_prob(games);
      const Moments rounds = geometric_moments(ga * (1.0 - gb) + (1.0 - ga) * gb);
      if (count == TieCount::GamesCount) return {win, {2.0 * rounds.mean, 4.0 * rounds.variance}};
      // Random sum over pairs of games, each pair costing N_G(pA) + N_G(pB).
      const double pair_mean = ma.mean + mb.mean;
      const double pair_var = ma.variance + mb.variance;
      return {win, {rounds.mean * pair_mean, rounds.mean * pair_var + rounds.variance * pair_mean * pair_mean}};
    }
    case TieBreak::STTP:
      return {stt_win_prob(pair), stt_points_moments(pair)};
  }
  return {};
}

void require_tie_terminates(const ServePair& pair, TieBreak t) {
  if (t == TieBreak::STTG) {
    detail::require_terminating({game_win_prob(pair.pa), game_win_prob(pair.pb)}, 1.0);
  } else if (t == TieBreak::STTP) {
    detail::require_terminating(pair, 1.0);
  }
}

}  // namespace

double bog_match_win_prob(const ServePair& pair, const BestOfGamesSpec& spec) {
  const GameScoreJpmf j = bog_game_jpmf(pair, spec.L);
  double w = 0.0;
  for (double a : j.a_wins) w += a;
  if (j.tie > 0.0) {
    require_tie_terminates(pair, spec.tiebreak);
    w += j.tie * tie_branch(pair, spec.tiebreak, TieCount::Compound).win_a;
  }
  return w;
}

Moments bog_match_points_moments(const ServePair& pair, const BestOfGamesSpec& spec, TieCount count) {
  const int L = spec.L;
  const GameScoreJpmf j = bog_game_jpmf(pair, L);
  const Moments ma = game_points_moments(pair.pa);
  const Moments mb = game_points_moments(pair.pb);
  auto games_moments = [&](int g) {
    const int ta = games_served_by_first_server(g);
    const int tb = g - ta;
    return Moments{ta * ma.mean + tb * mb.mean, ta * ma.variance + tb * mb.variance};
  };
  double m1 = 0.0, m2 = 0.0, within = 0.0;
  auto add = [&](double w, const Moments& m) {
    m1 += w * m.mean;
    m2 += w * m.mean * m.mean;
    within += w * m.variance;
  };
  for (int k = 0; k < L; ++k) {
    const Moments m = games_moments(L + 1 + k);
    add(j.a_wins[k] + j.b_wins[k], m);
  }
  if (j.tie > 0.0) {
    require_tie_terminates(pair, spec.tiebreak);
    const Moments head = games_moments(2 * L);
    const Moments tb = tie_branch(pair, spec.tiebreak, count).points;
    add(j.tie, {head.mean + tb.mean, head.variance + tb.variance});
  }
  return {m1, within + m2 - m1 * m1};
}

}  // namespace tennis
