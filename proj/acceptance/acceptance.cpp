// Acceptance run: one PASS/FAIL line per criterion, with the failing cells
// listed underneath. Exits nonzero when any criterion fails.
#include <array>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "tennis/efficiency.hpp"
#include "tennis/montecarlo.hpp"
#include "tennis/system.hpp"

using namespace tennis;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)), t0_(Clock::now()) {}

  // Records a comparison; returns whether it held.
  bool near(const std::string& what, double got, double want, double tol) {
    ++checks_;
    const bool ok = std::abs(got - want) <= tol;
    if (!ok) fail(fmt("%s: got %.6f, want %.6f +/- %g", what.c_str(), got, want, tol));
    return ok;
  }
  bool expect(const std::string& what, bool ok) {
    ++checks_;
    if (!ok) fail(what);
    return ok;
  }
  void fail(const std::string& line) {
    ok_ = false;
    lines_.push_back("  fail: " + line);
  }
  void note(const std::string& line) { lines_.push_back("  note: " + line); }

  bool finish() {
    std::printf("%s [%d] %s (%d checks, %.1f s)\n", ok_ ? "PASS" : "FAIL", id_, title_.c_str(), checks_,
                seconds_since(t0_));
    for (const auto& l : lines_) std::printf("%s\n", l.c_str());
    std::fflush(stdout);
    return ok_;
  }

  double elapsed() const { return seconds_since(t0_); }

 private:
  int id_;
  std::string title_;
  Clock::time_point t0_;
  bool ok_ = true;
  int checks_ = 0;
  std::vector<std::string> lines_;
};

json cli_json(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) throw std::runtime_error("cli failed: " + err.str());
  return json::parse(out.str());
}

SimSummary sim(const SystemSpec& s, ServePair x, std::uint64_t reps, std::uint64_t seed) {
  SimConfig c;
  c.system = s;
  c.params = x;
  c.replications = reps;
  c.seed = seed;
  return simulate(c);
}

SystemSpec make(SystemKind k) {
  SystemSpec s;
  s.kind = k;
  return s;
}

// ---------------------------------------------------------------------------

bool game_breakdown_check() {
  Criterion c(1, "game breakdown at p=0.6");
  const json j = cli_json({"breakdown", "game", "--p", "0.6", "--precision", "10"});
  const double ref[5][5] = {{0.129, 0.025, 0.155, 4.000, 0.000},
                            {0.207, 0.061, 0.268, 5.000, 0.000},
                            {0.207, 0.092, 0.299, 6.000, 0.000},
                            {0.191, 0.085, 0.276, 9.846, 7.100},
                            {0.735, 0.264, 1.000, 6.484, 6.708}};
  for (int i = 0; i < 5; ++i) {
    const json& r = i < 4 ? j["rows"][i] : j["overall"];
    const std::string label = r["score"].get<std::string>();
    c.near(label + " win_a", r["win_a"], ref[i][0], 0.001);
    c.near(label + " win_b", r["win_b"], ref[i][1], 0.001);
    c.near(label + " total", r["total"], ref[i][2], 0.001);
    c.near(label + " cond_mean", r["cond_mean"], ref[i][3], 0.005);
    c.near(label + " cond_variance", r["cond_variance"], ref[i][4], 0.005);
  }
  c.expect(fmt("runtime %.3f s under 1 s", c.elapsed()), c.elapsed() < 1.0);
  return c.finish();
}

bool game_moments_check() {
  Criterion c(2, "game point-count moments at p=0.5");
  const Moments m = game_points_moments(0.5);
  c.near("closed-form mean", m.mean, 6.75, 1e-9);
  c.near("closed-form variance", m.variance, 7.6875, 1e-9);
  const Moments t = game_points_pmf(0.5, 400).truncated_moments();
  c.near("truncated PMF mean", t.mean, 6.75, 1e-9);
  c.near("truncated PMF variance", t.variance, 7.6875, 1e-9);
  const SimSummary s = sim(make(SystemKind::Game), {0.5, 0.5}, 10000000, 20240501);
  c.near("simulated mean (3 SE)", s.points.mean, 6.75, 3 * s.points.mean_se);
  c.near("simulated variance (3 SE)", s.points.variance, 7.6875, 3 * s.points.variance_se);
  c.note(fmt("simulation: mean %.5f (se %.5f), variance %.4f (se %.4f), 1e7 reps", s.points.mean, s.points.mean_se,
             s.points.variance, s.points.variance_se));
  return c.finish();
}

bool set_breakdown_check() {
  Criterion c(3, "set breakdown at (0.6, 0.55, K=7)");
  const ServePair x{0.6, 0.55};
  const json j = cli_json({"breakdown", "set", "--pa", "0.6", "--pb", "0.55", "--k", "7", "--precision", "10"});
  const double ref[7][4] = {{0.021, 0.004, 0.026, 42.419}, {0.095, 0.012, 0.107, 49.127},
                            {0.095, 0.050, 0.145, 56.559}, {0.204, 0.044, 0.248, 63.267},
                            {0.105, 0.122, 0.227, 70.698}, {0.069, 0.041, 0.109, 84.838},
                            {0.080, 0.058, 0.138, 93.551}};
  c.near("overall win_a", j["overall"]["win_a"], 0.669, 0.001);
  c.near("overall mean", j["overall"]["cond_mean"], 64.352, 0.01);
  c.near("overall variance", j["overall"]["cond_variance"], 267.271, 0.5);

  // Each row's conditional variance must first agree with simulation.
  SystemSpec spec = make(SystemKind::Set);
  const SimSummary s = sim(spec, x, 10000000, 20240502);
  bool validated = true;
  for (int h = 0; h < 7; ++h) {
    const json& r = j["rows"][h];
    const std::string label = r["score"].get<std::string>();
    c.near(label + " win_a", r["win_a"], ref[h][0], 0.001);
    c.near(label + " win_b", r["win_b"], ref[h][1], 0.001);
    c.near(label + " total", r["total"], ref[h][2], 0.001);
    const SampleStats& row = s.rows[h].points;
    const double z = (r["cond_variance"].get<double>() - row.variance) / row.variance_se;
    validated &= c.near(label + " cond_variance vs simulation (4 SE)", r["cond_variance"], row.variance,
                        4 * row.variance_se);
    c.note(fmt("%s cond_variance %.3f, simulated %.3f (se %.3f, z %+.2f)", label.c_str(),
               r["cond_variance"].get<double>(), row.variance, row.variance_se, z));
  }
  if (validated) {
    for (int h = 0; h < 7; ++h)
      c.near(j["rows"][h]["score"].get<std::string>() + " cond_variance", j["rows"][h]["cond_variance"], ref[h][3],
             0.005);
  } else {
    c.fail("conditional variances not validated by simulation, so not asserted against reference");
  }
  return c.finish();
}

bool match_breakdown_check() {
  Criterion c(4, "match breakdown at (0.6, 0.55, 7, 10, Q=2)");
  const json j = cli_json(
      {"breakdown", "match", "--pa", "0.6", "--pb", "0.55", "--k0", "7", "--k1", "10", "--q", "2", "--precision", "10"});
  const double ref[3][5] = {{0.300, 0.036, 0.336, 193.056, 801.811},
                            {0.297, 0.072, 0.370, 257.408, 1069.082},
                            {0.196, 0.097, 0.293, 322.488, 1378.232}};
  for (int h = 0; h < 3; ++h) {
    const json& r = j["rows"][h];
    const std::string label = r["score"].get<std::string>();
    c.near(label + " win_a", r["win_a"], ref[h][0], 0.001);
    c.near(label + " win_b", r["win_b"], ref[h][1], 0.001);
    c.near(label + " total", r["total"], ref[h][2], 0.001);
    c.near(label + " cond_mean", r["cond_mean"], ref[h][3], 0.1);
    c.near(label + " cond_variance", r["cond_variance"], ref[h][4], 0.1);
  }
  c.near("overall win_a", j["overall"]["win_a"], 0.795, 0.001);
  c.near("overall mean", j["overall"]["cond_mean"], 254.894, 0.05);
  c.near("overall variance", j["overall"]["cond_variance"], 3700.152, 5);
  c.note("reference A-wins column 0.300 + 0.297 + 0.196 = 0.793 disagrees with its own total 0.795; "
         "the computed 3-2 cell is 0.19723");
  return c.finish();
}

// ---------------------------------------------------------------------------

struct Table9Block {
  ServePair x;
  std::array<double, 3> tennis;                // PrA, mean, std
  std::array<std::array<double, 3>, 4> sttg;  // per L in {5,15,22,29}
};

const std::vector<Table9Block>& table9() {
  static const std::vector<Table9Block> t{
      {{0.5, 0.5},
       {0.5000, 271.8082, 61.7407},
       {{{0.5, 57.0674, 11.0940}, {0.5, 172.6968, 30.5886}, {0.5, 257.6948, 42.9892}, {0.5, 344.1572, 54.5397}}}},
      {{0.5, 0.6},
       {0.0488, 222.9703, 53.9818},
       {{{0.1798, 55.4457, 10.9391},
         {0.0762, 163.7432, 26.1681},
         {0.0443, 240.7006, 33.5899},
         {0.0264, 317.3717, 39.4048}}}},
      {{0.6, 0.5},
       {0.9512, 220.5927, 53.7999},
       {{{0.8202, 54.7344, 10.8440},
         {0.9238, 162.6257, 26.0880},
         {0.9557, 239.4745, 33.4941},
         {0.9736, 316.0717, 39.3289}}}},
      {{0.8, 0.6},
       {0.9980, 177.4933, 36.0239},
       {{{0.9621, 48.5557, 8.3992},
         {0.9929, 143.7915, 18.3489},
         {0.9979, 210.1740, 22.2927},
         {0.9994, 275.8662, 25.4925}}}},
      {{0.9, 0.8},
       {0.8978, 253.8929, 57.2131},
       {{{0.9391, 111.1076, 83.9818},
         {0.9412, 158.5151, 73.2925},
         {0.9435, 201.8926, 66.8277},
         {0.9462, 250.9717, 64.5961}}}},
      {{0.9, 0.9},
       {0.5000, 287.4960, 59.4101},
       {{{0.5, 713.1771, 690.4855},
         {0.5, 740.7696, 687.9704},
         {0.5, 761.9790, 684.8080},
         {0.5, 784.6745, 680.6947}}}},
  };
  return t;
}

constexpr std::array<int, 4> kLs{5, 15, 22, 29};

// Games-count tie branch stacked on the moments of L+2 games instead of the
// 2L games actually played before a tie. Diagnostic only.
Moments sttg_shifted_head(const ServePair& x, int L) {
  const GameScoreJpmf j = bog_game_jpmf(x, L);
  const Moments ma = game_points_moments(x.pa), mb = game_points_moments(x.pb);
  auto games = [&](int g) {
    const int ta = games_served_by_first_server(g);
    return Moments{ta * ma.mean + (g - ta) * mb.mean, ta * ma.variance + (g - ta) * mb.variance};
  };
  double m1 = 0, m2 = 0, within = 0;
  auto add = [&](double w, Moments m) {
    m1 += w * m.mean;
    m2 += w * m.mean * m.mean;
    within += w * m.variance;
  };
  for (int k = 0; k < L; ++k) add(j.a_wins[k] + j.b_wins[k], games(L + 1 + k));
  const double ga = game_win_prob(x.pa), gb = game_win_prob(x.pb);
  const Moments rounds = geometric_moments(ga * (1 - gb) + (1 - ga) * gb);
  const Moments head = games(L + 2);
  add(j.tie, {head.mean + 2 * rounds.mean, head.variance + 4 * rounds.variance});
  return {m1, within + m2 - m1 * m1};
}

bool table9_check() {
  Criterion c(5, "best-of-five vs best-of-games (STTG) comparison grid");
  const MatchSpec m{7, 10, 2};
  for (const Table9Block& b : table9()) {
    const std::string at = fmt("(%.1f,%.1f)", b.x.pa, b.x.pb);
    const Moments mm = match_points_moments(b.x, m);
    c.near(at + " match PrA", match_win_prob(b.x, m), b.tennis[0], 0.0005);
    c.near(at + " match mean", mm.mean, b.tennis[1], 0.01);
    c.near(at + " match std", mm.stddev(), b.tennis[2], 0.01);
  }
  // Win probabilities do not depend on the tie-branch point count.
  for (const Table9Block& b : table9())
    for (int i = 0; i < 4; ++i)
      c.near(fmt("(%.1f,%.1f) L=%d STTG PrA", b.x.pa, b.x.pb, kLs[i]),
             bog_match_win_prob(b.x, {kLs[i], TieBreak::STTG}), b.sttg[i][0], 0.0005);

  struct Interp {
    const char* name;
    std::function<Moments(const ServePair&, int)> f;
  };
  const std::vector<Interp> interps{
      {"compound point count",
       [](const ServePair& x, int L) { return bog_match_points_moments(x, {L, TieBreak::STTG}); }},
      {"games count",
       [](const ServePair& x, int L) {
         return bog_match_points_moments(x, {L, TieBreak::STTG}, TieCount::GamesCount);
       }},
  };
  const Interp* chosen = nullptr;
  for (const Interp& in : interps) {
    int bad = 0;
    double worst = 0;
    for (const Table9Block& b : table9())
      for (int i = 0; i < 4; ++i) {
        const Moments mo = in.f(b.x, kLs[i]);
        const double e = std::max(std::abs(mo.mean - b.sttg[i][1]), std::abs(mo.stddev() - b.sttg[i][2]));
        worst = std::max(worst, e);
        bad += e > 0.01;
      }
    c.note(fmt("STTG interpretation '%s': %d of 24 mean/std cell pairs outside 0.01 (worst %.4f)", in.name, bad,
               worst));
    if (bad == 0 && !chosen) chosen = &in;
  }
  if (chosen) {
    c.note(fmt("STTG mean/std cells reproduced under '%s'", chosen->name));
  } else {
    c.fail("no single tie-branch interpretation reproduces the STTG mean/std cells");
    for (const Interp& in : interps)
      for (const Table9Block& b : table9())
        for (int i = 0; i < 4; ++i) {
          const Moments mo = in.f(b.x, kLs[i]);
          if (std::abs(mo.mean - b.sttg[i][1]) > 0.01 || std::abs(mo.stddev() - b.sttg[i][2]) > 0.01)
            c.note(fmt("  %s (%.1f,%.1f) L=%d: mean %.4f std %.4f vs %.4f %.4f", in.name, b.x.pa, b.x.pb, kLs[i],
                       mo.mean, mo.stddev(), b.sttg[i][1], b.sttg[i][2]));
        }
  }
  double worst = 0;
  for (const Table9Block& b : table9())
    for (int i = 0; i < 4; ++i) {
      const Moments mo = sttg_shifted_head(b.x, kLs[i]);
      worst = std::max({worst, std::abs(mo.mean - b.sttg[i][1]), std::abs(mo.stddev() - b.sttg[i][2])});
    }
  c.note(fmt("diagnostic only: a games-count tie stacked on L+2 head games (instead of 2L) matches all 24 "
             "STTG mean/std pairs to %.1e; it is not a valid model of the rules",
             worst));
  c.note("diagnostic only: the match PrA column reproduces if the K1=10 decider uses theta_STT(pB,pA) in "
         "place of 1 - theta_STT(pB,pA)");
  return c.finish();
}

// ---------------------------------------------------------------------------

bool table5_check() {
  Criterion c(6, "one-parameter efficiencies");
  SystemSpec gt = make(SystemKind::GT), game = make(SystemKind::Game);
  auto bofk = [](int L) {
    SystemSpec s = make(SystemKind::BofK);
    s.L = L;
    return s;
  };
  const std::vector<std::pair<std::string, SystemSpec>> systems{
      {"GameGT", gt}, {"Game", game}, {"Bof7", bofk(3)}, {"Bof9", bofk(4)}, {"Bof11", bofk(5)}};
  const std::vector<BetaPrior> priors{{0.5, 0.5}, {2, 1}, {3, 1}};
  const double ref[5][3] = {{0.7935, 0.6931, 0.7500},
                            {0.8378, 0.7537, 0.8046},
                            {0.8188, 0.7265, 0.7812},
                            {0.8382, 0.7539, 0.8051},
                            {0.8524, 0.7744, 0.8227}};
  for (std::size_t i = 0; i < systems.size(); ++i)
    for (std::size_t k = 0; k < priors.size(); ++k)
      c.near(fmt("%s Be(%g,%g)", systems[i].first.c_str(), priors[k].alpha, priors[k].beta),
             system_efficiency(systems[i].second, priors[k]).value, ref[i][k], 0.001);
  double spread = 0;
  for (const auto& [name, s] : systems) {
    const double a = system_efficiency(s, {2, 1}).value;
    spread = std::max({spread, std::abs(system_efficiency(s, {1, 2}).value - a),
                       std::abs(system_efficiency(s, {1, 1}).value - a)});
  }
  c.expect(fmt("Be(1,2), Be(1,1), Be(2,1) agree (max spread %.1e)", spread), spread < 1e-9);
  c.note("Be(1,2) = Be(2,1) is exact: |2 theta(p) - 1| is symmetric about 1/2 by theta(1-p) = 1 - theta(p), and "
         "Be(1,1) is the average of the two reflected priors");
  return c.finish();
}

bool table8_check() {
  Criterion c(7, "two-parameter efficiencies under Be(2,1) x Be(2,1)");
  const BetaPrior be{2, 1};
  SystemSpec stt = make(SystemKind::STT);
  SystemSpec st7 = make(SystemKind::ST), st8 = make(SystemKind::ST), set7 = make(SystemKind::Set);
  st8.K = 8;
  SystemSpec match = make(SystemKind::Match);
  match.match = {7, 10, 2};
  SystemSpec bog = make(SystemKind::BoG);
  bog.L = 22;
  bog.tiebreak = TieBreak::STTG;
  const std::vector<std::tuple<std::string, SystemSpec, double>> cells{
      {"STT", stt, 0.6134},     {"ST(K=7)", st7, 0.6666},           {"ST(K=8)", st8, 0.5509},
      {"Set(K=7)", set7, 0.7741}, {"Match(7,10,2)", match, 0.8338}, {"BofG STTG L=22", bog, 0.8884}};
  for (const auto& [name, s, want] : cells) {
    const EfficiencyReport r = system_efficiency(s, be, be);
    c.near(name, r.value, want, 0.002);
    c.note(fmt("%s = %.5f (quadrature error %.1e)", name.c_str(), r.value, r.error_estimate));
  }
  c.expect(fmt("runtime %.1f s under 600 s", c.elapsed()), c.elapsed() < 600);
  c.note("ST(K=8) 0.5509 reproduces (0.5512) only with theta_STT(pB,pA) in place of 1 - theta_STT(pB,pA) "
         "when B opens the STT; an independent point-level DP confirms the complemented form");
  c.note("Match(7,10,2) 0.8338 reproduces (0.8342) only as best-of-3 with the same slip in the K1=10 decider");
  c.note("STT 0.6134 has no reconstruction; the STT surface gives 0.5607");
  return c.finish();
}

// ---------------------------------------------------------------------------

bool identity_check() {
  Criterion c(8, "identity suite over randomized grids");
  std::mt19937_64 rng(8080);
  std::uniform_real_distribution<double> unit(0.0, 1.0), inner(0.01, 0.99);
  std::uniform_int_distribution<int> target(2, 12), q(1, 3);
  double worst_reflect = 0, worst_fair = 0, worst_rev = 0, worst_gap = 0, worst_tail = 0, worst_first = 0;
  for (int i = 0; i < 2000; ++i) {
    const double p = unit(rng);
    worst_reflect = std::max({worst_reflect, std::abs(gt_win_prob(1 - p) - 1 + gt_win_prob(p)),
                              std::abs(game_win_prob(1 - p) - 1 + game_win_prob(p))});
    worst_gap = std::max(worst_gap, std::abs(game_win_prob(p) - bofk_win_prob(p, 3) -
                                             20 * std::pow(p * (1 - p), 3) * (gt_win_prob(p) - p)));
  }
  for (int i = 0; i < 300; ++i) {
    const double p = inner(rng);
    const int K = target(rng);
    const MatchSpec m{target(rng), target(rng), q(rng)};
    worst_fair = std::max({worst_fair, std::abs(gt_win_prob(0.5) - 0.5), std::abs(stt_win_prob({p, p}) - 0.5),
                           std::abs(st_win_prob({p, p}, K) - 0.5), std::abs(set_win_prob({p, p}, K) - 0.5),
                           std::abs(match_win_prob({p, p}, m) - 0.5)});
    const ServePair x{inner(rng), inner(rng)}, r{1 - x.pb, 1 - x.pa};
    worst_rev = std::max({worst_rev, std::abs(stt_win_prob(x) - stt_win_prob(r)),
                          std::abs(st_win_prob(x, K) - st_win_prob(r, K)),
                          std::abs(set_win_prob(x, K) - set_win_prob(r, K)),
                          std::abs(match_win_prob(x, m) - match_win_prob(r, m))});
    const ServePair y{unit(rng), unit(rng)};
    const TieBreakTerms t = st_terms(y, K);
    double s = 0;
    for (double a : t.a_wins) s += a;
    worst_tail = std::max(worst_tail, std::abs(s - binomial_convolution_tail(K - 1, y.pa, K - 1, 1 - y.pb, K)));
    worst_first = std::max(worst_first, std::abs(1 - set_win_prob({x.pb, x.pa}, K) - set_win_prob(x, K)));
  }
  c.expect(fmt("S-shape reflections (max %.1e)", worst_reflect), worst_reflect < 1e-12);
  c.expect(fmt("fairness at pA=pB for GT, STT, ST, Set, Match (max %.1e)", worst_fair), worst_fair < 1e-12);
  c.expect(fmt("reversal symmetry theta(pA,pB) = theta(qB,qA) (max %.1e)", worst_rev), worst_rev < 1e-12);
  c.expect(fmt("best-of-7 gap identity (max %.1e)", worst_gap), worst_gap < 1e-12);
  c.expect(fmt("set tie-breaker tail identity (max %.1e)", worst_tail), worst_tail < 1e-12);
  c.expect(fmt("set-level first-server irrelevance (max %.1e)", worst_first), worst_first < 1e-10);
  c.expect(fmt("runtime %.1f s under 30 s", c.elapsed()), c.elapsed() < 30);
  return c.finish();
}

struct Instance {
  SystemSpec spec;
  ServePair x;
};

std::vector<Instance> oracle_instances(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> p(0.3, 0.8);
  std::uniform_int_distribution<int> kind(0, 7), k(2, 12), kset(6, 10), q(1, 2), lpts(1, 12), lgames(3, 25), tb(0, 2);
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    Instance in;
    in.spec.kind = static_cast<SystemKind>(i < 8 ? i : kind(rng));
    in.x = {p(rng), p(rng)};
    switch (in.spec.kind) {
      case SystemKind::ST: in.spec.K = k(rng); break;
      case SystemKind::Set: in.spec.K = kset(rng); break;
      case SystemKind::Match: in.spec.match = {7, std::bernoulli_distribution(0.5)(rng) ? 10 : 7, q(rng)}; break;
      case SystemKind::BofK: in.spec.L = lpts(rng); break;
      case SystemKind::BoG:
        in.spec.L = lgames(rng);
        in.spec.tiebreak = static_cast<TieBreak>(tb(rng));
        break;
      default: break;
    }
    out.push_back(in);
  }
  return out;
}

bool oracle_check() {
  Criterion c(9, "simulation oracle vs closed forms");
  const std::uint64_t reps = 1000000;
  const std::vector<Instance> instances = oracle_instances(30, 9009);
  int failing = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& in = instances[i];
    const std::string name = describe(in.spec) + fmt(" at (%.3f,%.3f)", in.x.pa, in.x.pb);
    const SimSummary s = sim(in.spec, in.x, reps, 1000 + i);
    const double w = system_win_prob(in.spec, in.x);
    const Moments m = system_points_moments(in.spec, in.x);
    const double zw = (s.win_rate_a - w) / s.win_rate_se;
    const double zm = (s.points.mean - m.mean) / s.points.mean_se;
    const double zs = (s.points.stddev - m.stddev()) / s.points.stddev_se;
    bool ok = c.near(name + " win probability (4 SE)", s.win_rate_a, w, 4 * s.win_rate_se);
    ok &= c.near(name + " mean points (4 SE)", s.points.mean, m.mean, 4 * s.points.mean_se);
    ok &= c.near(name + " std points (4 SE)", s.points.stddev, m.stddev(), 4 * s.points.stddev_se);
    ok &= c.expect(name + " capped replications", s.capped_replications == 0);
    failing += !ok;
    c.note(fmt("%s: z(win) %+.2f, z(mean) %+.2f, z(std) %+.2f", name.c_str(), zw, zm, zs));
  }
  const SimSummary a = sim(instances[5].spec, instances[5].x, 200000, 77);
  const SimSummary b = sim(instances[5].spec, instances[5].x, 200000, 77);
  c.expect("repeat run is bit-identical",
           a.wins_a == b.wins_a && a.points.mean == b.points.mean && a.points.variance == b.points.variance);
  c.expect(fmt("runtime %.1f s under 300 s", c.elapsed()), c.elapsed() < 300);
  if (failing)
    c.note(fmt("%d of %zu instances disagree; set, match and best-of-games variances come from a per-score "
               "decomposition that treats game length as independent of the game's winner",
               failing, instances.size()));
  return c.finish();
}

bool termination_check() {
  Criterion c(10, "truncated point-count distributions carry all mass");
  const std::vector<double> grid{0.05, 0.25, 0.5, 0.75, 0.95};
  double worst = 0;
  auto check = [&](const std::string& what, const PointCountDistribution& d) {
    const double e = std::abs(d.total_mass() - 1.0);
    worst = std::max(worst, e);
    if (e > 1e-9) c.fail(fmt("%s: truncated mass %.12f", what.c_str(), d.total_mass()));
  };
  for (double p : grid) check(fmt("N_G p=%.2f", p), game_points_pmf(p, 400));
  for (double pa : grid)
    for (double pb : grid) {
      const ServePair x{pa, pb};
      const std::string at = fmt("(%.2f,%.2f)", pa, pb);
      check("N_STT " + at, stt_points_distribution(x, 1000));
      check("N_ST " + at, st_points_distribution(x, 7, 1000));
      check("N_S " + at, set_points_distribution(x, 7, 2000));
      check("N_M " + at, match_points_distribution(x, {7, 10, 2}, 4000));
    }
  c.expect(fmt("all masses within 1e-9 of 1 (worst %.1e)", worst), worst <= 1e-9);
  return c.finish();
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  std::vector<std::function<bool()>> criteria{game_breakdown_check, game_moments_check, set_breakdown_check,
                                              match_breakdown_check, table9_check,       table5_check,
                                              table8_check,          identity_check,     oracle_check,
                                              termination_check};
  int failed = 0;
  for (auto& f : criteria) {
    try {
      failed += !f();
    } catch (const std::exception& e) {
      std::printf("FAIL (exception: %s)\n", e.what());
      ++failed;
    }
  }
  std::printf("%d of %zu criteria passed (%.1f s)\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
