#include "tennis/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>

namespace tennis {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t a = seed;
  std::uint64_t b = stream ^ 0xD1B54A32D192ED03ULL;
  std::uint64_t state = splitmix64(a) ^ splitmix64(b);
  for (auto& s : s_) s = splitmix64(state);
}

std::uint64_t StreamRng::next() {
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

void check_sim_config(const SimConfig& config) {
  validate(config.system);
  check_probability(config.params.pa, "pa");
  if (!is_one_parameter(config.system.kind)) check_probability(config.params.pb, "pb");
  if (config.replications < 1) throw DomainError("reps", "reps must be at least 1");
  if (config.max_points < 100) throw DomainError("cap", "the per-replication point cap must be at least 100");
}

namespace {

struct Play {
  StreamRng rng;
  std::uint64_t cap;
  std::uint64_t points = 0;
  std::string* trace = nullptr;

  bool exhausted() const { return points >= cap; }
  // One point; returns true if the server wins it.
  bool serve(double p) {
    ++points;
    return rng.bernoulli(p);
  }
};

using Result = std::optional<bool>;  // true: A (or the server) wins; empty: capped

Result gt(Play& pl, double p) {
  int lead = 0;
  while (!pl.exhausted()) {
    lead += pl.serve(p) ? 1 : -1;
    if (lead == 2) return true;
    if (lead == -2) return false;
  }
  return std::nullopt;
}

// Regular game; `row` receives 0..2 for a 4-h finish or 3 when decided from deuce.
Result game(Play& pl, double p, int* row = nullptr) {
  int s = 0, r = 0;
  while (!pl.exhausted()) {
    if (pl.serve(p)) ++s; else ++r;
    if (s == 3 && r == 3) {
      if (row) *row = 3;
      return gt(pl, p);
    }
    if (s == 4) {
      if (row) *row = r;
      return true;
    }
    if (r == 4) {
      if (row) *row = s;
      return false;
    }
  }
  return std::nullopt;
}

// Tie-breaker with serve order ABBAABBAA...; K = 0 plays a pure "two clear" race.
Result tiebreak(Play& pl, const ServePair& pr, int K) {
  int a = 0, b = 0;
  for (int n = 1; !pl.exhausted(); ++n) {
    const bool a_serves = first_server_on_point(n);
    if (pl.trace) pl.trace->push_back(a_serves ? 'A' : 'B');
    const bool a_point = a_serves ? pl.serve(pr.pa) : !pl.serve(pr.pb);
    if (a_point) ++a; else ++b;
    if (std::max(a, b) >= K && std::abs(a - b) >= 2) return a > b;
  }
  return std::nullopt;
}

// A game with A serving if a_serves; result is from A's point of view.
Result game_for_a(Play& pl, const ServePair& pr, bool a_serves) {
  Result r = game(pl, a_serves ? pr.pa : pr.pb);
  if (!r) return r;
  return a_serves ? *r : !*r;
}

struct SetOutcome {
  Result a_won;
  int loser_games = 0;
};

SetOutcome set(Play& pl, const ServePair& pr, int K) {
  int a = 0, b = 0;
  for (int g = 1;; ++g) {
    if (a == 6 && b == 6) {
      Result r = tiebreak(pl, pr, K);
      return {r, 6};
    }
    Result r = game_for_a(pl, pr, first_server_on_game(g));
    if (!r) return {r, 0};
    if (*r) ++a; else ++b;
    if ((a >= 6 && a - b >= 2) || a == 7) return {true, b};
    if ((b >= 6 && b - a >= 2) || b == 7) return {false, a};
  }
}

struct Outcome {
  Result a_won;
  int row = -1;
};

Outcome match(Play& pl, const ServePair& pr, const MatchSpec& m) {
  int a = 0, b = 0;
  for (int s = 1;; ++s) {
    // Every set is opened by A.
    const SetOutcome so = set(pl, pr, s == 2 * m.Q + 1 ? m.K1 : m.K0);
    if (!so.a_won) return {std::nullopt};
    if (*so.a_won) ++a; else ++b;
    if (a == m.Q + 1) return {true, b};
    if (b == m.Q + 1) return {false, a};
  }
}

Result bofk(Play& pl, double p, int L) {
  int s = 0, r = 0;
  while (!pl.exhausted()) {
    if (pl.serve(p)) ++s; else ++r;
    if (s == L + 1) return true;
    if (r == L + 1) return false;
  }
  return std::nullopt;
}

Result bog(Play& pl, const ServePair& pr, int L, TieBreak t) {
  int a = 0, b = 0;
  int g = 1;
  for (; a < L + 1 && b < L + 1 && !(a == L && b == L); ++g) {
    Result r = game_for_a(pl, pr, first_server_on_game(g));
    if (!r) return r;
    if (*r) ++a; else ++b;
  }
  if (a == L + 1) return true;
  if (b == L + 1) return false;
  switch (t) {
    case TieBreak::SG:
      return game_for_a(pl, pr, pl.rng.bernoulli(0.5));
    case TieBreak::STTG: {
      int lead = 0;
      for (;; ++g) {
        Result r = game_for_a(pl, pr, first_server_on_game(g));
        if (!r) return r;
        lead += *r ? 1 : -1;
        if (lead == 2) return true;
        if (lead == -2) return false;
      }
    }
    case TieBreak::STTP:
      return tiebreak(pl, pr, 0);
  }
  return std::nullopt;
}

Outcome play_one(const SimConfig& c, Play& pl) {
  const ServePair& pr = c.params;
  const SystemSpec& s = c.system;
  switch (s.kind) {
    case SystemKind::GT: return {gt(pl, pr.pa)};
    case SystemKind::Game: {
      int row = -1;
      Result r = game(pl, pr.pa, &row);
      return {r, row};
    }
    case SystemKind::STT: return {tiebreak(pl, pr, 0)};
    case SystemKind::ST: return {tiebreak(pl, pr, s.K)};
    case SystemKind::Set: {
      SetOutcome so = set(pl, pr, s.K);
      return {so.a_won, so.loser_games};
    }
    case SystemKind::Match: return match(pl, pr, s.match);
    case SystemKind::BofK: return {bofk(pl, pr.pa, s.L)};
    case SystemKind::BoG: return {bog(pl, pr, s.L, s.tiebreak)};
  }
  return {};
}

std::vector<std::string> row_labels(const SystemSpec& s) {
  switch (s.kind) {
    case SystemKind::Game: return {"4-0", "4-1", "4-2", "GT"};
    case SystemKind::Set: return {"6-0", "6-1", "6-2", "6-3", "6-4", "7-5", "7-6"};
    case SystemKind::Match: {
      std::vector<std::string> v;
      for (int h = 0; h <= s.match.Q; ++h) v.push_back(std::to_string(s.match.Q + 1) + "-" + std::to_string(h));
      return v;
    }
    default: return {};
  }
}

using u128 = unsigned __int128;

// Exact integer power sums, so merging order cannot change any result.
struct PowerSums {
  std::uint64_t n = 0;
  u128 s1 = 0, s2 = 0, s3 = 0, s4 = 0;

  void add(std::uint64_t x) {
    const u128 v = x;
    ++n;
    s1 += v;
    s2 += v * v;
    s3 += v * v * v;
    s4 += v * v * v * v;
  }
  void merge(const PowerSums& o) {
    n += o.n;
    s1 += o.s1;
    s2 += o.s2;
    s3 += o.s3;
    s4 += o.s4;
  }
};

struct Tally {
  std::uint64_t wins_a = 0, wins_b = 0, capped = 0;
  PowerSums all;
  std::vector<std::uint64_t> row_a, row_b;
  std::vector<PowerSums> rows;

  explicit Tally(std::size_t nrows) : row_a(nrows), row_b(nrows), rows(nrows) {}
  void merge(const Tally& o) {
    wins_a += o.wins_a;
    wins_b += o.wins_b;
    capped += o.capped;
    all.merge(o.all);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      row_a[i] += o.row_a[i];
      row_b[i] += o.row_b[i];
      rows[i].merge(o.rows[i]);
    }
  }
};

SampleStats stats_of(const PowerSums& ps) {
  SampleStats st;
  st.count = ps.n;
  if (ps.n == 0) return st;
  using ld = long double;
  const ld n = static_cast<ld>(ps.n);
  const ld r1 = static_cast<ld>(ps.s1) / n;
  const ld r2 = static_cast<ld>(ps.s2) / n;
  const ld r3 = static_cast<ld>(ps.s3) / n;
  const ld r4 = static_cast<ld>(ps.s4) / n;
  const ld m2 = std::max<ld>(0, r2 - r1 * r1);
  const ld m4 = std::max<ld>(0, r4 - 4 * r1 * r3 + 6 * r1 * r1 * r2 - 3 * r1 * r1 * r1 * r1);
  st.mean = static_cast<double>(r1);
  st.variance = ps.n > 1 ? static_cast<double>(m2 * n / (n - 1)) : 0.0;
  st.stddev = std::sqrt(st.variance);
  st.mean_se = static_cast<double>(std::sqrt(m2 / n));
  st.variance_se = static_cast<double>(std::sqrt(std::max<ld>(0, m4 - m2 * m2) / n));
  st.stddev_se = st.stddev > 0.0 ? st.variance_se / (2.0 * st.stddev) : 0.0;
  return st;
}

constexpr std::uint64_t kBlock = 4096;

}  // namespace

SimSummary simulate(const SimConfig& config) {
  check_sim_config(config);
  const std::vector<std::string> labels = row_labels(config.system);
  const std::uint64_t reps = config.replications;
  const std::uint64_t blocks = (reps + kBlock - 1) / kBlock;

  std::vector<Tally> partial(blocks, Tally(labels.size()));
  auto run_block = [&](std::uint64_t blk) {
    Tally& t = partial[blk];
    const std::uint64_t end = std::min(reps, (blk + 1) * kBlock);
    for (std::uint64_t i = blk * kBlock; i < end; ++i) {
      Play pl{StreamRng(config.seed, i), config.max_points};
      const Outcome o = play_one(config, pl);
      if (!o.a_won) {
        ++t.capped;
        continue;
      }
      if (*o.a_won) ++t.wins_a; else ++t.wins_b;
      t.all.add(pl.points);
      if (o.row >= 0 && static_cast<std::size_t>(o.row) < labels.size()) {
        if (*o.a_won) ++t.row_a[o.row]; else ++t.row_b[o.row];
        t.rows[o.row].add(pl.points);
      }
    }
  };

  unsigned nt = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  nt = static_cast<unsigned>(std::min<std::uint64_t>(nt, blocks));
  if (nt <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < nt; ++k)
      pool.emplace_back([&, k] {
        for (std::uint64_t b = k; b < blocks; b += nt) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  // Pairwise reduction in a fixed tree order.
  for (std::uint64_t width = 1; width < blocks; width *= 2)
    for (std::uint64_t i = 0; i + width < blocks; i += 2 * width) partial[i].merge(partial[i + width]);
  const Tally& total = partial.front();

  SimSummary out;
  out.replications = reps;
  out.capped_replications = total.capped;
  out.completed = total.wins_a + total.wins_b;
  out.wins_a = total.wins_a;
  if (out.completed > 0) {
    const double w = static_cast<double>(total.wins_a) / static_cast<double>(out.completed);
    out.win_rate_a = w;
    out.win_rate_se = std::sqrt(w * (1.0 - w) / static_cast<double>(out.completed));
  }
  out.points = stats_of(total.all);
  for (std::size_t i = 0; i < labels.size(); ++i)
    out.rows.push_back({labels[i], total.row_a[i], total.row_b[i], stats_of(total.rows[i])});
  return out;
}

std::string trace_tiebreak_servers(const ServePair& pair, int K, std::uint64_t seed, std::uint64_t replication,
                                   int points) {
  check_pair(pair);
  std::string trace;
  Play pl{StreamRng(seed, replication), static_cast<std::uint64_t>(std::max(points, 0))};
  pl.trace = &trace;
  tiebreak(pl, pair, K);
  return trace;
}

}  // namespace tennis
