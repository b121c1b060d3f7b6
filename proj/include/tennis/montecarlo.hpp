#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tennis/system.hpp"

namespace tennis {

// xoshiro256** seeded through SplitMix64. Every replication gets its own
// stream derived from (seed, replication index), so results do not depend on
// how replications are scheduled across threads.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

struct SimConfig {
  SystemSpec system;
  ServePair params{0.5, 0.5};  // one-parameter systems read params.pa
  std::uint64_t replications = 100000;
  std::uint64_t seed = 0;
  std::uint64_t max_points = 100000;
  unsigned threads = 0;  // 0: hardware concurrency
};

void check_sim_config(const SimConfig& config);

struct SampleStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double stddev = 0.0;
  double mean_se = 0.0;
  double variance_se = 0.0;
  double stddev_se = 0.0;
};

struct SimRow {
  std::string label;
  std::uint64_t wins_a = 0;
  std::uint64_t wins_b = 0;
  SampleStats points;
};

struct SimSummary {
  std::uint64_t replications = 0;
  std::uint64_t completed = 0;
  std::uint64_t capped_replications = 0;
  std::uint64_t wins_a = 0;
  double win_rate_a = 0.0;
  double win_rate_se = 0.0;
  SampleStats points;
  // Per final score, for game, set and match; empty for other systems.
  std::vector<SimRow> rows;
};

SimSummary simulate(const SimConfig& config);

// Servers ('A' or 'B') of the first `points` points of a K-point tie-breaker
// as played by the simulator for replication `replication`.
std::string trace_tiebreak_servers(const ServePair& pair, int K, std::uint64_t seed, std::uint64_t replication,
                                   int points);

}  // namespace tennis
