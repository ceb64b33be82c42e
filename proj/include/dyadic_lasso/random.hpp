#pragma once

#include <cstdint>
#include <random>

namespace dyadic_lasso {

// Deterministic random stream. A stream is fully determined by
// (master_seed, index), so replication i draws the same numbers no matter
// which thread runs it or in which order replications are scheduled.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed, std::uint64_t index = 0);

  /// Stream for sub-task `index` of this stream's (master, index) pair.
  static RandomStream derive(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(master_seed, index);
  }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace dyadic_lasso
