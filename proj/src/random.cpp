#include "dyadic_lasso/random.hpp"

namespace dyadic_lasso {

namespace {
constexpr std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
constexpr std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }
}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{lo(master_seed), hi(master_seed), lo(index), hi(index), 0x6c617373u};
  engine_.seed(seq);
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
  return dist(engine_);
}

}  // namespace dyadic_lasso
