#pragma once

#include <cstdint>
#include <random>

namespace cone {

namespace detail {
// splitmix64, used to decorrelate (seed, shard) pairs before seeding.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d4a2fa765c7cbdULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// A seeded random stream. Monte Carlo shards each own a stream derived from
// (seed, shard); streams are never shared between threads.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed, uint64_t shard = 0)
      : gen_(detail::splitmix64(seed ^ detail::splitmix64(shard + 0x51ed270b1ULL))) {}

  double gaussian() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }
  // Chi-square with (possibly non-integral) df > 0.
  double chi_square(double df) {
    std::gamma_distribution<double> g(df / 2.0, 2.0);
    return g(gen_);
  }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace cone
