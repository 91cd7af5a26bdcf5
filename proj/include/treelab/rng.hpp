#pragma once

#include <cstdint>
#include <random>

namespace treelab {

// Stateless 64-bit mixer used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seedable stream; substream(seed, r) yields the r-th independent stream, so
// replicate r draws identically whether runs are batched or split.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  static Rng substream(std::uint64_t seed, std::uint64_t replicate) {
    return Rng(splitmix64(seed) ^ splitmix64(replicate * 2 + 1));
  }

  double uniform() {  // (0, 1)
    return std::uniform_real_distribution<double>(
        std::numeric_limits<double>::min(), 1.0)(gen_);
  }
  double exponential(double rate) {
    return std::exponential_distribution<double>(rate)(gen_);
  }
  std::uint64_t below(std::uint64_t n) {  // uniform on [0, n)
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
  }
  double normal() { return std::normal_distribution<double>()(gen_); }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace treelab
