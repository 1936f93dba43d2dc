#pragma once

#include <cstdint>
#include <random>

namespace kse {

// All randomized code paths take an explicit Rng so a --seed reproduces runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
    return d(eng_);
  }

  // uniform in [lo, hi] inclusive
  long long range(long long lo, long long hi) {
    std::uniform_int_distribution<long long> d(lo, hi);
    return d(eng_);
  }

  std::uint64_t raw() { return eng_(); }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace kse
