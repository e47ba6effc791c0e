#pragma once

#include <cstdint>
#include <random>

namespace irisvc {

// Deterministic uniform bit source. The algorithm is std::mt19937_64 seeded
// with the 64-bit seed; bits are consumed least-significant first from each
// 64-bit output. next_u64/next_bit streams are fixed by the C++ standard and
// identical across platforms; uniform() goes through the standard library's
// distribution and is only reproducible per toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  // Seed drawn from std::random_device (the OS entropy source).
  static Rng from_entropy();

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  bool next_bit() {
    if (available_ == 0) {
      buffer_ = engine_();
      available_ = 64;
    }
    const bool bit = buffer_ & 1u;
    buffer_ >>= 1;
    --available_;
    return bit;
  }

  // Uniform integer in [0, bound), bound > 0.
  std::uint64_t uniform(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t buffer_ = 0;
  unsigned available_ = 0;
};

}  // namespace irisvc
