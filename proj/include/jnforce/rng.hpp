#pragma once

#include <cstdint>

namespace jnforce {

// splitmix64, used only to expand seeds into generator state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256++ with per-stream seeding.  Streams derived from the same seed
// and distinct indices are independent for our purposes, and every draw is
// bit-reproducible across platforms (no std::normal_distribution, whose
// output is implementation-defined).
class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) {
    SplitMix64 sm(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    for (auto& s : state_) s = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform on (0, 1]
  double uniform_open0() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }
  // uniform on [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // standard normal via Box-Muller (trigonometric form, no rejection)
  double gaussian();

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4] = {};
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline const char* generator_id() { return "xoshiro256++/splitmix64/box-muller"; }

}  // namespace jnforce
