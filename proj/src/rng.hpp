#pragma once

#include <cstdint>
#include <limits>

namespace dmec::mc {

// SplitMix64 step; used for seeding and for deriving stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator so it
// plugs into <random> distributions.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) {
    for (auto& word : s_) word = splitmix64(seed);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
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

  // Uniform on (0, 1]; never zero, so -log(u) is finite.
  double uniform_open0() { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4] = {};
};

// Independent stream keyed by (seed, index, substream). Trial i of a run with
// seed s always sees the same numbers regardless of scheduling.
inline Xoshiro256 stream(std::uint64_t seed, std::uint64_t index, std::uint64_t substream = 0) {
  std::uint64_t key = seed;
  std::uint64_t mixed = splitmix64(key) ^ (index * 0xd1b54a32d192ed03ULL);
  mixed = splitmix64(mixed) ^ (substream * 0x8cb92ba72f3d8dd7ULL);
  return Xoshiro256(splitmix64(mixed));
}

}  // namespace dmec::mc
