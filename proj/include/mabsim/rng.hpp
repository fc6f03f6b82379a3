#pragma once

#include <cstdint>
#include <random>

namespace mabsim {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed number `index` of `parent`.
///
/// split(s, k) = splitmix64(splitmix64(s) ^ splitmix64(k ^ 0x5851F42D4C957F2D)).
/// The mapping is a pure function of its two arguments, so a trial's streams
/// depend only on (base seed, trial index, stream tag) and never on thread
/// scheduling.
constexpr std::uint64_t split_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(splitmix64(parent) ^ splitmix64(index ^ 0x5851F42D4C957F2DULL));
}

/// Random stream with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Distributions are implemented here instead of using <random>'s
/// distribution classes, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound >= 1. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Stream tags used to derive independent per-purpose streams from a trial seed.
namespace stream {
inline constexpr std::uint64_t kGraph = 1;
inline constexpr std::uint64_t kArmMeans = 2;
inline constexpr std::uint64_t kSticky = 3;
inline constexpr std::uint64_t kInitialArms = 4;
inline constexpr std::uint64_t kContacts = 5;
inline constexpr std::uint64_t kAdversary = 6;
inline constexpr std::uint64_t kRewardsBase = 1000;  // + agent id
}  // namespace stream

}  // namespace mabsim
