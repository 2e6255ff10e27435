#ifndef MQMSYNTH_RNG_HPP
#define MQMSYNTH_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace mqmsynth {

/// 64-bit Mersenne Twister with portable draw helpers. std:: distributions
/// are implementation-defined, so they are not used where outputs must be
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for a named stage, derived from a root seed.
  static Rng stream(std::uint64_t root_seed, std::string_view name);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
/// FNV-1a over bytes.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace mqmsynth

#endif  // MQMSYNTH_RNG_HPP
