#ifndef ADEVAL_RANDOM_H_
#define ADEVAL_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace adeval {

// Seed discipline: every subsystem draws from its own Mt19937-64 stream whose
// seed is DeriveSeed(parent, tag). Streams are independent of the order in
// which other subsystems consume randomness, so adding a worker or reordering
// work never changes results.
//
//   DeriveSeed(s, tag) = SplitMix64(s ^ Fnv1a64(tag))
//   DeriveSeed(s, i)   = SplitMix64(s ^ SplitMix64(i + 0x9E3779B97F4A7C15))
std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t DeriveSeed(std::uint64_t parent, std::string_view tag);
std::uint64_t DeriveSeed(std::uint64_t parent, std::uint64_t index);

// Thin wrapper over std::mt19937_64 with distribution code of our own; the
// standard distributions are implementation-defined and would make outputs
// differ across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t UniformIndex(std::uint64_t n);
  // Uniform double in [0, 1) with 53 random bits.
  double Uniform01();
  // Standard normal draw (Box-Muller, one value per call).
  double Normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

template <typename It>
void Shuffle(It first, It last, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const std::uint64_t j = rng.UniformIndex(i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace adeval

#endif  // ADEVAL_RANDOM_H_
