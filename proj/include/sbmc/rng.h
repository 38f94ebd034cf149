#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace sbmc {

// SplitMix64 finalizer. Used to derive independent stream seeds from a
// (seed, stream index) pair.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t seed,
                                    std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

// xoshiro256** seeded through SplitMix64. Output is fully specified here so
// that seeded runs are bit-reproducible across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      word = mix64(s);
      s += 0x9e3779b97f4a7c15ULL;
    }
  }

  Rng(std::uint64_t seed, std::uint64_t stream) noexcept
      : Rng(stream_seed(seed, stream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1).
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Uniform integer on [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound == 0) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const unsigned __int128 m =
          static_cast<unsigned __int128>((*this)()) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  // Number of failures before the first success of a Bernoulli(p) sequence.
  // Saturates at `cap` (p == 0 yields cap).
  std::uint64_t geometric_skip(double p, std::uint64_t cap) noexcept {
    if (p >= 1.0) return 0;
    if (p <= 0.0) return cap;
    const double u = uniform();
    const double skip = std::floor(std::log1p(-u) / std::log1p(-p));
    if (!(skip < static_cast<double>(cap))) return cap;
    return static_cast<std::uint64_t>(skip);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace sbmc
