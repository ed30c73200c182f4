#pragma once

#include <cstdint>
#include <limits>

namespace lpplab {

inline constexpr std::uint64_t splitmix_step(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t mix_key(std::uint64_t h, std::uint64_t v) {
  std::uint64_t s = h ^ (v + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
  return splitmix_step(s);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return splitmix_step(state_); }

  double uniform01() { return double((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct RandomSource {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RandomSource substream(std::uint64_t k) const { return {seed, mix_key(stream, k)}; }

  // One generator per lattice cell; draws do not depend on window or visit order.
  SplitMix64 cell(int x, int y) const {
    std::uint64_t h = mix_key(mix_key(seed, stream), 0xCE11);
    h = mix_key(h, std::uint64_t(std::int64_t(x)));
    h = mix_key(h, std::uint64_t(std::int64_t(y)));
    return SplitMix64(h);
  }

  SplitMix64 engine(std::uint64_t salt = 0) const {
    return SplitMix64(mix_key(mix_key(mix_key(seed, stream), 0x5EED), salt));
  }
};

}  // namespace lpplab
