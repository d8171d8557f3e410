#pragma once

#include <cmath>
#include <cstdint>

namespace tvqc {

// SplitMix64 generator (Vigna's public-domain mixer): the state advances by
// the 64-bit golden gamma and each output is the murmur-style finalizer of
// the new state. Everything is integer arithmetic plus sqrt/log, so a given
// seed reproduces the same stream on any IEEE-754 platform.
//
// Substreams for parallel work are derived by hashing (seed, stream_index)
// into a fresh starting state, so chunked runs do not depend on the number
// of workers that consume the chunks.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t stream_index) {
    return Rng(mix(seed) ^ mix(stream_index + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via the Marsaglia polar method; the accepted pair yields
  // two variates, the second is cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace tvqc
