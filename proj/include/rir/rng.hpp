#pragma once

#include <cstdint>
#include <string_view>

// Counter-based random streams built on the splitmix64 finalizer
// (Steele/Lea/Flood mixing constants). Every draw is a pure function of
// (seed, counter), so sampling is reproducible under any parallel
// partitioning of the index range.
namespace rir {

// splitmix64 finalizer: bijective 64-bit mix.
inline std::uint64_t mix_u64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// k-th output of the splitmix64 stream with the given seed.
inline std::uint64_t stream_u64(std::uint64_t seed, std::uint64_t k) {
  return mix_u64(seed + (k + 1) * 0x9E3779B97F4A7C15ULL);
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform_u01(std::uint64_t seed, std::uint64_t k) {
  return static_cast<double>(stream_u64(seed, k) >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes counters 2*index and 2*index+1.
double gaussian_sample(std::uint64_t seed, std::uint64_t index);

// Per-command stream seed: master seed, command name, stream index.
std::uint64_t derive_stream_seed(std::uint64_t master, std::string_view name,
                                 std::uint64_t index);

}  // namespace rir
