#include "rir/rng.hpp"

#include <cmath>

#include "rir/constants.hpp"

namespace rir {

double gaussian_sample(std::uint64_t seed, std::uint64_t index) {
  // 1 - u1 keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform_u01(seed, 2 * index);
  const double u2 = uniform_u01(seed, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(constants::two_pi * u2);
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::string_view name,
                                 std::uint64_t index) {
  // FNV-1a over the command name, folded into the master seed, then one
  // splitmix64 step per stream index.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return mix_u64(mix_u64(master ^ h) + index * 0x9E3779B97F4A7C15ULL);
}

}  // namespace rir
