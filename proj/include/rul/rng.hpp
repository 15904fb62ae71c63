#ifndef RUL_RNG_HPP
#define RUL_RNG_HPP

#include <cstdint>
#include <random>

namespace rul {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for stream `index` of a master seed. Derived only
/// from (seed, index), so streams can be consumed in any order or in parallel.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace rul

#endif  // RUL_RNG_HPP
