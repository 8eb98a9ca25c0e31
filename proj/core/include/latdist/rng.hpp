// Counter-based deterministic random streams.
//
// Every random draw in the library is addressed by (seed, stream, index):
// the same triple always yields the same value, on any platform, with any
// worker count. Streams are derived with splitmix64, whose output is a
// bijection of the 64-bit counter, so distinct indices never collide.
#pragma once

#include <cstdint>

namespace latdist {

// splitmix64 step: mixes a 64-bit counter into a well-distributed word.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 64-bit word for draw `index` of stream `stream` under `seed`.
inline std::uint64_t rng_word(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t index) {
  // Two mixing rounds decorrelate the three keys from one another.
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ stream);
  return splitmix64(h + 0x9e3779b97f4a7c15ULL * index);
}

// Uniform double in [0, 1) with 53 random bits.
inline double rng_uniform01(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t index) {
  return static_cast<double>(rng_word(seed, stream, index) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by 128-bit multiply (n up to 2^63).
inline std::uint64_t rng_below(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t index, std::uint64_t n) {
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(rng_word(seed, stream, index)) * n;
  return static_cast<std::uint64_t>(wide >> 64);
}

}  // namespace latdist
