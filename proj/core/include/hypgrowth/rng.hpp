#pragma once

#include <cstdint>
#include <initializer_list>

namespace hypgrowth {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derived stream seed: a pure function of the parent seed and a list of tags.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

// Counter-based uniform in [0, 1) for edge `edge` under `seed`; shared across p for coupling.
inline double edge_uniform(std::uint64_t seed, std::uint64_t edge) {
  const std::uint64_t bits = splitmix64(splitmix64(seed) ^ (edge * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline std::uint64_t tag_of(const char* s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 0x100000001b3ULL;
  return h;
}

}  // namespace hypgrowth
