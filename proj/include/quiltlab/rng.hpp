#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace quiltlab {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// FNV-1a hash of a stream label.
constexpr std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Seed of worker stream `index` under `label`, derived from the master seed:
/// splitmix64(splitmix64(master ^ hash(label)) + index).
constexpr std::uint64_t stream_seed(std::uint64_t master, std::string_view label, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ label_hash(label)) + index);
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::string_view label, std::uint64_t index) {
  return std::mt19937_64(stream_seed(master, label, index));
}

}  // namespace quiltlab
