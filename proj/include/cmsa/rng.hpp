#pragma once

#include <cstdint>

namespace cmsa::rng {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stream identifiers. A draw is a pure function of (seed, a, b, stream), so
/// generation order and thread count never change a value.
enum class Stream : std::uint64_t {
  weight = 0x57,
  cost = 0xC0,
  uniform = 0x55,
  trial = 0x7A,
  mapping = 0x3A,
};

constexpr std::uint64_t hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                             Stream stream) noexcept {
  const std::uint64_t key = mix64(seed ^ (static_cast<std::uint64_t>(stream) << 56));
  const std::uint64_t counter = (a << 32) ^ b;
  return mix64(key ^ mix64(counter ^ mix64(key + static_cast<std::uint64_t>(stream))));
}

/// Maps 53 high bits to the open interval (0, 1).
constexpr double to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

constexpr double uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                         Stream stream) noexcept {
  return to_open_unit(hash(seed, a, b, stream));
}

/// Seed for trial `index` of an ensemble rooted at `base_seed`.
constexpr std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
  return base_seed ^ mix64(index ^ 0xA5A5A5A5DEADBEEFULL);
}

}  // namespace cmsa::rng
