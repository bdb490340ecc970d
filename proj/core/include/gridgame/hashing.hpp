#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <string>

namespace gridgame {

inline constexpr uint64_t kFnvOffset = 1469598103934665603ULL;
inline constexpr uint64_t kFnvPrime = 1099511628211ULL;

inline uint64_t fnv1a(const void* data, size_t size, uint64_t seed = kFnvOffset) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= kFnvPrime;
  }
  return h;
}

inline uint64_t fnv1a(const std::string& text, uint64_t seed = kFnvOffset) {
  return fnv1a(text.data(), text.size(), seed);
}

inline uint64_t fnv1a(double value, uint64_t seed = kFnvOffset) {
  uint64_t bits = 0;
  std::memcpy(&bits, &value, sizeof(bits));
  return fnv1a(&bits, sizeof(bits), seed);
}

}  // namespace gridgame
