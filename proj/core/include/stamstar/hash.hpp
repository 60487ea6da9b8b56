#pragma once

#include <cstdint>
#include <string_view>

namespace stamstar {

// 64-bit FNV-1a. Used for species identity and trace headers; stable across
// platforms by construction.
inline uint64_t fnv1a64(std::string_view bytes, uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline void fnv1a64_append(uint64_t& h, uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
}

}  // namespace stamstar
