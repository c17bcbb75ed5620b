#pragma once

#include <cstdint>
#include <numeric>

namespace rspin {

// Canonical representative of v mod r. r = 0 means integer-valued (framings):
// the value passes through untouched.
inline int64_t norm_mod(int64_t v, int64_t r) {
  if (r == 0) return v;
  int64_t m = v % r;
  return m < 0 ? m + r : m;
}

// gcd with the usual convention gcd(0, 0) = 0; arguments may be negative.
inline int64_t gcd64(int64_t a, int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

}  // namespace rspin
