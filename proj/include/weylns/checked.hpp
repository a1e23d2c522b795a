#pragma once

#include <cstdint>
#include <string>

#include "weylns/error.hpp"

namespace weylns {

using Int = std::int64_t;

// Overflow-checked integer arithmetic. Every coefficient computation in the
// library goes through these so a wraparound can never pass a check silently.
inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, std::to_string(a) + " + " + std::to_string(b));
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, std::to_string(a) + " - " + std::to_string(b));
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, std::to_string(a) + " * " + std::to_string(b));
  return r;
}

// a + b * c
inline Int fma(Int a, Int b, Int c) { return add(a, mul(b, c)); }

// Mathematical modulus, result in [0, m).
constexpr int mod(long long a, int m) {
  long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

} // namespace weylns
