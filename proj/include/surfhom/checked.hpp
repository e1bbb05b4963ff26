#pragma once

#include <cstdint>
#include <limits>
#include <numeric>

#include "surfhom/error.hpp"

// Overflow-checked int64 arithmetic. Every overflow throws OverflowError;
// nothing in the library relies on wraparound.

namespace surfhom::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
  return r;
}

inline std::int64_t neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw OverflowError("int64 overflow in negation");
  return -a;
}

inline std::int64_t abs(std::int64_t a) { return a < 0 ? neg(a) : a; }

inline std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw OverflowError("int64 overflow narrowing 128-bit intermediate");
  return static_cast<std::int64_t>(v);
}

/// Quotient rounded toward negative infinity.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Euclidean residue in [0, m).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(abs(a), abs(b)); }

}  // namespace surfhom::checked
