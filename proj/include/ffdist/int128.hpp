#pragma once

#include <cstdint>
#include <string>

#include "ffdist/error.hpp"

namespace ffdist {

using u128 = unsigned __int128;

inline u128 checked_add(u128 a, u128 b) {
  u128 out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::AccumulatorOverflow, "128-bit sum overflow");
  return out;
}

inline u128 checked_mul(u128 a, u128 b) {
  u128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::AccumulatorOverflow, "128-bit product overflow");
  return out;
}

inline u128 checked_pow(u128 base, unsigned e) {
  u128 out = 1;
  for (unsigned i = 0; i < e; ++i) out = checked_mul(out, base);
  return out;
}

inline std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  return digits;
}

inline long double to_long_double(u128 value) { return static_cast<long double>(value); }

}  // namespace ffdist
