#pragma once

#include <cstdint>
#include <limits>
#include <span>

#include "rtmix/errors.hpp"

namespace rtmix {

using Int = std::int64_t;

/// Magnitude ceiling applied to lcm values and derived search bounds.
/// Values above the cap raise OverflowLimit instead of wrapping.
struct Limits {
  Int max_magnitude = std::numeric_limits<Int>::max();

  /// Cap of 2^bits - 1; bits is clamped to [1, 63].
  static Limits from_bits(int bits);
  /// Reads RTMIX_LIMIT_BITS, falling back to the default cap when unset.
  static Limits from_env();
};

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Ceiling / floor division for any sign of the numerator, den > 0.
constexpr Int ceil_div(Int num, Int den) {
  Int q = num / den;
  if ((num % den != 0) && (num > 0)) ++q;
  return q;
}

constexpr Int floor_div(Int num, Int den) {
  Int q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

/// Nonnegative residue of num modulo den, den > 0.
constexpr Int mod_floor(Int num, Int den) { return num - floor_div(num, den) * den; }

Int gcd(Int a, Int b);

/// lcm of positive integers; the empty lcm is 1.
Int lcm(std::span<const Int> values, const Limits& limits = {});

/// True iff sorted values form a divisibility chain.
bool is_harmonic(std::span<const Int> values);

}  // namespace rtmix
