#include "rtmix/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

namespace rtmix {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::UtilizationExceeded: return "UtilizationExceeded";
    case ErrorKind::OverflowLimit: return "OverflowLimit";
    case ErrorKind::InternalInvariantViolated: return "InternalInvariantViolated";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::PreconditionKTooSmall: return "PreconditionKTooSmall";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::MalformedBlocks: return "MalformedBlocks";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::HorizonTooSmall: return "HorizonTooSmall";
  }
  return "Unknown";
}

Limits Limits::from_bits(int bits) {
  bits = std::clamp(bits, 1, 63);
  Limits l;
  l.max_magnitude = bits == 63 ? std::numeric_limits<Int>::max() : (Int{1} << bits) - 1;
  return l;
}

Limits Limits::from_env() {
  const char* env = std::getenv("RTMIX_LIMIT_BITS");
  if (!env || !*env) return {};
  char* end = nullptr;
  long bits = std::strtol(env, &end, 10);
  if (end == env || *end != '\0')
    fail(ErrorKind::InvalidInstance, std::string("RTMIX_LIMIT_BITS is not an integer: ") + env);
  return from_bits(static_cast<int>(bits));
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::OverflowLimit, "integer addition overflow");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::OverflowLimit, "integer subtraction overflow");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::OverflowLimit, "integer multiplication overflow");
  return r;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int lcm(std::span<const Int> values, const Limits& limits) {
  Int acc = 1;
  for (Int v : values) {
    require(v >= 1, ErrorKind::PreconditionViolated, "lcm of a non-positive value");
    Int g = std::gcd(acc, v);
    Int next;
    if (__builtin_mul_overflow(acc / g, v, &next) || next > limits.max_magnitude)
      fail(ErrorKind::OverflowLimit,
           "lcm exceeds magnitude cap " + std::to_string(limits.max_magnitude));
    acc = next;
  }
  return acc;
}

bool is_harmonic(std::span<const Int> values) {
  std::vector<Int> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] % v[i - 1] != 0) return false;
  return true;
}

}  // namespace rtmix
