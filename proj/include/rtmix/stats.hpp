#pragma once

#include <cstdint>

namespace rtmix {

/// Solver-maintained operation counters. Solvers accept an optional pointer
/// and bump the fields as they go; a null pointer disables counting.
struct OpCounter {
  std::uint64_t arithmetic = 0;
  std::uint64_t mix_solves = 0;
  std::uint64_t probes = 0;

  void add(std::uint64_t n) { arithmetic += n; }
};

inline void bump(OpCounter* c, std::uint64_t n = 1) {
  if (c) c->arithmetic += n;
}

}  // namespace rtmix
