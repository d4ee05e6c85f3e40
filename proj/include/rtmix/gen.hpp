#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtmix/mixing.hpp"
#include "rtmix/task.hpp"

namespace rtmix {

enum class JitterPreset { Period, Zero };

/// Full-utilization harmonic system with n = c.size() + 2 tasks:
/// p_1 = p1, p_i = (c_i + 1) p_{i-1} for i <= n-2, p_{n-1} = p_n = 2 p_{n-2},
/// c_{n-1} = 2 p_{n-2} (1 - sum_{i<=n-2} c_i / p_i) - 1, c_n = 1. Deadlines d = p.
TaskSystem construct_extreme(const std::vector<Int>& c, Int p1, const std::vector<Int>& jitters);
TaskSystem construct_extreme(const std::vector<Int>& c, Int p1, JitterPreset preset);

/// w_i = 2^i, a_i = n 2^i, b_i = n 2^n - 1 for i = 1..n, w0 = 1.
MixInstance tight_mixing_instance(int n);

enum class JitterMode { Zero, Full, Uniform };

std::optional<JitterMode> parse_jitter_mode(const std::string& name);
std::string to_string(JitterMode mode);

struct RandomSystemSpec {
  std::uint64_t seed = 1;
  int n = 3;
  Int p_max = 16;
  bool harmonic = false;
  JitterMode jitter = JitterMode::Uniform;
  int max_attempts = 1000;
};

/// Seeded random system with implicit deadlines and higher-priority
/// utilization below 1. Raises GenerationFailed when rejection runs out.
TaskSystem random_system(const RandomSystemSpec& spec);

struct RandomMixSpec {
  std::uint64_t seed = 1;
  int n = 3;
  Int a_max = 16;
  Int b_abs = 64;
  Int w_max = 8;
  bool harmonic = false;
  int max_attempts = 1000;
};

/// Seeded bounded mixing instance with w0 = ceil(sum w/a) (at least 1).
MixInstance random_mix(const RandomMixSpec& spec);

}  // namespace rtmix
