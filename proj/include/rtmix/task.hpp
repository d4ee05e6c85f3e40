#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rtmix/arith.hpp"
#include "rtmix/rational.hpp"

namespace rtmix {

/// Sporadic task (c, d, p, jitter). The deadline is optional because the
/// response-time recurrence never reads it; schedulability verdicts do.
struct Task {
  Int c = 1;
  std::optional<Int> d;
  Int p = 1;
  Int jitter = 0;

  friend bool operator==(const Task&, const Task&) = default;
};

/// Priority-ordered task list; index 0 has the highest priority.
struct TaskSystem {
  std::vector<Task> tasks;

  std::size_t size() const { return tasks.size(); }
  const Task& operator[](std::size_t i) const { return tasks[i]; }
  const Task& last() const { return tasks.back(); }
  /// Tasks with higher priority than the last one.
  std::span<const Task> higher() const { return std::span(tasks).first(tasks.size() - 1); }

  friend bool operator==(const TaskSystem&, const TaskSystem&) = default;
};

/// Throws InvalidInstance naming the first violated constraint.
void validate(const Task& task, std::size_t index = 0);
void validate(const TaskSystem& ts);

Rational utilization(std::span<const Task> tasks);
Rational utilization(const TaskSystem& ts, bool exclude_last);

struct UtilizationReport {
  Rational higher;  // sum over all but the last task
  Rational total;
  bool schedulability_bound_holds = false;  // total <= 1
};

/// Raises UtilizationExceeded when the higher-priority utilization reaches 1,
/// in which case no finite response time exists for the last task.
UtilizationReport check_general_utilization_bound(const TaskSystem& ts);

std::vector<Int> periods(std::span<const Task> tasks);
bool is_harmonic(const TaskSystem& ts);

}  // namespace rtmix
