#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtmix/task.hpp"

namespace rtmix {

struct JobRelease {
  Int arrival = 0;
  Int release = 0;

  friend bool operator==(const JobRelease&, const JobRelease&) = default;
};

/// Jobs per task in arrival order.
struct ReleasePattern {
  std::vector<std::vector<JobRelease>> jobs;
};

/// Arrivals at least p apart and 0 <= release - arrival <= jitter.
void validate(const ReleasePattern& rp, const TaskSystem& ts);

struct Segment {
  Int start = 0;
  Int end = 0;
  std::optional<std::size_t> task;  // empty = idle

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct JobRecord {
  std::size_t task = 0;
  std::size_t job = 0;
  Int arrival = 0;
  Int release = 0;
  Int completion = 0;
};

struct ScheduleTrace {
  Int horizon = 0;
  std::vector<Segment> segments;  // partition of [0, horizon)
  std::vector<JobRecord> jobs;    // jobs released before the horizon
};

/// Preemptive fixed-priority schedule; lower index wins. Jobs released at or
/// after the horizon are ignored; HorizonTooSmall if one released earlier has
/// not completed by the horizon.
ScheduleTrace simulate(const TaskSystem& ts, const ReleasePattern& rp, Int horizon);

enum class Measure { FromRelease, FromArrival };

struct ObservedResponse {
  std::size_t task = 0;
  std::size_t job = 0;
  Int value = 0;
};

std::vector<ObservedResponse> observed_responses(const ScheduleTrace& trace, Measure measure);

/// One row per task, one character per time unit ('#' running, '^' release, '.' otherwise).
std::string render_gantt(const ScheduleTrace& trace, std::size_t task_count);

/// Synchronous periodic pattern: arrivals k p, releases arrival + jitter, up to the horizon.
ReleasePattern periodic_pattern(const TaskSystem& ts, Int horizon, bool with_jitter);

}  // namespace rtmix
