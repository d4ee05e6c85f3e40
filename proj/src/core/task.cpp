#include "rtmix/task.hpp"

#include <string>

namespace rtmix {

namespace {

[[noreturn]] void invalid(std::size_t index, const std::string& what) {
  fail(ErrorKind::InvalidInstance, "task " + std::to_string(index) + ": " + what);
}

}  // namespace

void validate(const Task& t, std::size_t index) {
  if (t.c < 1) invalid(index, "c >= 1 violated (c=" + std::to_string(t.c) + ")");
  if (t.p < 1) invalid(index, "p >= 1 violated (p=" + std::to_string(t.p) + ")");
  if (t.jitter < 0) invalid(index, "jitter >= 0 violated");
  if (t.jitter > t.p)
    invalid(index, "jitter <= p violated (jitter=" + std::to_string(t.jitter) +
                       ", p=" + std::to_string(t.p) + ")");
  if (t.d) {
    if (*t.d < t.c) invalid(index, "c <= d violated");
    if (*t.d > t.p) invalid(index, "d <= p violated");
  }
}

void validate(const TaskSystem& ts) {
  if (ts.tasks.empty()) fail(ErrorKind::InvalidInstance, "task system is empty");
  for (std::size_t i = 0; i < ts.size(); ++i) validate(ts[i], i);
}

Rational utilization(std::span<const Task> tasks) {
  Rational u;
  for (const auto& t : tasks) u += Rational(t.c, t.p);
  return u;
}

Rational utilization(const TaskSystem& ts, bool exclude_last) {
  return exclude_last ? utilization(ts.higher()) : utilization(std::span(ts.tasks));
}

UtilizationReport check_general_utilization_bound(const TaskSystem& ts) {
  UtilizationReport rep;
  rep.higher = utilization(ts, true);
  rep.total = rep.higher + Rational(ts.last().c, ts.last().p);
  rep.schedulability_bound_holds = rep.total <= Rational(1);
  if (rep.higher >= Rational(1))
    fail(ErrorKind::UtilizationExceeded,
         "higher-priority utilization " + rep.higher.str() + " >= 1");
  return rep;
}

std::vector<Int> periods(std::span<const Task> tasks) {
  std::vector<Int> ps;
  ps.reserve(tasks.size());
  for (const auto& t : tasks) ps.push_back(t.p);
  return ps;
}

bool is_harmonic(const TaskSystem& ts) { return is_harmonic(periods(ts.tasks)); }

}  // namespace rtmix
