#include "rtmix/sim.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace rtmix {

void validate(const ReleasePattern& rp, const TaskSystem& ts) {
  validate(ts);
  require(rp.jobs.size() == ts.size(), ErrorKind::InvalidInstance,
          "release pattern lists " + std::to_string(rp.jobs.size()) + " tasks, system has " +
              std::to_string(ts.size()));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& jobs = rp.jobs[i];
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      const std::string where = "task " + std::to_string(i) + " job " + std::to_string(k);
      require(jobs[k].arrival >= 0, ErrorKind::InvalidInstance, where + ": negative arrival");
      const Int lag = jobs[k].release - jobs[k].arrival;
      require(0 <= lag && lag <= ts[i].jitter, ErrorKind::InvalidInstance,
              where + ": release - arrival must lie in [0, jitter]");
      if (k > 0)
        require(jobs[k].arrival - jobs[k - 1].arrival >= ts[i].p, ErrorKind::InvalidInstance,
                where + ": arrivals closer than the period");
    }
  }
}

namespace {

struct Pending {
  std::size_t record;
  Int remaining;
};

void emit(std::vector<Segment>& out, Int start, Int end, std::optional<std::size_t> task) {
  if (start == end) return;
  if (!out.empty() && out.back().task == task && out.back().end == start) {
    out.back().end = end;
    return;
  }
  out.push_back({start, end, task});
}

}  // namespace

ScheduleTrace simulate(const TaskSystem& ts, const ReleasePattern& rp, Int horizon) {
  validate(rp, ts);
  require(horizon >= 0, ErrorKind::InvalidInstance, "horizon must be nonnegative");

  ScheduleTrace trace;
  trace.horizon = horizon;
  // (release, task, job) in release order; ties by priority
  std::vector<std::tuple<Int, std::size_t, std::size_t>> events;
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t k = 0; k < rp.jobs[i].size(); ++k)
      if (rp.jobs[i][k].release < horizon) events.emplace_back(rp.jobs[i][k].release, i, k);
  std::sort(events.begin(), events.end());

  std::vector<std::deque<Pending>> ready(ts.size());
  std::size_t next_event = 0;
  Int now = 0;
  while (now < horizon) {
    while (next_event < events.size() && std::get<0>(events[next_event]) <= now) {
      const auto [rel, i, k] = events[next_event++];
      trace.jobs.push_back({i, k, rp.jobs[i][k].arrival, rel, -1});
      ready[i].push_back({trace.jobs.size() - 1, ts[i].c});
    }
    const Int next_release = next_event < events.size() ? std::get<0>(events[next_event]) : horizon;

    auto running = std::find_if(ready.begin(), ready.end(), [](const auto& q) { return !q.empty(); });
    if (running == ready.end()) {
      emit(trace.segments, now, next_release, std::nullopt);
      now = next_release;
      continue;
    }
    const std::size_t task = static_cast<std::size_t>(running - ready.begin());
    Pending& job = running->front();
    const Int until = std::min(now + job.remaining, next_release);
    emit(trace.segments, now, until, task);
    job.remaining -= until - now;
    now = until;
    if (job.remaining == 0) {
      trace.jobs[job.record].completion = now;
      running->pop_front();
    }
  }

  for (const auto& j : trace.jobs)
    if (j.completion < 0)
      fail(ErrorKind::HorizonTooSmall, "task " + std::to_string(j.task) + " job " + std::to_string(j.job) +
                                           " released at " + std::to_string(j.release) +
                                           " does not complete before the horizon " + std::to_string(horizon));
  return trace;
}

std::vector<ObservedResponse> observed_responses(const ScheduleTrace& trace, Measure measure) {
  std::vector<ObservedResponse> out;
  for (const auto& j : trace.jobs) {
    if (j.completion < 0) continue;
    const Int from = measure == Measure::FromRelease ? j.release : j.arrival;
    out.push_back({j.task, j.job, j.completion - from});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.task != b.task ? a.task < b.task : a.job < b.job;
  });
  return out;
}

std::string render_gantt(const ScheduleTrace& trace, std::size_t task_count) {
  const auto width = static_cast<std::size_t>(trace.horizon);
  std::vector<std::string> rows(task_count, std::string(width, '.'));
  for (const auto& seg : trace.segments)
    if (seg.task && *seg.task < task_count)
      for (Int t = seg.start; t < seg.end; ++t) rows[*seg.task][static_cast<std::size_t>(t)] = '#';
  for (const auto& j : trace.jobs)
    if (j.task < task_count && j.release < trace.horizon && rows[j.task][static_cast<std::size_t>(j.release)] == '.')
      rows[j.task][static_cast<std::size_t>(j.release)] = '^';

  std::string out;
  std::string ruler(width, ' ');
  for (std::size_t t = 0; t < width; t += 10) {
    const std::string label = std::to_string(t);
    for (std::size_t c = 0; c < label.size() && t + c < width; ++c) ruler[t + c] = label[c];
  }
  const std::string pad(6, ' ');
  out += pad + ruler + "\n";
  for (std::size_t i = 0; i < task_count; ++i) {
    std::string name = "t" + std::to_string(i + 1);
    name.resize(pad.size(), ' ');
    out += name + rows[i] + "\n";
  }
  return out;
}

ReleasePattern periodic_pattern(const TaskSystem& ts, Int horizon, bool with_jitter) {
  ReleasePattern rp;
  for (const auto& t : ts.tasks) {
    std::vector<JobRelease> jobs;
    for (Int a = 0; a < horizon; a += t.p) jobs.push_back({a, a + (with_jitter ? t.jitter : 0)});
    rp.jobs.push_back(std::move(jobs));
  }
  return rp;
}

}  // namespace rtmix
