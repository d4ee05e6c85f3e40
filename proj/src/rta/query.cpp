#include <algorithm>
#include <string>

#include "rtmix/rta.hpp"

namespace rtmix {

ResponseQuery ResponseQuery::for_task(const TaskSystem& ts, std::size_t index) {
  require(index < ts.size(), ErrorKind::InvalidInstance, "task index out of range");
  ResponseQuery q;
  q.tasks.assign(ts.tasks.begin(), ts.tasks.begin() + static_cast<std::ptrdiff_t>(index));
  q.gamma = ts[index].c;
  return q;
}

ResponseQuery ResponseQuery::of(const TaskSystem& ts, const std::vector<std::size_t>& members, Int gamma) {
  ResponseQuery q;
  q.gamma = gamma;
  for (std::size_t i : members) {
    require(i < ts.size(), ErrorKind::InvalidInstance, "task index out of range");
    q.tasks.push_back(ts[i]);
  }
  return q;
}

void validate(const ResponseQuery& q) {
  require(q.gamma >= 1, ErrorKind::InvalidInstance, "gamma >= 1 violated");
  for (std::size_t i = 0; i < q.tasks.size(); ++i) validate(q.tasks[i], i);
  const Rational U = utilization(q.tasks);
  if (U >= Rational(1))
    fail(ErrorKind::UtilizationExceeded, "utilization over I is " + U.str() + " >= 1");
}

Int demand(const ResponseQuery& q, Int t) {
  __int128 sum = q.gamma;
  for (const auto& task : q.tasks)
    sum += static_cast<__int128>(task.c) * ceil_div(checked_add(t, task.jitter), task.p);
  if (sum > std::numeric_limits<Int>::max() || sum < std::numeric_limits<Int>::min())
    fail(ErrorKind::OverflowLimit, "demand overflows at t=" + std::to_string(t));
  return static_cast<Int>(sum);
}

bool is_feasible_time(const ResponseQuery& q, Int t) { return t >= 0 && t >= demand(q, t); }

BoundsResult query_bounds(const ResponseQuery& q, const Limits& limits) {
  return response_bounds(q.tasks, q.gamma, limits);
}

Int search_upper_bound(const ResponseQuery& q, const Limits& limits) {
  try {
    return query_bounds(q, limits).u;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OverflowLimit) throw;
  }
  // u1 alone; it needs no lcm
  const Rational slack = Rational(1) - utilization(q.tasks);
  Rational top(q.gamma);
  for (const auto& t : q.tasks) top += Rational(t.c) * (Rational(1) + Rational(t.jitter, t.p));
  return to_int((top / slack).ceil(), limits);
}

Int response_bruteforce(const ResponseQuery& q, const Limits& limits, OpCounter* ops) {
  validate(q);
  if (q.tasks.empty()) return q.gamma;
  const Int cap = search_upper_bound(q, limits);
  Int t = q.gamma;
  while (true) {
    const Int next = demand(q, t);
    bump(ops, q.tasks.size());
    if (next == t) return t;
    if (next > cap)
      fail(ErrorKind::InternalInvariantViolated,
           "fixed-point iteration passed the upper bound " + std::to_string(cap));
    t = next;
  }
}

MixInstance build_mix_for_k(const ResponseQuery& q, Int k) {
  MixInstance inst;
  inst.w0 = 1;
  for (const auto& t : q.tasks) inst.terms.push_back({t.c, t.p, checked_add(k, t.jitter)});
  return inst;
}

DecisionOutcome decide_large_k(const ResponseQuery& q, Int k, const Limits& limits, OpCounter* ops) {
  validate(q);
  const MixInstance inst = build_mix_for_k(q, k);
  const Int S = s_search_bound(inst, limits);
  if (k < S)
    fail(ErrorKind::PreconditionKTooSmall,
         "k=" + std::to_string(k) + " is below the certified bound S=" + std::to_string(S));
  if (ops) ++ops->probes;
  MixSolution sol = solve(inst, limits, ops);
  DecisionOutcome out;
  out.k = k;
  out.yes = sol.objective <= checked_sub(k, q.gamma);
  out.certificate = std::move(sol);
  return out;
}

int two_values(Int p, Int jitter, Int t) {
  require(0 < t && t <= p, ErrorKind::PreconditionViolated,
          "two-values law needs 0 < t <= p, got t=" + std::to_string(t));
  return t <= p - jitter ? 1 : 2;
}

int two_values(const ResponseQuery& q, std::size_t i, Int t) {
  require(i < q.tasks.size(), ErrorKind::InvalidInstance, "task index out of range");
  return two_values(q.tasks[i].p, q.tasks[i].jitter, t);
}

void verify_response(const ResponseQuery& q, Int r) {
  if (!is_feasible_time(q, r))
    fail(ErrorKind::InternalInvariantViolated, "t=" + std::to_string(r) + " is not feasible");
  if (r > 0 && is_feasible_time(q, r - 1))
    fail(ErrorKind::InternalInvariantViolated,
         "t=" + std::to_string(r - 1) + " is feasible, so " + std::to_string(r) + " is not least");
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Auto: return "auto";
    case Algorithm::Bruteforce: return "bruteforce";
    case Algorithm::Harmonic: return "harmonic";
    case Algorithm::LcmScan: return "lcm-scan";
    case Algorithm::Turing: return "turing";
    case Algorithm::JitterFree: return "jitter-free";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  for (auto a : {Algorithm::Auto, Algorithm::Bruteforce, Algorithm::Harmonic, Algorithm::LcmScan,
                 Algorithm::Turing, Algorithm::JitterFree})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

Int compute_response(const ResponseQuery& q, Algorithm algorithm, const Limits& limits,
                     OpCounter* ops, Algorithm* used) {
  if (algorithm == Algorithm::Auto) {
    const bool no_jitter =
        std::all_of(q.tasks.begin(), q.tasks.end(), [](const Task& t) { return t.jitter == 0; });
    if (is_harmonic(periods(q.tasks)))
      algorithm = Algorithm::Harmonic;
    else if (no_jitter)
      algorithm = Algorithm::JitterFree;
    else
      algorithm = Algorithm::Turing;
  }
  if (used) *used = algorithm;
  switch (algorithm) {
    case Algorithm::Bruteforce: return response_bruteforce(q, limits, ops);
    case Algorithm::Harmonic: return response_harmonic(q, ops);
    case Algorithm::LcmScan: return response_lcm_scan(q, limits, ops);
    case Algorithm::Turing: return response_turing(q, limits, ops);
    case Algorithm::JitterFree: return response_jitter_free(q, limits, ops);
    case Algorithm::Auto: break;
  }
  fail(ErrorKind::InternalInvariantViolated, "unresolved algorithm selector");
}

SystemReport analyze_system(const TaskSystem& ts, Algorithm algorithm, const Limits& limits, OpCounter* ops) {
  validate(ts);
  SystemReport report;
  bool all_known = true;
  bool all_ok = true;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const ResponseQuery q = ResponseQuery::for_task(ts, j);
    validate(q);
    TaskReport tr;
    tr.index = j;
    tr.response = compute_response(q, algorithm, limits, ops, &tr.algorithm);
    try {
      tr.bounds = query_bounds(q, limits);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OverflowLimit) throw;
    }
    if (tr.bounds && (Rational(tr.response) < tr.bounds->ell || tr.response > tr.bounds->u))
      fail(ErrorKind::InternalInvariantViolated,
           "response " + std::to_string(tr.response) + " of task " + std::to_string(j) +
               " lies outside [ell, u]");
    if (ts[j].d) {
      tr.deadline_budget = *ts[j].d - ts[j].jitter;
      tr.schedulable = tr.response <= *tr.deadline_budget;
      all_ok = all_ok && *tr.schedulable;
    } else {
      all_known = false;
    }
    report.tasks.push_back(std::move(tr));
  }
  if (all_known) report.schedulable = all_ok;
  return report;
}

}  // namespace rtmix
