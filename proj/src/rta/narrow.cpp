// Response times for harmonic periods.
//
// For 0 < t <= p_j the ceiling ceil((t + jitter_j) / p_j) is 1 or 2, and it
// only switches at t = p_j - jitter_j. Between two consecutive switch points
// every task with a period at least the probe point has a value known in
// advance, so it moves into gamma and only the tasks with smaller periods
// remain in the mixing instance. Those have periods below the probe point,
// which is what the Mix duality needs for harmonic capacities.

#include <algorithm>
#include <string>

#include "rtmix/rta.hpp"

namespace rtmix {

namespace {

bool run_probe(const ResponseQuery& q, NarrowProbe& probe, OpCounter* ops) {
  Int g = q.gamma;
  for (std::size_t j : probe.ones) g = checked_add(g, q.tasks[j].c);
  for (std::size_t j : probe.twos) g = checked_add(g, checked_mul(2, q.tasks[j].c));
  probe.gamma = g;

  MixInstance inst;
  for (std::size_t j : probe.residual) {
    const auto& t = q.tasks[j];
    if (t.p > probe.k)
      fail(ErrorKind::InternalInvariantViolated, "residual period exceeds the probe point");
    inst.terms.push_back({t.c, t.p, checked_add(probe.k, t.jitter)});
  }
  if (ops) ++ops->probes;
  const MixSolution sol = solve_harmonic(inst, ops);
  probe.feasible = sol.objective <= checked_sub(probe.k, g);
  return probe.feasible;
}

void require_harmonic(const ResponseQuery& q) {
  require(is_harmonic(periods(q.tasks)), ErrorKind::PreconditionViolated,
          "periods of I are not harmonic");
}

}  // namespace

Int catch_search(const ResponseQuery& q, Int lo, Int hi, OpCounter* ops, ProbeTrace* trace) {
  validate(q);
  require_harmonic(q);
  require(1 <= lo && lo <= hi, ErrorKind::PreconditionViolated,
          "catch interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is empty");

  std::vector<std::size_t> ones;
  for (std::size_t j = 0; j < q.tasks.size(); ++j) {
    const Int diff = q.tasks[j].p - q.tasks[j].jitter;
    if (hi <= diff) ones.push_back(j);
    require(!(lo <= diff && diff < hi), ErrorKind::PreconditionViolated,
            "p - jitter of task " + std::to_string(j) + " lies inside the catch interval");
  }

  Int L = lo, R = hi;
  while (L < R) {
    const Int kappa = L + (R - L) / 2;
    NarrowProbe probe;
    probe.phase = NarrowProbe::Phase::Catch;
    probe.k = kappa;
    probe.window_lo = L;
    probe.window_hi = kappa;
    probe.ones = ones;
    for (std::size_t j = 0; j < q.tasks.size(); ++j) {
      const auto& t = q.tasks[j];
      if (t.p < kappa)
        probe.residual.push_back(j);
      else if (t.p < L + t.jitter)
        probe.twos.push_back(j);
    }
    bump(ops, q.tasks.size());
    if (run_probe(q, probe, ops))
      R = kappa;
    else
      L = kappa + 1;
    if (trace) trace->push_back(std::move(probe));
  }
  return R;
}

Int narrow(const ResponseQuery& q, OpCounter* ops, ProbeTrace* trace) {
  validate(q);
  require_harmonic(q);
  if (q.tasks.empty()) return q.gamma;

  const Int u = search_upper_bound(q);
  std::vector<Int> ks;
  for (const auto& t : q.tasks) {
    const Int diff = t.p - t.jitter;
    // differences at or beyond u never bracket the response
    if (diff > 0 && diff < u) ks.push_back(diff);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  Int prev = 0;
  for (Int k : ks) {
    NarrowProbe probe;
    probe.k = k;
    probe.window_lo = prev + 1;
    probe.window_hi = k;
    for (std::size_t j = 0; j < q.tasks.size(); ++j) {
      const auto& t = q.tasks[j];
      if (t.p < k)
        probe.residual.push_back(j);
      else if (k <= t.p - t.jitter)
        probe.ones.push_back(j);
      else
        probe.twos.push_back(j);
    }
    bump(ops, q.tasks.size());
    const bool hit = run_probe(q, probe, ops);
    if (trace) trace->push_back(std::move(probe));
    if (hit) return catch_search(q, prev + 1, k, ops, trace);
    prev = k;
  }
  return catch_search(q, prev + 1, u, ops, trace);
}

Int response_harmonic(const ResponseQuery& q, OpCounter* ops, ProbeTrace* trace) {
  const Int r = narrow(q, ops, trace);
  verify_response(q, r);
  return r;
}

}  // namespace rtmix
