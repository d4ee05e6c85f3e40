#include <algorithm>
#include <string>

#include "rtmix/rta.hpp"

namespace rtmix {

namespace {

Int lower_bound_ceil(const ResponseQuery& q) {
  const Rational slack = Rational(1) - utilization(q.tasks);
  Rational top(q.gamma);
  for (const auto& t : q.tasks) top += Rational(t.c) * Rational(t.jitter, t.p);
  return to_int((top / slack).ceil());
}

/// Least k in [lo, hi] with probe(k) true; probe(hi) is assumed true.
template <class Probe>
Int least_true(Int lo, Int hi, Probe&& probe) {
  while (lo < hi) {
    const Int mid = lo + (hi - lo) / 2;
    if (probe(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace

Int response_lcm_scan(const ResponseQuery& q, const Limits& limits, OpCounter* ops) {
  validate(q);
  if (q.tasks.empty()) return q.gamma;
  const Int m = lcm(periods(q.tasks), limits);

  // demand(rho + lambda m) = demand(rho) + lambda sum c_i m / p_i, so the fixed
  // points are rho + lambda m with lambda = (demand(rho) - rho) / D.
  Int per_period = 0;
  for (const auto& t : q.tasks) per_period = checked_add(per_period, checked_mul(t.c, m / t.p));
  const Int D = checked_sub(m, per_period);
  if (D <= 0) fail(ErrorKind::InternalInvariantViolated, "utilization check passed but D <= 0");

  std::optional<Int> best;
  for (Int rho = 0; rho < m; ++rho) {
    const Int excess = demand(q, rho) - rho;
    bump(ops, q.tasks.size() + 2);
    if (excess < 0 || excess % D != 0) continue;
    const Int t = checked_add(rho, checked_mul(excess / D, m));
    if (!best || t < *best) best = t;
  }
  if (!best) fail(ErrorKind::InternalInvariantViolated, "lcm scan found no fixed point");
  verify_response(q, *best);
  return *best;
}

Int response_turing(const ResponseQuery& q, const Limits& limits, OpCounter* ops) {
  validate(q);
  if (q.tasks.empty()) return q.gamma;
  // The s-range bound of Mix(I, k) does not depend on k.
  const Int S = s_search_bound(build_mix_for_k(q, 0), limits);

  if (S >= q.gamma && decide_large_k(q, S, limits, ops).yes) {
    for (Int t = q.gamma; t < S; ++t) {
      bump(ops, q.tasks.size());
      if (is_feasible_time(q, t)) {
        verify_response(q, t);
        return t;
      }
    }
    verify_response(q, S);
    return S;
  }

  const Int lo = std::max(checked_add(S, 1), lower_bound_ceil(q));
  const Int hi = search_upper_bound(q, limits);
  if (lo > hi) fail(ErrorKind::InternalInvariantViolated, "empty search interval above S");
  const Int r = least_true(lo, hi, [&](Int k) { return decide_large_k(q, k, limits, ops).yes; });
  verify_response(q, r);
  return r;
}

Int response_jitter_free(const ResponseQuery& q, const Limits& limits, OpCounter* ops) {
  validate(q);
  for (const auto& t : q.tasks)
    require(t.jitter == 0, ErrorKind::PreconditionViolated, "jitter-free algorithm needs zero jitter");
  if (q.tasks.empty()) return q.gamma;
  const bool harmonic = is_harmonic(periods(q.tasks));

  // With zero jitter (s = k, x = 0) is feasible for Mix(I, k) and no s > k does
  // better, so every k is a valid probe.
  auto probe = [&](Int k) {
    const MixInstance inst = build_mix_for_k(q, k);
    if (ops) ++ops->probes;
    const MixSolution sol = harmonic ? solve_harmonic(inst, ops) : solve_bruteforce_upto(inst, k, ops);
    return sol.objective <= checked_sub(k, q.gamma);
  };
  const Int r = least_true(lower_bound_ceil(q), search_upper_bound(q, limits), probe);
  verify_response(q, r);
  return r;
}

}  // namespace rtmix
