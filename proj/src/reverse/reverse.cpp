#include "rtmix/reverse.hpp"

#include <algorithm>
#include <string>

namespace rtmix {

namespace {

void require_unit_w0(const MixInstance& inst) {
  validate(inst);
  require(inst.w0 == 1, ErrorKind::PreconditionViolated,
          "response-time reductions need w0 = 1, got " + std::to_string(inst.w0));
}

/// Interfering tasks for the encoding; terms with zero weight contribute nothing.
std::vector<Task> encode_tasks(const MixInstance& inst, Int beta) {
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < inst.terms.size(); ++i) {
    const auto& t = inst.terms[i];
    const Int jitter = checked_sub(t.b, beta);
    require(0 <= jitter && jitter <= t.a, ErrorKind::PreconditionViolated,
            "term " + std::to_string(i) + ": b - beta = " + std::to_string(jitter) + " is outside [0, a]");
    if (t.w > 0) tasks.push_back({t.w, std::nullopt, t.a, jitter});
  }
  return tasks;
}

/// Least t in [0, limit] with t >= gamma + sum c ceil((t + jitter) / p), any
/// sign of gamma. Kleene iteration of t <- max(0, demand(t)) from 0.
std::optional<Int> bounded_response(const ResponseQuery& q, Int limit, OpCounter* ops) {
  Int t = 0;
  while (t <= limit) {
    const Int next = std::max<Int>(0, demand(q, t));
    bump(ops, q.tasks.size());
    if (next <= t) return t;
    t = next;
  }
  return std::nullopt;
}

/// response(I, gamma) if it is at most `limit`.
std::optional<Int> response_upto(const ResponseQuery& q, Int limit, const Limits& limits, OpCounter* ops) {
  if (q.gamma <= 0) return bounded_response(q, limit, ops);
  if (utilization(q.tasks) >= Rational(1)) return std::nullopt;  // demand(t) >= gamma + t
  const Int r = compute_response(q, Algorithm::Auto, limits, ops);
  if (r > limit) return std::nullopt;
  return r;
}

/// Least k in [lo, hi] with mix_leq_via_rtc true; hi must pass.
Int least_k(const MixInstance& inst, Int beta, Int lo, Int hi, const Limits& limits, OpCounter* ops) {
  while (lo < hi) {
    const Int mid = lo + (hi - lo) / 2;
    if (mix_leq_via_rtc(inst, beta, mid, limits, ops))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

/// The optimal t of the dual is the response at gamma = beta - objective;
/// s = beta - t then attains the objective.
MixSolution witness(const MixInstance& inst, Int beta, Int objective, const Limits& limits, OpCounter* ops) {
  ResponseQuery q{encode_tasks(inst, beta), checked_sub(beta, objective)};
  const auto t = response_upto(q, beta, limits, ops);
  if (!t) fail(ErrorKind::InternalInvariantViolated, "no dual witness at the optimal objective");
  MixSolution sol = complete(beta - *t, inst);
  if (sol.objective != objective)
    fail(ErrorKind::InternalInvariantViolated,
         "witness s=" + std::to_string(sol.s) + " attains " + std::to_string(sol.objective) +
             ", expected " + std::to_string(objective));
  return sol;
}

}  // namespace

ShiftRecord make_shift(const MixInstance& inst, const Limits& limits) {
  validate(inst);
  ShiftRecord rec;
  rec.m = lcm(inst.capacities(), limits);
  rec.shifted.w0 = inst.w0;
  for (const auto& t : inst.terms) {
    const Int off = ceil_div(checked_sub(rec.m, t.b), t.a);
    rec.offsets.push_back(off);
    rec.objective_correction = checked_add(rec.objective_correction, checked_mul(t.w, off));
    rec.shifted.terms.push_back({t.w, t.a, checked_add(t.b, checked_mul(off, t.a))});
  }
  return rec;
}

bool is_crowded(const MixInstance& inst, const Limits& limits) {
  validate(inst);
  if (inst.terms.empty()) return true;
  const Int m = lcm(inst.capacities(), limits);
  Int b_min = inst.terms.front().b;
  for (const auto& t : inst.terms) b_min = std::min(b_min, t.b);
  return std::all_of(inst.terms.begin(), inst.terms.end(), [&](const MixTerm& t) {
    return m <= t.b && t.b - b_min <= t.a;
  });
}

bool mix_leq_via_rtc(const MixInstance& inst, Int beta, Int k, const Limits& limits, OpCounter* ops) {
  require_unit_w0(inst);
  ResponseQuery q{encode_tasks(inst, beta), checked_sub(beta, k)};
  if (is_unbounded(inst)) fail(ErrorKind::Unbounded, "sum w_i/a_i exceeds w0");
  const Int S = s_search_bound(inst, limits);
  if (beta < S)
    fail(ErrorKind::PreconditionKTooSmall,
         "beta=" + std::to_string(beta) + " is below the certified bound S=" + std::to_string(S));
  return response_upto(q, beta, limits, ops).has_value();
}

MixSolution solve_crowded(const MixInstance& inst, const Limits& limits, OpCounter* ops) {
  require_unit_w0(inst);
  if (is_unbounded(inst)) fail(ErrorKind::Unbounded, "sum w_i/a_i exceeds w0");
  require(is_crowded(inst, limits), ErrorKind::PreconditionViolated,
          "right-hand sides are not crowded: need lcm <= b_i <= b_min + a_i");
  if (inst.terms.empty()) return complete(0, inst);
  Int beta = inst.terms.front().b, b_max = beta;
  for (const auto& t : inst.terms) {
    beta = std::min(beta, t.b);
    b_max = std::max(b_max, t.b);
  }
  // s = b_max with x <= 0 has value at most b_max; with b >= lcm > 0 every
  // objective is nonnegative.
  const Int k = least_k(inst, beta, 0, b_max, limits, ops);
  return witness(inst, beta, k, limits, ops);
}

MixSolution solve_general_via_shift(const MixInstance& inst, const Limits& limits, OpCounter* ops) {
  require_unit_w0(inst);
  if (is_unbounded(inst)) fail(ErrorKind::Unbounded, "sum w_i/a_i exceeds w0");
  const ShiftRecord rec = make_shift(inst, limits);
  const MixSolution shifted = solve_crowded(rec.shifted, limits, ops);
  MixSolution sol = complete(shifted.s, inst);
  if (sol.objective != checked_sub(shifted.objective, rec.objective_correction))
    fail(ErrorKind::InternalInvariantViolated, "shift correction does not reproduce the objective");
  return sol;
}

MixSolution solve_constant_beta(const MixInstance& inst, Int beta, const Limits& limits, OpCounter* ops) {
  require_unit_w0(inst);
  for (const auto& t : inst.terms)
    require(t.b == beta, ErrorKind::PreconditionViolated, "right-hand sides are not all equal to beta");
  if (is_unbounded(inst)) fail(ErrorKind::Unbounded, "sum w_i/a_i exceeds w0");
  const auto caps = inst.capacities();
  if (is_harmonic(caps)) {
    const Int a_max = caps.empty() ? 0 : *std::max_element(caps.begin(), caps.end());
    require(beta >= a_max, ErrorKind::PreconditionViolated, "beta must be at least max a for harmonic capacities");
  } else {
    require(beta >= lcm(caps, limits), ErrorKind::PreconditionViolated, "beta must be at least lcm(a)");
  }
  // (s = beta, x = 0) has value beta
  const Int k = least_k(inst, beta, 0, beta, limits, ops);
  return witness(inst, beta, k, limits, ops);
}

MixSolution solve_via_rtc(const MixInstance& inst, const Limits& limits, OpCounter* ops, ReversePath* path) {
  require_unit_w0(inst);
  auto set = [&](ReversePath p) {
    if (path) *path = p;
  };
  if (is_crowded(inst, limits)) {
    set(ReversePath::Crowded);
    return solve_crowded(inst, limits, ops);
  }
  const auto caps = inst.capacities();
  const bool equal_b = std::all_of(inst.terms.begin(), inst.terms.end(),
                                   [&](const MixTerm& t) { return t.b == inst.terms.front().b; });
  if (equal_b) {
    const Int beta = inst.terms.front().b;
    const Int need = is_harmonic(caps) ? *std::max_element(caps.begin(), caps.end()) : lcm(caps, limits);
    if (beta >= need) {
      set(ReversePath::ConstantBeta);
      return solve_constant_beta(inst, beta, limits, ops);
    }
  }
  set(ReversePath::Shift);
  return solve_general_via_shift(inst, limits, ops);
}

}  // namespace rtmix
