#include "rtmix/mixing.hpp"

#include <algorithm>
#include <string>

namespace rtmix {

std::vector<Int> MixInstance::capacities() const {
  std::vector<Int> a;
  a.reserve(terms.size());
  for (const auto& t : terms) a.push_back(t.a);
  return a;
}

void validate(const MixInstance& inst) {
  require(inst.w0 >= 0, ErrorKind::InvalidInstance, "w0 must be nonnegative");
  for (std::size_t i = 0; i < inst.terms.size(); ++i) {
    const auto& t = inst.terms[i];
    require(t.a >= 1, ErrorKind::InvalidInstance, "term " + std::to_string(i) + ": a >= 1 violated");
    require(t.w >= 0, ErrorKind::InvalidInstance, "term " + std::to_string(i) + ": w >= 0 violated");
  }
}

Int evaluate(Int s, const MixInstance& inst) {
  __int128 obj = static_cast<__int128>(inst.w0) * s;
  for (const auto& t : inst.terms)
    obj += static_cast<__int128>(t.w) * ceil_div(checked_sub(t.b, s), t.a);
  if (obj > std::numeric_limits<Int>::max() || obj < std::numeric_limits<Int>::min())
    fail(ErrorKind::OverflowLimit, "mixing objective overflows");
  return static_cast<Int>(obj);
}

MixSolution complete(Int s, const MixInstance& inst) {
  require(s >= 0, ErrorKind::PreconditionViolated, "s must be nonnegative");
  MixSolution sol;
  sol.s = s;
  sol.x.reserve(inst.terms.size());
  for (const auto& t : inst.terms) sol.x.push_back(ceil_div(checked_sub(t.b, s), t.a));
  sol.objective = evaluate(s, inst);
  return sol;
}

bool is_feasible(const MixSolution& sol, const MixInstance& inst) {
  if (sol.s < 0 || sol.x.size() != inst.terms.size()) return false;
  for (std::size_t i = 0; i < inst.terms.size(); ++i) {
    const auto& t = inst.terms[i];
    if (static_cast<__int128>(sol.s) + static_cast<__int128>(t.a) * sol.x[i] < t.b) return false;
  }
  return true;
}

Rational weight_load(const MixInstance& inst) {
  Rational load;
  for (const auto& t : inst.terms) load += Rational(t.w, t.a);
  return load;
}

bool is_unbounded(const MixInstance& inst) { return weight_load(inst) > Rational(inst.w0); }

Int s_search_bound(const MixInstance& inst, const Limits& limits) {
  validate(inst);
  require(!is_unbounded(inst), ErrorKind::Unbounded, "sum w_i/a_i exceeds w0");

  std::optional<Int> bound;
  std::string lcm_error;
  try {
    bound = lcm(inst.capacities(), limits) - 1;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::OverflowLimit) throw;
    lcm_error = e.what();
  }

  const Rational load = weight_load(inst);
  if (inst.w0 >= 1 && load < Rational(inst.w0)) {
    Int sum_w = 0;
    for (const auto& t : inst.terms) sum_w = checked_add(sum_w, t.w);
    const Int by_load = to_int((Rational(sum_w) / (Rational(inst.w0) - load)).ceil(), limits);
    bound = bound ? std::min(*bound, by_load) : by_load;
  }
  if (!bound) fail(ErrorKind::OverflowLimit, "no s bound below the cap: " + lcm_error);
  return *bound;
}

namespace {

void post_check(const MixSolution& sol, const MixInstance& inst) {
  if (!is_feasible(sol, inst))
    fail(ErrorKind::InternalInvariantViolated, "solver returned an infeasible mixing solution");
}

}  // namespace

MixSolution solve_bruteforce_upto(const MixInstance& inst, Int s_max, OpCounter* ops) {
  validate(inst);
  require(s_max >= 0, ErrorKind::PreconditionViolated, "s range is empty");
  Int best_s = 0;
  Int best = evaluate(0, inst);
  for (Int s = 1; s <= s_max; ++s) {
    const Int f = evaluate(s, inst);
    bump(ops, inst.terms.size() + 1);
    if (f < best) {
      best = f;
      best_s = s;
    }
  }
  if (ops) ++ops->mix_solves;
  MixSolution sol = complete(best_s, inst);
  post_check(sol, inst);
  return sol;
}

MixSolution solve_bruteforce(const MixInstance& inst, const Limits& limits, OpCounter* ops) {
  validate(inst);
  if (is_unbounded(inst)) fail(ErrorKind::Unbounded, "sum w_i/a_i exceeds w0");
  return solve_bruteforce_upto(inst, s_search_bound(inst, limits), ops);
}

MixSolution solve_breakpoints(const MixInstance& inst, const Limits& limits) {
  validate(inst);
  if (is_unbounded(inst)) fail(ErrorKind::Unbounded, "sum w_i/a_i exceeds w0");
  const Int m = lcm(inst.capacities(), limits);

  std::vector<Int> candidates{0, m - 1};
  for (const auto& t : inst.terms)
    for (Int s = mod_floor(t.b, t.a); s < m; s += t.a) candidates.push_back(s);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  Int best_s = candidates.front();
  Int best = evaluate(best_s, inst);
  for (Int s : candidates) {
    const Int f = evaluate(s, inst);
    if (f < best) {
      best = f;
      best_s = s;
    }
  }
  MixSolution sol = complete(best_s, inst);
  post_check(sol, inst);
  return sol;
}

MixSolution solve(const MixInstance& inst, const Limits& limits, OpCounter* ops) {
  if (is_harmonic(inst.capacities())) return solve_harmonic(inst, ops);
  return solve_bruteforce(inst, limits, ops);
}

ShiftCheck shift_identity_check(const MixInstance& inst, Int s, const Limits& limits) {
  validate(inst);
  require(s >= 0, ErrorKind::PreconditionViolated, "s must be nonnegative");
  ShiftCheck rep;
  rep.s = s;
  rep.m = lcm(inst.capacities(), limits);
  const MixSolution base = complete(s, inst);

  auto check = [&](Int shifted, Int sign) {
    const MixSolution other = complete(shifted, inst);
    for (std::size_t i = 0; i < inst.terms.size(); ++i) {
      const Int expect = base.x[i] - sign * (rep.m / inst.terms[i].a);
      if (other.x[i] != expect)
        fail(ErrorKind::InternalInvariantViolated,
             "shift identity broken at term " + std::to_string(i) + " for s=" + std::to_string(s));
    }
  };
  check(checked_add(s, rep.m), 1);
  rep.forward_checked = true;
  if (s >= rep.m) {
    check(s - rep.m, -1);
    rep.backward_checked = true;
  }
  return rep;
}

}  // namespace rtmix
