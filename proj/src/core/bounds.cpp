#include "rtmix/bounds.hpp"

#include <algorithm>

namespace rtmix {

Int BoundsResult::ell_ceil() const { return to_int(ell.ceil()); }

BoundsResult response_bounds(std::span<const Task> higher, Int last_cost, const Limits& limits) {
  const Rational U = utilization(higher);
  if (U >= Rational(1))
    fail(ErrorKind::UtilizationExceeded, "higher-priority utilization " + U.str() + " >= 1");
  const Rational slack = Rational(1) - U;

  Rational jitter_load;
  Int sum_higher = 0;
  for (const auto& t : higher) {
    jitter_load += Rational(t.jitter, t.p) * Rational(t.c);
    sum_higher = checked_add(sum_higher, t.c);
  }

  BoundsResult b;
  b.lcm_higher = lcm(periods(higher), limits);
  b.ell = (Rational(last_cost) + jitter_load) / slack;
  b.u1 = b.ell + Rational(sum_higher) / slack;

  const Int sum_all = checked_add(sum_higher, last_cost);
  const BigInt blocks = (Rational(sum_all) / (slack * Rational(b.lcm_higher))).ceil();
  b.u2 = to_int(blocks * Rational::to_mpz(b.lcm_higher), limits);
  b.u = std::min(to_int(b.u1.ceil(), limits), b.u2);
  return b;
}

BoundsResult response_bounds(const TaskSystem& ts, const Limits& limits) {
  require(!ts.tasks.empty(), ErrorKind::InvalidInstance, "task system is empty");
  return response_bounds(ts.higher(), ts.last().c, limits);
}

std::pair<Rational, Int> jitter_free_bounds(const TaskSystem& ts, const Limits& limits) {
  require(!ts.tasks.empty(), ErrorKind::InvalidInstance, "task system is empty");
  for (const auto& t : ts.tasks)
    require(t.jitter == 0, ErrorKind::PreconditionViolated, "jitter-free bounds need zero jitter");
  const Rational U = utilization(ts.higher());
  if (U >= Rational(1))
    fail(ErrorKind::UtilizationExceeded, "higher-priority utilization " + U.str() + " >= 1");
  const Rational lower = Rational(ts.last().c) / (Rational(1) - U);
  return {lower, lcm(periods(ts.tasks), limits)};
}

IntervalCertificates interval_width_certificates(const TaskSystem& ts, const Limits& limits) {
  const BoundsResult b = response_bounds(ts, limits);
  Int p_max = 0;
  for (const auto& t : ts.tasks) p_max = std::max(p_max, t.p);
  const bool sched = utilization(ts, false) <= Rational(1);

  BigInt p_pow_n;
  mpz_pow_ui(p_pow_n.get_mpz_t(), Rational::to_mpz(p_max).get_mpz_t(),
             static_cast<unsigned long>(ts.size()));
  const Rational p_sq = Rational(p_max) * Rational(p_max);
  const Rational width = b.u1 - b.ell;

  IntervalCertificates out;
  out.checks.push_back({"u1 - ell <= p_max^n", width, Rational(p_pow_n), true, width <= Rational(p_pow_n)});
  out.checks.push_back({"u1 - ell <= p_max^2", width, p_sq, sched, width <= p_sq});
  out.checks.push_back({"u1 <= 2 p_max^2", b.u1, Rational(2) * p_sq, sched, b.u1 <= Rational(2) * p_sq});

  for (const auto& c : out.checks)
    if (c.applies && !c.holds)
      fail(ErrorKind::InternalInvariantViolated,
           "certificate '" + c.name + "' failed: " + c.lhs.str() + " > " + c.rhs.str());
  return out;
}

}  // namespace rtmix
