#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rtmix/rational.hpp"
#include "rtmix/task.hpp"

namespace rtmix {

/// Interval [ell, u] that contains the response time of the analysed task.
///
///   ell = (c_n + sum jitter_i c_i / p_i) / (1 - U)
///   u1  = ell + (sum c_i) / (1 - U)
///   u2  = ceil(sum_{i<=n} c_i / ((1 - U) m)) * m,   m = lcm of higher periods
///
/// with U the higher-priority utilization. u = min(ceil(u1), u2) is the
/// integral bound used by searches.
struct BoundsResult {
  Rational ell;
  Rational u1;
  Int u2 = 0;
  Int u = 0;
  Int lcm_higher = 1;

  Int ell_ceil() const;
};

/// Bounds for an interference set plus the analysed task's cost.
BoundsResult response_bounds(std::span<const Task> higher, Int last_cost,
                             const Limits& limits = {});
BoundsResult response_bounds(const TaskSystem& ts, const Limits& limits = {});

/// Jitter-free bounds c_n / (1 - U) <= r_n <= P with P the full hyperperiod.
std::pair<Rational, Int> jitter_free_bounds(const TaskSystem& ts, const Limits& limits = {});

struct CertifiedInequality {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool applies = true;  // false when the premise does not hold
  bool holds = true;
};

struct IntervalCertificates {
  std::vector<CertifiedInequality> checks;
};

/// Checks u1 - ell <= p_max^n always, and u1 - ell <= p_max^2, u1 <= 2 p_max^2
/// under the schedulability utilization bound. Raises InternalInvariantViolated
/// when an applicable inequality fails.
IntervalCertificates interval_width_certificates(const TaskSystem& ts, const Limits& limits = {});

}  // namespace rtmix
