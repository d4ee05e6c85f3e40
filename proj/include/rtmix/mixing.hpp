#pragma once

#include <optional>
#include <vector>

#include "rtmix/arith.hpp"
#include "rtmix/rational.hpp"
#include "rtmix/stats.hpp"

namespace rtmix {

/// One constraint s + a x >= b with objective weight w on x.
struct MixTerm {
  Int w = 0;
  Int a = 1;
  Int b = 0;

  friend bool operator==(const MixTerm&, const MixTerm&) = default;
};

/// min w0 s + sum w_i x_i  s.t.  s + a_i x_i >= b_i,  s in Z>=0,  x in Z^n.
struct MixInstance {
  Int w0 = 1;
  std::vector<MixTerm> terms;

  std::vector<Int> capacities() const;
  friend bool operator==(const MixInstance&, const MixInstance&) = default;
};

struct MixSolution {
  Int s = 0;
  std::vector<Int> x;
  Int objective = 0;

  friend bool operator==(const MixSolution&, const MixSolution&) = default;
};

void validate(const MixInstance& inst);

/// Canonical completion x_i = ceil((b_i - s) / a_i), the pointwise-minimal
/// feasible x for a fixed s.
MixSolution complete(Int s, const MixInstance& inst);

/// Objective of the canonical completion without materialising x.
Int evaluate(Int s, const MixInstance& inst);

bool is_feasible(const MixSolution& sol, const MixInstance& inst);

/// sum w_i / a_i.
Rational weight_load(const MixInstance& inst);

/// True iff sum w_i / a_i > w0.
bool is_unbounded(const MixInstance& inst);

/// Integer S such that some optimal solution has s <= S: lcm(a) - 1, tightened
/// by ceil(sum w_i / (w0 - sum w_i / a_i)) when that load is strictly below w0.
/// An over-cap lcm is tolerated when the load bound is available.
Int s_search_bound(const MixInstance& inst, const Limits& limits = {});

/// Enumerates complete(s) for s in [0, s_search_bound]; smallest s wins ties.
MixSolution solve_bruteforce(const MixInstance& inst, const Limits& limits = {},
                             OpCounter* ops = nullptr);

/// Same enumeration, restricted to s in [0, s_max].
MixSolution solve_bruteforce_upto(const MixInstance& inst, Int s_max, OpCounter* ops = nullptr);

/// Second exact method: evaluates only the local minima s = 0 and
/// s = b_i mod a_i (+ multiples of a_i) below lcm, plus lcm - 1.
MixSolution solve_breakpoints(const MixInstance& inst, const Limits& limits = {});

/// Exact solver for harmonic capacities. Runs a digit-by-digit fold over the
/// divisibility chain; cost is polynomial in the number of terms and
/// independent of the magnitudes of a, b and w.
MixSolution solve_harmonic(const MixInstance& inst, OpCounter* ops = nullptr);

/// Harmonic solver when the capacities allow it, otherwise brute force.
MixSolution solve(const MixInstance& inst, const Limits& limits = {}, OpCounter* ops = nullptr);

struct ShiftCheck {
  Int s = 0;
  Int m = 0;
  bool forward_checked = false;
  bool backward_checked = false;
};

/// Verifies x(s + m) = x(s) - m/a and, when s >= m, x(s - m) = x(s) + m/a for
/// m = lcm(a). Raises InternalInvariantViolated on mismatch.
ShiftCheck shift_identity_check(const MixInstance& inst, Int s, const Limits& limits = {});

}  // namespace rtmix
