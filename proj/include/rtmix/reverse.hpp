#pragma once

#include <vector>

#include "rtmix/mixing.hpp"
#include "rtmix/rta.hpp"

namespace rtmix {

/// Moves every right-hand side into [m, m + a_i) with m = lcm(a):
/// b'_i = b_i + offset_i a_i, offset_i = ceil((m - b_i) / a_i).
struct ShiftRecord {
  Int m = 1;
  std::vector<Int> offsets;
  Int objective_correction = 0;  // sum w_i offset_i
  MixInstance shifted;
};

ShiftRecord make_shift(const MixInstance& inst, const Limits& limits = {});

/// lcm(a) <= b_i <= b_min + a_i for every term.
bool is_crowded(const MixInstance& inst, const Limits& limits = {});

/// Mix <= k, decided by comparing response(I, beta - k) to beta for the task
/// set with costs w_i, periods a_i and jitters b_i - beta. Requires w0 = 1,
/// 0 <= b_i - beta <= a_i and beta >= s_search_bound. For k >= beta the
/// query has gamma <= 0 and is answered by a bounded fixed-point search.
bool mix_leq_via_rtc(const MixInstance& inst, Int beta, Int k, const Limits& limits = {},
                     OpCounter* ops = nullptr);

/// Crowded right-hand sides: beta = b_min, binary search over k in [0, b_max].
MixSolution solve_crowded(const MixInstance& inst, const Limits& limits = {}, OpCounter* ops = nullptr);

/// Any bounded instance with w0 = 1: shift into crowded form and undo the shift.
MixSolution solve_general_via_shift(const MixInstance& inst, const Limits& limits = {},
                                    OpCounter* ops = nullptr);

/// All b_i = beta, with beta >= max a (harmonic) or beta >= lcm(a) (otherwise).
MixSolution solve_constant_beta(const MixInstance& inst, Int beta, const Limits& limits = {},
                                OpCounter* ops = nullptr);

enum class ReversePath { Crowded, ConstantBeta, Shift };

/// Crowded when applicable, then constant beta, then the shift.
MixSolution solve_via_rtc(const MixInstance& inst, const Limits& limits = {}, OpCounter* ops = nullptr,
                          ReversePath* path = nullptr);

}  // namespace rtmix
