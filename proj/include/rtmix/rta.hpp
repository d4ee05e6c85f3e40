#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtmix/bounds.hpp"
#include "rtmix/mixing.hpp"
#include "rtmix/stats.hpp"
#include "rtmix/task.hpp"

namespace rtmix {

/// response(I, gamma) = min{ t >= 0 | t >= gamma + sum_{i in I} c_i ceil((t + jitter_i) / p_i) }.
/// `tasks` holds the members of I; their order is irrelevant to the value.
struct ResponseQuery {
  std::vector<Task> tasks;
  Int gamma = 1;

  /// I = all tasks with higher priority than `index`, gamma = c_index.
  static ResponseQuery for_task(const TaskSystem& ts, std::size_t index);
  /// I = the listed tasks of ts, with an explicit gamma.
  static ResponseQuery of(const TaskSystem& ts, const std::vector<std::size_t>& members, Int gamma);
};

/// gamma >= 1, every member valid, utilization over I < 1.
void validate(const ResponseQuery& q);

/// gamma + sum c_i ceil((t + jitter_i) / p_i).
Int demand(const ResponseQuery& q, Int t);
bool is_feasible_time(const ResponseQuery& q, Int t);

/// Bounds of the query viewed as a task system whose last task has cost gamma.
BoundsResult query_bounds(const ResponseQuery& q, const Limits& limits = {});

/// Integer upper bound on the response: min(ceil(u1), u2), falling back to
/// ceil(u1) alone when the lcm of I exceeds the cap.
Int search_upper_bound(const ResponseQuery& q, const Limits& limits = {});

/// Fixed-point iteration t <- demand(t) from t = gamma.
Int response_bruteforce(const ResponseQuery& q, const Limits& limits = {}, OpCounter* ops = nullptr);

/// Mix(I, k): w0 = 1 and one term (c_i, p_i, k + jitter_i) per member.
MixInstance build_mix_for_k(const ResponseQuery& q, Int k);

struct DecisionOutcome {
  bool yes = false;
  Int k = 0;
  std::optional<MixSolution> certificate;
};

/// Decides response(I, gamma) <= k through Mix(I, k) <= k - gamma. Requires
/// k >= s_search_bound of Mix(I, k); raises PreconditionKTooSmall otherwise.
DecisionOutcome decide_large_k(const ResponseQuery& q, Int k, const Limits& limits = {},
                               OpCounter* ops = nullptr);

/// Value of ceil((t + jitter) / p) forced for 0 < t <= p: 1 if t <= p - jitter, else 2.
int two_values(Int p, Int jitter, Int t);
int two_values(const ResponseQuery& q, std::size_t i, Int t);

/// One feasibility probe made by narrow or catch_search. For t in
/// [window_lo, window_hi] the members in `ones` are charged once and those in
/// `twos` twice; `residual` goes through the mixing solver.
struct NarrowProbe {
  enum class Phase { Narrow, Catch } phase = Phase::Narrow;
  Int k = 0;
  Int window_lo = 0;
  Int window_hi = 0;
  Int gamma = 0;
  std::vector<std::size_t> ones;
  std::vector<std::size_t> twos;
  std::vector<std::size_t> residual;
  bool feasible = false;
};

using ProbeTrace = std::vector<NarrowProbe>;

/// Harmonic periods only. Walks the sorted distinct nonzero p_j - jitter_j
/// below the upper bound, then hands the bracketing interval to catch_search.
Int narrow(const ResponseQuery& q, OpCounter* ops = nullptr, ProbeTrace* trace = nullptr);

/// Binary search for the response on [lo, hi]; requires the response to lie
/// in the interval and no p_j - jitter_j in [lo, hi).
Int catch_search(const ResponseQuery& q, Int lo, Int hi, OpCounter* ops = nullptr,
                 ProbeTrace* trace = nullptr);

/// narrow() plus a feasibility re-check of the result and its predecessor.
Int response_harmonic(const ResponseQuery& q, OpCounter* ops = nullptr, ProbeTrace* trace = nullptr);

/// Scans residues rho modulo m = lcm(I) and solves for the period count in closed form.
Int response_lcm_scan(const ResponseQuery& q, const Limits& limits = {}, OpCounter* ops = nullptr);

/// Decides at k = S; scans [gamma, S] on yes, else binary-searches (S, u].
Int response_turing(const ResponseQuery& q, const Limits& limits = {}, OpCounter* ops = nullptr);

/// Zero jitter only: binary search over [ceil(ell), u] with Mix(I, k) solved on s in [0, k].
Int response_jitter_free(const ResponseQuery& q, const Limits& limits = {}, OpCounter* ops = nullptr);

/// Raises InternalInvariantViolated unless r is feasible and r - 1 is not.
void verify_response(const ResponseQuery& q, Int r);

enum class Algorithm { Auto, Bruteforce, Harmonic, LcmScan, Turing, JitterFree };

std::string to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(const std::string& name);

/// Runs the selected algorithm. Auto picks harmonic, then jitter-free, then
/// Turing. Returns the algorithm actually used through `used`.
Int compute_response(const ResponseQuery& q, Algorithm algorithm, const Limits& limits = {},
                     OpCounter* ops = nullptr, Algorithm* used = nullptr);

struct TaskReport {
  std::size_t index = 0;
  Int response = 0;
  Algorithm algorithm = Algorithm::Auto;
  std::optional<Int> deadline_budget;  // d - jitter when d is given
  std::optional<bool> schedulable;
  std::optional<BoundsResult> bounds;  // absent when the lcm exceeds the cap
};

struct SystemReport {
  std::vector<TaskReport> tasks;
  /// Conjunction of the per-task verdicts; empty when some deadline is missing.
  std::optional<bool> schedulable;
};

/// r_j = response([0, j), c_j) for every task j, schedulable iff r_j <= d_j - jitter_j.
SystemReport analyze_system(const TaskSystem& ts, Algorithm algorithm = Algorithm::Auto,
                            const Limits& limits = {}, OpCounter* ops = nullptr);

}  // namespace rtmix
