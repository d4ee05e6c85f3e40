#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rtmix/arith.hpp"
#include "rtmix/task.hpp"

namespace rtmix {

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

/// min w^T x  s.t.  a^T x >= b0,  B_i x^(0) + A_i x^(i) = b_i (i = 1..n),  0 <= x <= u,
/// where x = (x^(0), x^(1), ..., x^(n)) has bricks of size s, t, ..., t and
/// a = (D, C_1, ..., C_n) is the single coupling row. The objective touches
/// brick 0 and brick `objective_brick` only.
struct SimpleFourBlock {
  int r = 0, s = 0, t = 0, q = 1, n = 0;
  IntMatrix D;               // q x s
  std::vector<IntMatrix> C;  // n of q x t
  std::vector<IntMatrix> B;  // n of r x s
  std::vector<IntMatrix> A;  // n of r x t
  IntVector w;               // s + n t
  int objective_brick = 1;   // 1..n
  Int b0 = 0;
  IntVector b;               // n r
  IntVector u;               // s + n t

  IntVector coupling_row() const;
};

/// Throws MalformedBlocks on any dimension or structure violation.
void validate(const SimpleFourBlock& p);

/// Block of a 2-stage program: rows B x0 + A xi = rhs, 0 <= xi <= upper,
/// objective a^T xi.
struct StageBlock {
  IntMatrix B;
  IntMatrix A;
  IntVector rhs;
  IntVector upper;
  IntVector objective;
};

/// max a0^T x0 + sum a_i^T x_i over the blocks, 0 <= x0 <= upper0.
struct TwoStageProgram {
  IntVector objective0;
  IntVector upper0;
  std::vector<StageBlock> blocks;
  std::size_t slack_block = 0;  // block carrying w^T x + y = k
};

/// Adds the row (w^(0) | w^(j), 1) with right-hand side k to block j, the
/// extra column being the slack y in [0, max(0, k)].
TwoStageProgram transform_to_2stage(const SimpleFourBlock& p, Int k);

struct DeskOptions {
  std::uint64_t node_budget = 50'000'000;
};

struct DeskResult {
  std::optional<Int> value;  // empty = infeasible
  std::uint64_t nodes = 0;
};

/// Exact maximum by enumerating the first stage and running a bounded
/// depth-first search per block with interval pruning. BudgetExceeded once
/// the node count passes the budget.
DeskResult solve_2stage_desk(const TwoStageProgram& tp, const DeskOptions& opt = {});

/// sum |w_i| u_i, which bounds |w^T x| over the box.
Int default_objective_bound(const SimpleFourBlock& p);

struct FourBlockResult {
  Int value = 0;
  std::uint64_t nodes = 0;
  int probes = 0;
};

/// Least k in [-H, H] whose 2-stage maximum reaches b0. Infeasible when none does.
FourBlockResult solve_simple_4block(const SimpleFourBlock& p, std::optional<Int> H = std::nullopt,
                                    const DeskOptions& opt = {});

/// The response-time program min{ t | A x >= b, x >= 0 } for a jitter-free
/// system, with first row (1, -c_1, ..., -c_{n-1}) | c_n and rows
/// (-1, 0.., p_i, ..0) | 0.
std::pair<IntMatrix, IntVector> rtc_constraint_matrix(const TaskSystem& ts);

/// The same program as a simple 4-block instance: brick 0 holds t, brick i
/// holds (x_i, z_i) with -t + p_i x_i - z_i = 0, the coupling row is
/// t - sum c_i x_i >= c_n, and the objective is t. Boxes come from the
/// response bounds; z_i <= p_i - 1 pins x_i to ceil(t / p_i).
SimpleFourBlock encode_rtc_as_4block(const TaskSystem& ts);

}  // namespace rtmix
