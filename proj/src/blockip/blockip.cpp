#include "rtmix/blockip.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "rtmix/bounds.hpp"

namespace rtmix {

IntVector SimpleFourBlock::coupling_row() const {
  IntVector a(s + n * t);
  a.head(s) = D.row(0).transpose();
  for (int i = 0; i < n; ++i) a.segment(s + i * t, t) = C[static_cast<std::size_t>(i)].row(0).transpose();
  return a;
}

void validate(const SimpleFourBlock& p) {
  auto check = [](bool ok, const std::string& what) { require(ok, ErrorKind::MalformedBlocks, what); };
  check(p.r >= 0 && p.s >= 0 && p.t >= 0 && p.n >= 1, "dimensions must be nonnegative with n >= 1");
  check(p.q == 1, "exactly one coupling row is supported, got q=" + std::to_string(p.q));
  check(p.D.rows() == p.q && p.D.cols() == p.s, "D must be q x s");
  const auto nn = static_cast<std::size_t>(p.n);
  check(p.C.size() == nn && p.B.size() == nn && p.A.size() == nn, "need n blocks of C, B and A");
  for (std::size_t i = 0; i < nn; ++i) {
    const std::string at = " (block " + std::to_string(i + 1) + ")";
    check(p.C[i].rows() == p.q && p.C[i].cols() == p.t, "C must be q x t" + at);
    check(p.B[i].rows() == p.r && p.B[i].cols() == p.s, "B must be r x s" + at);
    check(p.A[i].rows() == p.r && p.A[i].cols() == p.t, "A must be r x t" + at);
  }
  const Eigen::Index len = p.s + p.n * p.t;
  check(p.w.size() == len, "w must have s + n t entries");
  check(p.u.size() == len, "u must have s + n t entries");
  check(p.b.size() == p.n * p.r, "b must have n r entries");
  check(p.objective_brick >= 1 && p.objective_brick <= p.n, "objective brick must lie in 1..n");
  check((p.u.array() >= 0).all(), "upper bounds must be nonnegative");
  check((p.w.array() >= 0).all(), "objective weights must be nonnegative");
  for (int i = 1; i <= p.n; ++i)
    if (i != p.objective_brick)
      check((p.w.segment(p.s + (i - 1) * p.t, p.t).array() == 0).all(),
            "objective must vanish outside brick 0 and brick " + std::to_string(p.objective_brick));
}

TwoStageProgram transform_to_2stage(const SimpleFourBlock& p, Int k) {
  validate(p);
  TwoStageProgram tp;
  tp.objective0 = p.D.row(0).transpose();
  tp.upper0 = p.u.head(p.s);
  const int j = p.objective_brick - 1;
  for (int i = 0; i < p.n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    StageBlock blk;
    const IntVector rhs = p.b.segment(i * p.r, p.r);
    const IntVector upper = p.u.segment(p.s + i * p.t, p.t);
    const IntVector obj = p.C[ui].row(0).transpose();
    if (i != j) {
      blk.B = p.B[ui];
      blk.A = p.A[ui];
      blk.rhs = rhs;
      blk.upper = upper;
      blk.objective = obj;
    } else {
      blk.B.resize(p.r + 1, p.s);
      blk.B.topRows(p.r) = p.B[ui];
      blk.B.row(p.r) = p.w.head(p.s).transpose();
      blk.A = IntMatrix::Zero(p.r + 1, p.t + 1);
      blk.A.topLeftCorner(p.r, p.t) = p.A[ui];
      blk.A.block(p.r, 0, 1, p.t) = p.w.segment(p.s + i * p.t, p.t).transpose();
      blk.A(p.r, p.t) = 1;
      blk.rhs.resize(p.r + 1);
      blk.rhs << rhs, k;
      blk.upper.resize(p.t + 1);
      blk.upper << upper, std::max<Int>(0, k);
      blk.objective.resize(p.t + 1);
      blk.objective << obj, 0;
      tp.slack_block = ui;
    }
    tp.blocks.push_back(std::move(blk));
  }
  return tp;
}

namespace {

class BlockSearch {
 public:
  BlockSearch(const StageBlock& blk, std::uint64_t& nodes, std::uint64_t budget)
      : blk_(blk), nodes_(nodes), budget_(budget) {
    const auto m = blk.A.cols();
    const auto rows = blk.A.rows();
    lo_ = IntMatrix::Zero(rows, m + 1);
    hi_ = IntMatrix::Zero(rows, m + 1);
    obj_hi_ = IntVector::Zero(m + 1);
    for (Eigen::Index v = m - 1; v >= 0; --v) {
      for (Eigen::Index row = 0; row < rows; ++row) {
        const Int span = blk.A(row, v) * blk.upper(v);
        lo_(row, v) = lo_(row, v + 1) + std::min<Int>(0, span);
        hi_(row, v) = hi_(row, v + 1) + std::max<Int>(0, span);
      }
      obj_hi_(v) = obj_hi_(v + 1) + std::max<Int>(0, blk.objective(v) * blk.upper(v));
    }
  }

  /// Best objective with A x = residual, or empty when infeasible.
  std::optional<Int> run(const IntVector& residual) {
    best_.reset();
    IntVector res = residual;
    if (fits(res, 0)) dfs(0, res, 0);
    return best_;
  }

 private:
  bool fits(const IntVector& res, Eigen::Index v) const {
    for (Eigen::Index row = 0; row < res.size(); ++row)
      if (res(row) < lo_(row, v) || res(row) > hi_(row, v)) return false;
    return true;
  }

  void dfs(Eigen::Index v, IntVector& res, Int obj) {
    if (++nodes_ > budget_)
      fail(ErrorKind::BudgetExceeded, "2-stage search explored " + std::to_string(nodes_) + " nodes");
    if (v == blk_.A.cols()) {
      if (!best_ || obj > *best_) best_ = obj;
      return;
    }
    for (Int x = 0; x <= blk_.upper(v); ++x) {
      const Int gain = obj + blk_.objective(v) * x;
      if (best_ && gain + obj_hi_(v + 1) <= *best_) {
        // larger x only helps when the objective coefficient is positive
        if (blk_.objective(v) <= 0) break;
        continue;
      }
      res -= blk_.A.col(v) * x;
      if (fits(res, v + 1)) dfs(v + 1, res, gain);
      res += blk_.A.col(v) * x;
    }
  }

  const StageBlock& blk_;
  std::uint64_t& nodes_;
  std::uint64_t budget_;
  IntMatrix lo_, hi_;
  IntVector obj_hi_;
  std::optional<Int> best_;
};

struct VectorLess {
  bool operator()(const IntVector& a, const IntVector& b) const {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  }
};

}  // namespace

DeskResult solve_2stage_desk(const TwoStageProgram& tp, const DeskOptions& opt) {
  DeskResult out;
  const auto s = tp.upper0.size();
  std::vector<BlockSearch> searches;
  std::vector<std::map<IntVector, std::optional<Int>, VectorLess>> memo(tp.blocks.size());
  searches.reserve(tp.blocks.size());
  for (const auto& blk : tp.blocks) searches.emplace_back(blk, out.nodes, opt.node_budget);

  IntVector x0 = IntVector::Zero(s);
  while (true) {
    if (++out.nodes > opt.node_budget)
      fail(ErrorKind::BudgetExceeded, "2-stage search explored " + std::to_string(out.nodes) + " nodes");
    std::optional<Int> total = tp.objective0.dot(x0);
    for (std::size_t i = 0; i < tp.blocks.size() && total; ++i) {
      const IntVector residual = tp.blocks[i].rhs - tp.blocks[i].B * x0;
      auto it = memo[i].find(residual);
      if (it == memo[i].end()) it = memo[i].emplace(residual, searches[i].run(residual)).first;
      if (it->second)
        *total += *it->second;
      else
        total.reset();
    }
    if (total && (!out.value || *total > *out.value)) out.value = total;

    Eigen::Index v = 0;
    while (v < s && ++x0(v) > tp.upper0(v)) x0(v++) = 0;
    if (v == s) break;
  }
  return out;
}

Int default_objective_bound(const SimpleFourBlock& p) {
  Int h = 0;
  for (Eigen::Index i = 0; i < p.w.size(); ++i) h = checked_add(h, checked_mul(std::abs(p.w(i)), p.u(i)));
  return h;
}

FourBlockResult solve_simple_4block(const SimpleFourBlock& p, std::optional<Int> H, const DeskOptions& opt) {
  validate(p);
  const Int bound = H.value_or(default_objective_bound(p));
  require(bound >= 0, ErrorKind::PreconditionViolated, "H must be nonnegative");
  FourBlockResult out;
  auto feasible = [&](Int k) {
    const DeskResult r = solve_2stage_desk(transform_to_2stage(p, k), opt);
    out.nodes += r.nodes;
    ++out.probes;
    return r.value && *r.value >= p.b0;
  };
  Int lo = -bound, hi = bound;
  if (!feasible(hi)) fail(ErrorKind::Infeasible, "no k in [-H, H] admits a feasible point");
  while (lo < hi) {
    const Int mid = lo + (hi - lo) / 2;
    if (feasible(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  out.value = lo;
  return out;
}

std::pair<IntMatrix, IntVector> rtc_constraint_matrix(const TaskSystem& ts) {
  validate(ts);
  const auto n = static_cast<Eigen::Index>(ts.size());
  IntMatrix A = IntMatrix::Zero(n, n);
  IntVector b = IntVector::Zero(n);
  A(0, 0) = 1;
  b(0) = ts.last().c;
  for (Eigen::Index i = 1; i < n; ++i) {
    const auto& task = ts[static_cast<std::size_t>(i - 1)];
    A(0, i) = -task.c;
    A(i, 0) = -1;
    A(i, i) = task.p;
  }
  return {A, b};
}

SimpleFourBlock encode_rtc_as_4block(const TaskSystem& ts) {
  validate(ts);
  for (const auto& t : ts.tasks)
    require(t.jitter == 0, ErrorKind::PreconditionViolated, "the 4-block encoding needs zero jitter");
  const Int u = response_bounds(ts).u;
  const auto higher = ts.higher();

  SimpleFourBlock p;
  p.r = 1;
  p.s = 1;
  p.t = 2;
  p.q = 1;
  p.n = std::max<int>(1, static_cast<int>(higher.size()));
  p.D = IntMatrix::Constant(1, 1, 1);
  p.w = IntVector::Zero(p.s + p.n * p.t);
  p.w(0) = 1;
  p.u = IntVector::Zero(p.s + p.n * p.t);
  p.u(0) = u;
  p.b = IntVector::Zero(p.n * p.r);
  p.b0 = ts.last().c;
  p.objective_brick = 1;
  if (higher.empty()) {
    // one inert brick with a zero box
    p.C.push_back(IntMatrix::Zero(1, 2));
    p.B.push_back(IntMatrix::Zero(1, 1));
    p.A.push_back(IntMatrix::Zero(1, 2));
    return p;
  }
  for (std::size_t i = 0; i < higher.size(); ++i) {
    const auto& task = higher[i];
    IntMatrix C(1, 2), B(1, 1), A(1, 2);
    C << -task.c, 0;
    B << -1;
    A << task.p, -1;
    p.C.push_back(C);
    p.B.push_back(B);
    p.A.push_back(A);
    const auto at = static_cast<Eigen::Index>(1 + 2 * i);
    p.u(at) = ceil_div(checked_add(u, task.p), task.p);
    p.u(at + 1) = task.p - 1;
  }
  return p;
}

}  // namespace rtmix
