#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rtmix/blockip.hpp"
#include "rtmix/rta.hpp"

using namespace rtmix;

namespace {

using Point = std::vector<Int>;

/// All box points of a 4-block instance that satisfy the block equalities.
std::vector<Point> block_feasible_points(const SimpleFourBlock& p) {
  const auto len = static_cast<std::size_t>(p.u.size());
  std::vector<Point> out;
  Point x(len, 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i < p.n && ok; ++i)
      for (int row = 0; row < p.r && ok; ++row) {
        Int lhs = 0;
        for (int c = 0; c < p.s; ++c) lhs += p.B[static_cast<std::size_t>(i)](row, c) * x[static_cast<std::size_t>(c)];
        for (int c = 0; c < p.t; ++c)
          lhs += p.A[static_cast<std::size_t>(i)](row, c) * x[static_cast<std::size_t>(p.s + i * p.t + c)];
        ok = lhs == p.b(i * p.r + row);
      }
    if (ok) out.push_back(x);
    std::size_t v = 0;
    while (v < len && ++x[v] > p.u(static_cast<Eigen::Index>(v))) x[v++] = 0;
    if (v == len) break;
  }
  return out;
}

Int dot(const IntVector& a, const Point& x) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += a(static_cast<Eigen::Index>(i)) * x[i];
  return s;
}

std::optional<Int> oracle_optimum(const SimpleFourBlock& p) {
  std::optional<Int> best;
  const IntVector a = p.coupling_row();
  for (const auto& x : block_feasible_points(p))
    if (dot(a, x) >= p.b0) {
      const Int v = dot(p.w, x);
      if (!best || v < *best) best = v;
    }
  return best;
}

/// Feasible points of the 2-stage program, projected onto the original x.
std::set<Point> two_stage_projection(const TwoStageProgram& tp, const SimpleFourBlock& p) {
  std::set<Point> out;
  std::vector<Int> upper;
  for (Eigen::Index i = 0; i < tp.upper0.size(); ++i) upper.push_back(tp.upper0(i));
  for (const auto& blk : tp.blocks)
    for (Eigen::Index i = 0; i < blk.upper.size(); ++i) upper.push_back(blk.upper(i));
  Point z(upper.size(), 0);
  while (true) {
    bool ok = true;
    std::size_t offset = static_cast<std::size_t>(tp.upper0.size());
    for (const auto& blk : tp.blocks) {
      for (Eigen::Index row = 0; row < blk.A.rows() && ok; ++row) {
        Int lhs = 0;
        for (Eigen::Index c = 0; c < blk.B.cols(); ++c) lhs += blk.B(row, c) * z[static_cast<std::size_t>(c)];
        for (Eigen::Index c = 0; c < blk.A.cols(); ++c) lhs += blk.A(row, c) * z[offset + static_cast<std::size_t>(c)];
        ok = lhs == blk.rhs(row);
      }
      offset += static_cast<std::size_t>(blk.A.cols());
    }
    if (ok) {
      Point x(z.begin(), z.begin() + p.s);
      offset = static_cast<std::size_t>(p.s);
      for (const auto& blk : tp.blocks) {
        for (int c = 0; c < p.t; ++c) x.push_back(z[offset + static_cast<std::size_t>(c)]);
        offset += static_cast<std::size_t>(blk.A.cols());
      }
      out.insert(x);
    }
    std::size_t v = 0;
    while (v < z.size() && ++z[v] > upper[v]) z[v++] = 0;
    if (v == z.size()) break;
  }
  return out;
}

SimpleFourBlock random_instance(std::mt19937_64& rng) {
  SimpleFourBlock p;
  p.r = 1;
  p.s = 1;
  p.t = 2;
  p.q = 1;
  p.n = 1 + static_cast<int>(rng() % 2);
  auto small = [&](Int lo, Int hi) { return lo + static_cast<Int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  p.D = IntMatrix::Constant(1, 1, small(-2, 2));
  for (int i = 0; i < p.n; ++i) {
    IntMatrix C(1, 2), B(1, 1), A(1, 2);
    C << small(-2, 2), small(-2, 2);
    B << small(-2, 2);
    A << small(-2, 2), small(-2, 2);
    p.C.push_back(C);
    p.B.push_back(B);
    p.A.push_back(A);
  }
  p.objective_brick = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(p.n));
  p.w = IntVector::Zero(p.s + p.n * p.t);
  p.w(0) = small(0, 3);
  p.w(p.s + (p.objective_brick - 1) * p.t) = small(0, 3);
  p.w(p.s + (p.objective_brick - 1) * p.t + 1) = small(0, 3);
  p.u = IntVector::Zero(p.s + p.n * p.t);
  for (Eigen::Index i = 0; i < p.u.size(); ++i) p.u(i) = small(0, 2);
  p.b = IntVector::Zero(p.n * p.r);
  for (Eigen::Index i = 0; i < p.b.size(); ++i) p.b(i) = small(-2, 3);
  p.b0 = small(-2, 3);
  return p;
}

}  // namespace

TEST_CASE("constraint matrix of the response-time program") {
  TaskSystem ts{{{1, std::nullopt, 2, 0}, {1, std::nullopt, 2, 0}}};
  auto [A, b] = rtc_constraint_matrix(ts);
  IntMatrix expectA(2, 2);
  expectA << 1, -1, -1, 2;
  CHECK(A == expectA);
  CHECK(b == IntVector((IntVector(2) << 1, 0).finished()));

  auto [A1, b1] = rtc_constraint_matrix(TaskSystem{{{4, std::nullopt, 9, 0}}});
  CHECK(A1.rows() == 1);
  CHECK(A1(0, 0) == 1);
  CHECK(b1(0) == 4);
}

TEST_CASE("4-block encoding and its 2-stage form") {
  TaskSystem ts{{{1, std::nullopt, 2, 0}, {1, std::nullopt, 2, 0}}};
  auto p = encode_rtc_as_4block(ts);
  CHECK_NOTHROW(validate(p));
  CHECK(p.n == 1);
  CHECK(p.coupling_row() == IntVector((IntVector(3) << 1, -1, 0).finished()));
  CHECK(p.b0 == 1);

  auto tp = transform_to_2stage(p, 2);
  REQUIRE(tp.blocks.size() == 1);
  const auto& blk = tp.blocks[0];
  IntMatrix expectA(2, 3), expectB(2, 1);
  expectA << 2, -1, 0, 0, 0, 1;
  expectB << -1, 1;
  CHECK(blk.A == expectA);
  CHECK(blk.B == expectB);
  CHECK(blk.rhs == IntVector((IntVector(2) << 0, 2).finished()));
  CHECK(blk.upper(2) == 2);

  // with t <= 2 the coupling row t - x_1 reaches 1 at t = 2
  auto desk = solve_2stage_desk(tp);
  REQUIRE(desk.value);
  CHECK(*desk.value == 1);
  CHECK(solve_simple_4block(p).value == 2);

  // k < 0 leaves no room for the slack
  CHECK_FALSE(solve_2stage_desk(transform_to_2stage(p, -1)).value);
}

TEST_CASE("desk solver on trivial programs") {
  TwoStageProgram tp;
  tp.objective0 = IntVector::Constant(1, 1);
  tp.upper0 = IntVector::Constant(1, 5);
  StageBlock blk;
  blk.B = IntMatrix::Constant(1, 1, 1);
  blk.A = IntMatrix::Zero(1, 0);
  blk.rhs = IntVector::Constant(1, 3);
  blk.upper = IntVector::Zero(0);
  blk.objective = IntVector::Zero(0);
  tp.blocks.push_back(blk);
  CHECK(solve_2stage_desk(tp).value == 3);

  tp.blocks[0].rhs(0) = 9;
  CHECK_FALSE(solve_2stage_desk(tp).value);

  DeskOptions tiny;
  tiny.node_budget = 2;
  try {
    solve_2stage_desk(tp, tiny);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("4-block solver on the reference systems") {
  TaskSystem fig{{{15, std::nullopt, 65, 0}, {7, std::nullopt, 30, 0}, {13, std::nullopt, 50, 0}}};
  auto p = encode_rtc_as_4block(fig);
  const Int expect = response_jitter_free(ResponseQuery::for_task(fig, 2));
  CHECK(expect == 42);
  CHECK(solve_simple_4block(p).value == expect);

  auto single = encode_rtc_as_4block(TaskSystem{{{4, std::nullopt, 9, 0}}});
  CHECK(solve_simple_4block(single).value == 4);

  // zero objective: least k is 0 whenever the program is feasible
  auto zero = p;
  zero.w.setZero();
  CHECK(solve_simple_4block(zero, 10).value == 0);

  CHECK_THROWS_AS(encode_rtc_as_4block(TaskSystem{{{1, std::nullopt, 2, 1}, {1, std::nullopt, 4, 0}}}), Error);
  CHECK_THROWS_AS(encode_rtc_as_4block(TaskSystem{{{1, std::nullopt, 1, 0}, {1, std::nullopt, 4, 0}}}), Error);
}

TEST_CASE("validation of the block structure") {
  TaskSystem ts{{{1, std::nullopt, 2, 0}, {1, std::nullopt, 4, 0}, {1, std::nullopt, 8, 0}}};
  auto good = encode_rtc_as_4block(ts);
  CHECK_NOTHROW(validate(good));

  auto two_rows = good;
  two_rows.q = 2;
  CHECK_THROWS_AS(validate(two_rows), Error);

  auto stray = good;
  stray.w(3) = 1;  // brick 2 while the objective addresses brick 1
  try {
    validate(stray);
    FAIL("expected MalformedBlocks");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedBlocks);
  }

  auto short_b = good;
  short_b.b = IntVector::Zero(1);
  CHECK_THROWS_AS(validate(short_b), Error);

  auto negative = good;
  negative.w(0) = -1;
  CHECK_THROWS_AS(validate(negative), Error);
}

TEST_CASE("round trip against the jitter-free response") {
  std::mt19937_64 rng(12);
  int checked = 0;
  for (int iter = 0; iter < 400 && checked < 150; ++iter) {
    TaskSystem ts;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      const Int p = 1 + static_cast<Int>(rng() % 12);
      ts.tasks.push_back({1 + static_cast<Int>(rng() % std::max<Int>(1, p / 2)), std::nullopt, p, 0});
    }
    if (utilization(ts, true) >= Rational(1)) continue;
    const auto q = ResponseQuery::for_task(ts, ts.size() - 1);
    const Int expect = response_jitter_free(q);
    const auto p = encode_rtc_as_4block(ts);
    CHECK(solve_simple_4block(p, search_upper_bound(q)).value == expect);
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("random instances: optimum, monotone decision and projection") {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 300; ++iter) {
    const auto p = random_instance(rng);
    const auto expect = oracle_optimum(p);
    const Int H = default_objective_bound(p);
    if (expect) {
      CHECK(solve_simple_4block(p).value == *expect);
    } else {
      CHECK_THROWS_AS(solve_simple_4block(p), Error);
    }

    bool prev = false;
    for (Int k = -H - 1; k <= H + 1; ++k) {
      const auto tp = transform_to_2stage(p, k);
      const auto r = solve_2stage_desk(tp);
      const bool yes = r.value && *r.value >= p.b0;
      CHECK(!(prev && !yes));
      prev = yes;

      std::set<Point> direct;
      for (const auto& x : block_feasible_points(p))
        if (dot(p.w, x) <= k) direct.insert(x);
      CHECK(two_stage_projection(tp, p) == direct);
    }
  }
}
