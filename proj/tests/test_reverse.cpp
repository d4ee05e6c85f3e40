#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rtmix/reverse.hpp"

using namespace rtmix;

namespace {

std::vector<oracle::Term> to_oracle(const MixInstance& inst) {
  std::vector<oracle::Term> out;
  for (const auto& t : inst.terms) out.push_back({t.w, t.a, t.b});
  return out;
}

Int oracle_lcm(const MixInstance& inst) {
  Int m = 1;
  for (const auto& t : inst.terms) m = oracle::lcm(m, t.a);
  return m;
}

Int oracle_optimum(const MixInstance& inst) {
  return oracle::mix_min(inst.w0, to_oracle(inst), oracle_lcm(inst) - 1).value;
}

/// Capacities with lcm at most `lcm_cap` and total load sum w/a <= 1.
MixInstance random_capacities(std::mt19937_64& rng, int n_max, Int a_max, Int lcm_cap) {
  while (true) {
    MixInstance inst;
    const int n = 1 + static_cast<int>(rng() % n_max);
    for (int i = 0; i < n; ++i) {
      const Int a = 1 + static_cast<Int>(rng() % a_max);
      inst.terms.push_back({static_cast<Int>(rng() % (a / 2 + 2)), a, 0});
    }
    if (oracle_lcm(inst) > lcm_cap || weight_load(inst) > Rational(1)) continue;
    return inst;
  }
}

}  // namespace

TEST_CASE("mix_leq_via_rtc") {
  MixInstance inst{1, {{1, 2, 4}, {1, 4, 4}}};
  CHECK(oracle_optimum(inst) == 3);
  CHECK(mix_leq_via_rtc(inst, 4, 3));
  CHECK_FALSE(mix_leq_via_rtc(inst, 4, 2));
  CHECK(mix_leq_via_rtc(MixInstance{1, {}}, 4, 3));
  // k >= beta goes through the gamma <= 0 search
  CHECK(mix_leq_via_rtc(inst, 4, 4));
  CHECK(mix_leq_via_rtc(inst, 4, 9));

  CHECK_THROWS_AS(mix_leq_via_rtc(inst, 2, 1), Error);  // beta below S = 3
  CHECK_THROWS_AS(mix_leq_via_rtc(MixInstance{1, {{1, 2, 9}}}, 4, 1), Error);
  CHECK_THROWS_AS(mix_leq_via_rtc(MixInstance{2, {{1, 2, 4}}}, 4, 1), Error);
}

TEST_CASE("solve_crowded") {
  MixInstance a{1, {{1, 2, 4}, {1, 4, 5}}};
  REQUIRE(is_crowded(a));
  auto sa = solve_crowded(a);
  CHECK(sa.objective == oracle_optimum(a));
  CHECK(is_feasible(sa, a));

  MixInstance eq{1, {{1, 2, 4}, {1, 4, 4}}};
  CHECK(solve_crowded(eq).objective == 3);

  MixInstance b{1, {{2, 3, 9}, {1, 9, 11}}};
  REQUIRE(is_crowded(b));
  CHECK(solve_crowded(b).objective == oracle_optimum(b));

  CHECK_THROWS_AS(solve_crowded(MixInstance{1, {{1, 2, 1}}}), Error);
}

TEST_CASE("shift record and solve_general_via_shift") {
  MixInstance inst{1, {{1, 2, -3}, {2, 4, 1}}};
  auto rec = make_shift(inst);
  CHECK(rec.m == 4);
  CHECK(rec.offsets == std::vector<Int>{4, 1});
  CHECK(rec.objective_correction == 4 + 2);
  for (std::size_t i = 0; i < inst.terms.size(); ++i) {
    CHECK(rec.m <= rec.shifted.terms[i].b);
    CHECK(rec.shifted.terms[i].b < rec.m + inst.terms[i].a);
  }
  CHECK(solve_general_via_shift(inst).objective == oracle_optimum(inst));

  // b above the window gives a negative offset
  auto down = make_shift(MixInstance{1, {{1, 5, 23}}});
  CHECK(down.offsets == std::vector<Int>{-3});
  CHECK(down.shifted.terms[0].b == 8);

  MixInstance one{1, {{1, 5, 0}}};
  CHECK(solve_general_via_shift(one).objective == oracle_optimum(one));
  CHECK_THROWS_AS(solve_general_via_shift(MixInstance{1, {{3, 2, 0}}}), Error);
}

TEST_CASE("solve_constant_beta") {
  MixInstance inst{1, {{1, 2, 4}, {1, 4, 4}}};
  CHECK(solve_constant_beta(inst, 4).objective == 3);

  // single zero-weight term, beta = a: the optimum is s = 0 with value 0
  MixInstance zero{1, {{0, 6, 6}}};
  CHECK(oracle_optimum(zero) == 0);
  auto sz = solve_constant_beta(zero, 6);
  CHECK(sz.objective == 0);
  CHECK(sz.s == 0);

  auto empty = solve_constant_beta(MixInstance{1, {}}, 10);
  CHECK(empty.objective == 0);
  CHECK(empty.s == 0);

  CHECK_THROWS_AS(solve_constant_beta(MixInstance{1, {{1, 4, 3}}}, 3), Error);
  CHECK_THROWS_AS(solve_constant_beta(MixInstance{1, {{1, 4, 6}, {1, 6, 6}}}, 6), Error);  // lcm 12
  CHECK_THROWS_AS(solve_constant_beta(MixInstance{1, {{1, 4, 5}}}, 4), Error);
}

TEST_CASE("reverse paths match brute force on random crowded instances") {
  std::mt19937_64 rng(404);
  for (int iter = 0; iter < 400; ++iter) {
    MixInstance inst = random_capacities(rng, 6, 64, 4000);
    const Int m = oracle_lcm(inst);
    const Int b_min = m + static_cast<Int>(rng() % 30);
    for (auto& t : inst.terms) t.b = b_min + static_cast<Int>(rng() % (t.a + 1));
    REQUIRE(is_crowded(inst));
    const auto sol = solve_crowded(inst);
    CHECK(sol.objective == oracle_optimum(inst));
    CHECK(is_feasible(sol, inst));
  }
}

TEST_CASE("shift path matches brute force on random instances") {
  std::mt19937_64 rng(405);
  for (int iter = 0; iter < 400; ++iter) {
    MixInstance inst = random_capacities(rng, 6, 64, 4000);
    for (auto& t : inst.terms) t.b = static_cast<Int>(rng() % 401) - 200;
    const auto rec = make_shift(inst);
    for (std::size_t i = 0; i < inst.terms.size(); ++i) {
      CHECK(rec.m <= rec.shifted.terms[i].b);
      CHECK(rec.shifted.terms[i].b <= rec.m + inst.terms[i].a);
    }
    CHECK(oracle_optimum(rec.shifted) - rec.objective_correction == oracle_optimum(inst));
    const auto sol = solve_general_via_shift(inst);
    CHECK(sol.objective == oracle_optimum(inst));
    ReversePath path;
    CHECK(solve_via_rtc(inst, {}, nullptr, &path).objective == sol.objective);
  }
}

TEST_CASE("constant beta matches brute force on random instances") {
  std::mt19937_64 rng(406);
  for (int iter = 0; iter < 400; ++iter) {
    MixInstance inst = random_capacities(rng, 6, 64, 4000);
    const auto caps = inst.capacities();
    const Int need = is_harmonic(caps) ? *std::max_element(caps.begin(), caps.end()) : oracle_lcm(inst);
    const Int beta = need + static_cast<Int>(rng() % 50);
    for (auto& t : inst.terms) t.b = beta;
    CHECK(solve_constant_beta(inst, beta).objective == oracle_optimum(inst));
  }
}

TEST_CASE("mix_leq_via_rtc is monotone in k") {
  std::mt19937_64 rng(407);
  for (int iter = 0; iter < 150; ++iter) {
    MixInstance inst = random_capacities(rng, 4, 16, 500);
    const Int beta = oracle_lcm(inst) + static_cast<Int>(rng() % 10);
    for (auto& t : inst.terms) t.b = beta + static_cast<Int>(rng() % (t.a + 1));
    const Int opt = oracle_optimum(inst);
    bool prev = false;
    for (Int k = 0; k <= beta + 5; ++k) {
      const bool yes = mix_leq_via_rtc(inst, beta, k);
      CHECK(yes == (opt <= k));
      CHECK(!(prev && !yes));
      prev = yes;
    }
  }
}
