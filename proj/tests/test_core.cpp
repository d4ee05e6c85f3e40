#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rtmix/bounds.hpp"
#include "rtmix/task.hpp"

using namespace rtmix;

namespace {

TaskSystem ref3() {
  return {{{15, std::nullopt, 65, 8}, {7, std::nullopt, 30, 5}, {13, std::nullopt, 50, 25}}};
}

TaskSystem extreme3(Int jitter_mode_p) {
  // c = (1,1,1), p = (2,4,4); jitter = p or 0
  TaskSystem ts{{{1, std::nullopt, 2, 0}, {1, std::nullopt, 4, 0}, {1, std::nullopt, 4, 0}}};
  if (jitter_mode_p)
    for (auto& t : ts.tasks) t.jitter = t.p;
  return ts;
}

}  // namespace

TEST_CASE("validate accepts legal systems and names the violated constraint") {
  CHECK_NOTHROW(validate(ref3()));
  CHECK_NOTHROW(validate(TaskSystem{{{1, 1, 1, 0}}}));

  TaskSystem bad{{{1, std::nullopt, 4, 5}}};
  try {
    validate(bad);
    FAIL("expected InvalidInstance");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInstance);
    CHECK(std::string(e.what()).find("jitter <= p") != std::string::npos);
  }
  CHECK_THROWS_AS(validate(TaskSystem{}), Error);
  CHECK_THROWS_AS(validate(TaskSystem{{{3, 2, 4, 0}}}), Error);   // c > d
  CHECK_THROWS_AS(validate(TaskSystem{{{1, 5, 4, 0}}}), Error);   // d > p
  CHECK_THROWS_AS(validate(TaskSystem{{{0, std::nullopt, 4, 0}}}), Error);
}

TEST_CASE("utilization is exact") {
  CHECK(utilization(ref3(), true) == Rational(181, 390));
  CHECK(utilization(TaskSystem{{{1, std::nullopt, 2, 0}}}, true) == Rational(0));
  CHECK(utilization(extreme3(0), false) == Rational(1));
}

TEST_CASE("general utilization bound") {
  auto rep = check_general_utilization_bound(ref3());
  CHECK(rep.higher == Rational(181, 390));
  CHECK(rep.schedulability_bound_holds);

  TaskSystem full{{{1, std::nullopt, 1, 0}, {1, std::nullopt, 1, 0}}};
  try {
    check_general_utilization_bound(full);
    FAIL("expected UtilizationExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UtilizationExceeded);
  }

  // equality case of U <= 1 - 1/lcm
  auto eq = check_general_utilization_bound(extreme3(1));
  CHECK(eq.higher == Rational(3, 4));
  CHECK(eq.higher == Rational(1) - Rational(1, 4));
}

TEST_CASE("harmonic detection") {
  CHECK(is_harmonic(std::vector<Int>{2, 4, 4}));
  CHECK_FALSE(is_harmonic(std::vector<Int>{65, 30, 50}));
  CHECK(is_harmonic(std::vector<Int>{7}));
  CHECK(is_harmonic(std::vector<Int>{}));
  CHECK(is_harmonic(std::vector<Int>{12, 3, 6, 24}));
}

TEST_CASE("harmonic sets have lcm equal to max") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<Int> ps{1 + static_cast<Int>(rng() % 5)};
    int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 1; i < n; ++i) ps.push_back(ps[rng() % ps.size()] * (1 + static_cast<Int>(rng() % 3)));
    if (!is_harmonic(ps)) continue;
    CHECK(lcm(ps) == *std::max_element(ps.begin(), ps.end()));
  }
}

TEST_CASE("lcm respects the magnitude cap") {
  std::vector<Int> ps{1000003, 1000033, 1000037};
  CHECK_NOTHROW(lcm(ps));
  try {
    lcm(ps, Limits::from_bits(40));
    FAIL("expected OverflowLimit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OverflowLimit);
  }
  std::vector<Int> primes{1000003, 1000033, 1000037, 1000039};
  CHECK_THROWS_AS(lcm(primes), Error);
}

TEST_CASE("response bounds on the reference systems") {
  auto b = response_bounds(ref3());
  CHECK(b.ell == Rational(6245, 209));
  CHECK(b.u1 - b.ell == Rational(8580, 209));
  CHECK(b.u2 == 390);
  CHECK(b.lcm_higher == 390);
  CHECK(b.u == std::min<Int>(71, 390));  // ceil(14825/209) = 71

  auto t = response_bounds(extreme3(1));
  CHECK(t.ell == Rational(12));
  CHECK(t.u2 == 12);
  CHECK(t.u == 12);

  TaskSystem small{{{1, std::nullopt, 2, 0}, {1, std::nullopt, 5, 0}}};
  CHECK(response_bounds(small).ell == Rational(2));
}

TEST_CASE("jitter-free bounds") {
  TaskSystem two{{{1, std::nullopt, 2, 0}, {1, std::nullopt, 2, 0}}};
  auto [lo, P] = jitter_free_bounds(two);
  CHECK(lo == Rational(2));
  CHECK(P == 2);

  auto [lo1, P1] = jitter_free_bounds(TaskSystem{{{3, std::nullopt, 9, 0}}});
  CHECK(lo1 == Rational(3));
  CHECK(P1 == 9);

  auto [lo3, P3] = jitter_free_bounds(extreme3(0));
  CHECK(lo3 == Rational(4));
  CHECK(P3 == 4);

  CHECK_THROWS_AS(jitter_free_bounds(ref3()), Error);
}

TEST_CASE("interval width certificates") {
  auto rep = interval_width_certificates(ref3());
  REQUIRE(rep.checks.size() == 3);
  for (const auto& c : rep.checks) {
    CHECK(c.applies);
    CHECK(c.holds);
  }
  CHECK(rep.checks[1].lhs == Rational(8580, 209));

  auto ext = interval_width_certificates(extreme3(1));
  for (const auto& c : ext.checks) CHECK(c.holds);
  CHECK_NOTHROW(interval_width_certificates(TaskSystem{{{4, std::nullopt, 9, 3}}}));
}

TEST_CASE("u2 is a multiple of the higher-priority lcm on random systems") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int iter = 0; iter < 2000; ++iter) {
    TaskSystem ts;
    int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      Int p = 1 + static_cast<Int>(rng() % 30);
      Int c = 1 + static_cast<Int>(rng() % std::max<Int>(1, p / n));
      ts.tasks.push_back({std::min(c, p), std::nullopt, p, static_cast<Int>(rng() % (p + 1))});
    }
    if (utilization(ts, true) >= Rational(1)) continue;
    auto b = response_bounds(ts);
    CHECK(b.u2 % b.lcm_higher == 0);
    CHECK(b.ell <= b.u1);
    CHECK(b.u == std::min(to_int(b.u1.ceil()), b.u2));
    ++checked;
  }
  CHECK(checked > 500);
}

TEST_CASE("rational arithmetic identities") {
  std::mt19937_64 rng(3);
  auto draw = [&] {
    Int n = static_cast<Int>(rng() % 2001) - 1000;
    Int d = 1 + static_cast<Int>(rng() % 1000);
    return Rational(n, d);
  };
  for (int i = 0; i < 2000; ++i) {
    Rational a = draw(), b = draw(), c = draw();
    CHECK((a + b) - b == a);
    CHECK(a * (b + c) == a * b + a * c);
    if (b.sign() != 0) CHECK((a / b) * b == a);
    CHECK(a.denominator() >= 1);
    CHECK(a.floor() <= a.ceil());
    CHECK((a.ceil() - a.floor()) == (a.is_integer() ? 0 : 1));
  }
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(-3, 2).floor() == -2);
  CHECK(Rational(-3, 2).ceil() == -1);
  CHECK_THROWS_AS(Rational(1, 0), Error);
}
