#include "rtmix/gen.hpp"

#include <algorithm>
#include <random>

namespace rtmix {

TaskSystem construct_extreme(const std::vector<Int>& c, Int p1, const std::vector<Int>& jitters) {
  require(!c.empty(), ErrorKind::PreconditionViolated, "need at least one leading cost (n >= 3)");
  for (Int ci : c) require(ci >= 1, ErrorKind::PreconditionViolated, "costs must be >= 1");
  require(p1 > c.front(), ErrorKind::PreconditionViolated, "p1 must exceed c_1");
  const std::size_t n = c.size() + 2;
  require(jitters.size() == n, ErrorKind::PreconditionViolated,
          "expected " + std::to_string(n) + " jitters, got " + std::to_string(jitters.size()));

  std::vector<Int> p{p1};
  for (std::size_t i = 1; i < c.size(); ++i) p.push_back(checked_mul(c[i] + 1, p.back()));
  const Int p_top = checked_mul(2, p.back());

  Rational head;
  for (std::size_t i = 0; i < c.size(); ++i) head += Rational(c[i], p[i]);
  const Rational second_last = Rational(p_top) * (Rational(1) - head) - Rational(1);
  if (!second_last.is_integer() || second_last < Rational(1))
    fail(ErrorKind::InternalInvariantViolated, "construction produced c_{n-1} = " + second_last.str());

  TaskSystem ts;
  for (std::size_t i = 0; i < c.size(); ++i) ts.tasks.push_back({c[i], p[i], p[i], 0});
  ts.tasks.push_back({to_int(second_last.numerator()), p_top, p_top, 0});
  ts.tasks.push_back({1, p_top, p_top, 0});
  for (std::size_t i = 0; i < n; ++i) ts.tasks[i].jitter = jitters[i];
  validate(ts);

  if (utilization(ts, false) != Rational(1) || !is_harmonic(ts))
    fail(ErrorKind::InternalInvariantViolated, "construction is not a full-utilization harmonic system");
  return ts;
}

TaskSystem construct_extreme(const std::vector<Int>& c, Int p1, JitterPreset preset) {
  const TaskSystem base = construct_extreme(c, p1, std::vector<Int>(c.size() + 2, 0));
  if (preset == JitterPreset::Zero) return base;
  std::vector<Int> xi;
  for (const auto& t : base.tasks) xi.push_back(t.p);
  return construct_extreme(c, p1, xi);
}

MixInstance tight_mixing_instance(int n) {
  require(n >= 2 && n <= 56, ErrorKind::PreconditionViolated, "n must lie in [2, 56]");
  MixInstance inst;
  inst.w0 = 1;
  const Int b = checked_sub(checked_mul(n, Int{1} << n), 1);
  for (int i = 1; i <= n; ++i) {
    const Int w = Int{1} << i;
    inst.terms.push_back({w, checked_mul(n, w), b});
  }
  return inst;
}

std::optional<JitterMode> parse_jitter_mode(const std::string& name) {
  if (name == "zero") return JitterMode::Zero;
  if (name == "full" || name == "p") return JitterMode::Full;
  if (name == "uniform") return JitterMode::Uniform;
  return std::nullopt;
}

std::string to_string(JitterMode mode) {
  switch (mode) {
    case JitterMode::Zero: return "zero";
    case JitterMode::Full: return "full";
    case JitterMode::Uniform: return "uniform";
  }
  return "unknown";
}

namespace {

Int draw(std::mt19937_64& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

/// Divisor chain base, base*f_1, ... up to p_max.
std::vector<Int> divisor_chain(std::mt19937_64& rng, Int p_max) {
  std::vector<Int> chain{draw(rng, 1, std::min<Int>(p_max, 4))};
  while (true) {
    const Int next = chain.back() * draw(rng, 2, 4);
    if (next > p_max) break;
    chain.push_back(next);
  }
  return chain;
}

}  // namespace

TaskSystem random_system(const RandomSystemSpec& spec) {
  require(spec.n >= 1, ErrorKind::PreconditionViolated, "n must be positive");
  require(spec.p_max >= 1, ErrorKind::PreconditionViolated, "p_max must be positive");
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    const auto chain = divisor_chain(rng, spec.p_max);
    TaskSystem ts;
    for (int i = 0; i < spec.n; ++i) {
      const Int p = spec.harmonic ? chain[static_cast<std::size_t>(draw(rng, 0, static_cast<Int>(chain.size()) - 1))]
                                  : draw(rng, 1, spec.p_max);
      const Int c = draw(rng, 1, std::max<Int>(1, p / spec.n));
      Int xi = 0;
      if (spec.jitter == JitterMode::Full) xi = p;
      if (spec.jitter == JitterMode::Uniform) xi = draw(rng, 0, p);
      ts.tasks.push_back({c, p, p, xi});
    }
    if (utilization(ts, true) < Rational(1)) {
      validate(ts);
      return ts;
    }
  }
  fail(ErrorKind::GenerationFailed,
       "no system with higher-priority utilization below 1 after " + std::to_string(spec.max_attempts) + " draws");
}

MixInstance random_mix(const RandomMixSpec& spec) {
  require(spec.n >= 0 && spec.a_max >= 1 && spec.b_abs >= 0 && spec.w_max >= 0,
          ErrorKind::PreconditionViolated, "random mix parameters out of range");
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    const auto chain = divisor_chain(rng, spec.a_max);
    MixInstance inst;
    for (int i = 0; i < spec.n; ++i) {
      const Int a = spec.harmonic ? chain[static_cast<std::size_t>(draw(rng, 0, static_cast<Int>(chain.size()) - 1))]
                                  : draw(rng, 1, spec.a_max);
      inst.terms.push_back({draw(rng, 0, spec.w_max), a, draw(rng, -spec.b_abs, spec.b_abs)});
    }
    inst.w0 = std::max<Int>(1, to_int(weight_load(inst).ceil()));
    if (!is_unbounded(inst)) return inst;
  }
  fail(ErrorKind::GenerationFailed, "no bounded mixing instance found");
}

}  // namespace rtmix
