#include "rtmix/cli.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "rtmix/blockip.hpp"
#include "rtmix/gen.hpp"
#include "rtmix/io.hpp"
#include "rtmix/mixing.hpp"
#include "rtmix/reverse.hpp"
#include "rtmix/rta.hpp"
#include "rtmix/sim.hpp"

namespace rtmix::cli {

using io::Json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible:
    case ErrorKind::Unbounded:
    case ErrorKind::UtilizationExceeded:
      return Negative;
    case ErrorKind::OverflowLimit:
    case ErrorKind::BudgetExceeded:
      return Limit;
    case ErrorKind::InternalInvariantViolated:
      return VerifyFailed;
    default:
      return BadInput;
  }
}

namespace {

struct Common {
  std::string format = "json";
  bool verify = false;
};

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  Limits limits;
};

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app->add_flag("--verify", c.verify, "Re-check results against the brute-force oracle");
}

Json timings(double ms, const OpCounter& ops) { return {{"wall_ms", ms}, {"ops", io::to_json(ops)}}; }

/// Prints the report and turns a failed verification into the exit status.
int finish(Ctx& ctx, const Common& c, Json report, const std::string& text,
           const std::vector<std::string>& mismatches) {
  if (c.verify) {
    report["verified"] = mismatches.empty();
    if (!mismatches.empty()) report["mismatches"] = mismatches;
  }
  if (c.format == "json")
    ctx.out << report.dump(2) << "\n";
  else
    ctx.out << text;
  for (const auto& m : mismatches) ctx.err << "verify: " << m << "\n";
  if (c.verify && !mismatches.empty()) return VerifyFailed;
  return Ok;
}

void write_instance(Ctx& ctx, const Json& inst, const std::string& path) {
  if (path.empty()) {
    ctx.out << inst.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  require(static_cast<bool>(f), ErrorKind::InvalidInstance, path + ": cannot write file");
  f << inst.dump(2) << "\n";
}

// ---- rta compute ----

struct RtaArgs {
  Common common;
  std::string input;
  std::string algorithm = "auto";
  bool require_schedulable = false;
};

int rta_compute(Ctx& ctx, const RtaArgs& a) {
  const TaskSystem ts = io::task_system_from_json(io::read_file(a.input));
  const Algorithm alg = *parse_algorithm(a.algorithm);
  OpCounter ops;
  Timer timer;
  const SystemReport rep = analyze_system(ts, alg, ctx.limits, &ops);
  const double ms = timer.ms();

  Json tasks = Json::array(), r = Json::array(), bounds = Json::array();
  std::ostringstream text;
  std::map<std::string, int> used;
  for (const auto& t : rep.tasks) {
    r.push_back(t.response);
    ++used[to_string(t.algorithm)];
    tasks.push_back({{"task", t.index},
                     {"response", t.response},
                     {"algorithm", to_string(t.algorithm)},
                     {"deadline_budget", t.deadline_budget ? Json(*t.deadline_budget) : Json(nullptr)},
                     {"schedulable", t.schedulable ? Json(*t.schedulable) : Json(nullptr)}});
    bounds.push_back(t.bounds ? io::to_json(*t.bounds) : Json(nullptr));
    text << "task " << t.index + 1 << ": r = " << t.response;
    if (t.deadline_budget) text << ", budget " << *t.deadline_budget;
    if (t.schedulable) text << (*t.schedulable ? ", ok" : ", MISSES");
    text << "  [" << to_string(t.algorithm) << "]\n";
  }
  const Json verdict = rep.schedulable ? Json(*rep.schedulable) : Json(nullptr);
  text << "schedulable: " << (rep.schedulable ? (*rep.schedulable ? "yes" : "no") : "unknown") << "\n";

  Json alg_json = Json::object();
  for (const auto& [name, count] : used) alg_json[name] = count;
  Json report{{"command", "rta compute"},
              {"algorithm", {{"requested", a.algorithm}, {"used", alg_json}}},
              {"instance", io::to_json(ts)},
              {"result", {{"r", r}, {"tasks", tasks}, {"schedulable", verdict}}},
              {"certificates", {{"utilization", io::to_json(utilization(ts, false))}, {"bounds", bounds}}},
              {"timings", timings(ms, ops)}};

  std::vector<std::string> mismatches;
  if (a.common.verify)
    for (const auto& t : rep.tasks) {
      const auto q = ResponseQuery::for_task(ts, t.index);
      const Int oracle = response_bruteforce(q, ctx.limits);
      if (oracle != t.response)
        mismatches.push_back("task " + std::to_string(t.index + 1) + ": " + std::to_string(t.response) +
                             " but fixed-point iteration gives " + std::to_string(oracle));
    }
  int code = finish(ctx, a.common, report, text.str(), mismatches);
  if (code == Ok && a.require_schedulable) {
    require(rep.schedulable.has_value(), ErrorKind::InvalidInstance,
            "--require-schedulable needs a deadline on every task");
    if (!*rep.schedulable) {
      ctx.err << "not schedulable\n";
      code = Negative;
    }
  }
  return code;
}

// ---- mix solve ----

struct MixArgs {
  Common common;
  std::string input;
  std::string algorithm = "auto";
};

int mix_solve(Ctx& ctx, const MixArgs& a) {
  const MixInstance inst = io::mix_from_json(io::read_file(a.input));
  OpCounter ops;
  Json certs = Json::object();
  Timer timer;
  MixSolution sol;
  if (a.algorithm == "harmonic") {
    sol = solve_harmonic(inst, &ops);
  } else if (a.algorithm == "bruteforce") {
    sol = solve_bruteforce(inst, ctx.limits, &ops);
  } else if (a.algorithm == "via-rtc") {
    ReversePath path = ReversePath::Shift;
    sol = solve_via_rtc(inst, ctx.limits, &ops, &path);
    certs["path"] = path == ReversePath::Crowded ? "crowded" : path == ReversePath::ConstantBeta ? "constant-beta" : "shift";
  } else if (a.algorithm == "shift") {
    sol = solve_general_via_shift(inst, ctx.limits, &ops);
    const auto shift = make_shift(inst, ctx.limits);
    certs["shift"] = {{"m", shift.m}, {"offsets", shift.offsets}, {"objective_correction", shift.objective_correction}};
  } else {
    sol = solve(inst, ctx.limits, &ops);
  }
  const double ms = timer.ms();
  certs["feasible"] = is_feasible(sol, inst);
  certs["weight_load"] = io::to_json(weight_load(inst));
  certs["s_search_bound"] = s_search_bound(inst, ctx.limits);

  Json report{{"command", "mix solve"},
              {"algorithm", a.algorithm},
              {"instance", io::to_json(inst)},
              {"result", io::to_json(sol)},
              {"certificates", certs},
              {"timings", timings(ms, ops)}};
  std::ostringstream text;
  text << "objective " << sol.objective << " at s = " << sol.s << "\n";

  std::vector<std::string> mismatches;
  if (a.common.verify) {
    const auto oracle = solve_bruteforce(inst, ctx.limits);
    if (oracle.objective != sol.objective)
      mismatches.push_back("objective " + std::to_string(sol.objective) + " but enumeration gives " +
                           std::to_string(oracle.objective));
    if (!is_feasible(sol, inst)) mismatches.push_back("returned solution is infeasible");
  }
  return finish(ctx, a.common, report, text.str(), mismatches);
}

// ---- gen ----

struct GenArgs {
  Common common;
  std::string output;
  int n = 3;
  Int p1 = 2;
  std::vector<Int> c{1};
  std::string jitter = "p";
  std::uint64_t seed = 1;
  Int p_max = 16;
  Int a_max = 16;
  Int b_abs = 64;
  Int w_max = 8;
  bool harmonic = false;
};

std::string system_table(const TaskSystem& ts) {
  std::ostringstream s;
  s << "task      c      d      p  jitter\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& t = ts[i];
    s << "t" << i + 1 << "\t" << t.c << "\t" << (t.d ? std::to_string(*t.d) : "-") << "\t" << t.p << "\t"
      << t.jitter << "\n";
  }
  return s.str();
}

std::string mix_table(const MixInstance& m) {
  std::ostringstream s;
  s << "w0 = " << m.w0 << "\n";
  for (const auto& t : m.terms) s << "w " << t.w << "\ta " << t.a << "\tb " << t.b << "\n";
  return s.str();
}

int gen_emit(Ctx& ctx, const GenArgs& a, const Json& inst, const std::string& text,
             const std::vector<std::string>& mismatches) {
  if (a.common.format == "json" || !a.output.empty())
    write_instance(ctx, inst, a.output);
  else
    ctx.out << text;
  for (const auto& m : mismatches) ctx.err << "verify: " << m << "\n";
  if (a.common.verify && mismatches.empty()) ctx.err << "verify: ok\n";
  return a.common.verify && !mismatches.empty() ? VerifyFailed : Ok;
}

int gen_extreme(Ctx& ctx, const GenArgs& a) {
  require(a.n >= 3, ErrorKind::PreconditionViolated, "--n must be at least 3");
  std::vector<Int> c = a.c;
  if (c.size() == 1) c.assign(static_cast<std::size_t>(a.n - 2), c.front());
  require(c.size() == static_cast<std::size_t>(a.n - 2), ErrorKind::PreconditionViolated,
          "--c needs one value or n - 2 values");
  const auto mode = parse_jitter_mode(a.jitter);
  require(mode && *mode != JitterMode::Uniform, ErrorKind::PreconditionViolated, "--jitter must be p or zero");
  const TaskSystem ts = construct_extreme(c, a.p1, *mode == JitterMode::Full ? JitterPreset::Period : JitterPreset::Zero);
  std::vector<std::string> mismatches;
  if (a.common.verify) {
    const auto b = response_bounds(ts, ctx.limits);
    const Int r = response_bruteforce(ResponseQuery::for_task(ts, ts.size() - 1), ctx.limits);
    // equality with both bounds is only claimed for jitter = p
    const bool tight = *mode == JitterMode::Full ? Rational(r) == b.ell && b.ell == Rational(b.u2)
                                                 : b.ell <= Rational(r) && r <= b.u;
    if (!tight)
      mismatches.push_back("r_n = " + std::to_string(r) + ", ell = " + b.ell.str() + ", u2 = " + std::to_string(b.u2));
  }
  return gen_emit(ctx, a, io::to_json(ts), system_table(ts), mismatches);
}

int gen_tight_mix(Ctx& ctx, const GenArgs& a) {
  const MixInstance inst = tight_mixing_instance(a.n);
  std::vector<std::string> mismatches;
  if (a.common.verify) {
    const Int top = a.n * (Int{1} << a.n) - 1;
    const auto sol = solve_bruteforce(inst, ctx.limits);
    if (sol.objective != top || sol.s != top)
      mismatches.push_back("optimum (" + std::to_string(sol.objective) + ", s = " + std::to_string(sol.s) +
                           ") differs from " + std::to_string(top));
  }
  return gen_emit(ctx, a, io::to_json(inst), mix_table(inst), mismatches);
}

int gen_random(Ctx& ctx, const GenArgs& a) {
  const auto mode = parse_jitter_mode(a.jitter == "p" ? "full" : a.jitter);
  require(mode.has_value(), ErrorKind::PreconditionViolated, "--jitter must be zero, full or uniform");
  const TaskSystem ts = random_system({a.seed, a.n, a.p_max, a.harmonic, *mode});
  std::vector<std::string> mismatches;
  if (a.common.verify) {
    const auto q = ResponseQuery::for_task(ts, ts.size() - 1);
    const Int r = response_bruteforce(q, ctx.limits);
    const Int fast = compute_response(q, Algorithm::Auto, ctx.limits);
    if (r != fast) mismatches.push_back("auto gives " + std::to_string(fast) + ", iteration " + std::to_string(r));
  }
  return gen_emit(ctx, a, io::to_json(ts), system_table(ts), mismatches);
}

int gen_random_mix(Ctx& ctx, const GenArgs& a) {
  RandomMixSpec spec;
  spec.seed = a.seed;
  spec.n = a.n;
  spec.a_max = a.a_max;
  spec.b_abs = a.b_abs;
  spec.w_max = a.w_max;
  spec.harmonic = a.harmonic;
  const MixInstance inst = random_mix(spec);
  std::vector<std::string> mismatches;
  if (a.common.verify) {
    const auto fast = solve(inst, ctx.limits);
    const auto oracle = solve_bruteforce(inst, ctx.limits);
    if (fast.objective != oracle.objective) mismatches.push_back("solver and enumeration disagree");
  }
  return gen_emit(ctx, a, io::to_json(inst), mix_table(inst), mismatches);
}

// ---- sim run ----

struct SimArgs {
  Common common;
  std::string input;
  std::string releases;
  Int horizon = 0;
  bool gantt = false;
  std::string measure = "release";
};

int sim_run(Ctx& ctx, const SimArgs& a) {
  const TaskSystem ts = io::task_system_from_json(io::read_file(a.input));
  const ReleasePattern rp =
      a.releases.empty() ? periodic_pattern(ts, a.horizon, true) : io::releases_from_json(io::read_file(a.releases));
  Timer timer;
  const ScheduleTrace trace = simulate(ts, rp, a.horizon);
  const double ms = timer.ms();
  const Measure measure = a.measure == "arrival" ? Measure::FromArrival : Measure::FromRelease;
  const auto observed = observed_responses(trace, measure);

  Json responses = Json::array();
  std::vector<Int> worst(ts.size(), 0);
  for (const auto& o : observed) {
    responses.push_back({{"task", o.task}, {"job", o.job}, {"response", o.value}});
    worst[o.task] = std::max(worst[o.task], o.value);
  }
  Json result = io::to_json(trace);
  result["measure"] = a.measure;
  result["responses"] = responses;
  result["max_response"] = worst;
  const std::string gantt = render_gantt(trace, ts.size());
  if (a.gantt) result["gantt"] = gantt;

  Json report{{"command", "sim run"},
              {"algorithm", "fixed-priority preemptive"},
              {"instance", io::to_json(ts)},
              {"releases", io::to_json(rp)},
              {"result", result},
              {"certificates", Json::object()},
              {"timings", timings(ms, OpCounter{})}};

  std::ostringstream text;
  if (a.gantt) text << gantt;
  for (std::size_t i = 0; i < ts.size(); ++i)
    text << "t" << i + 1 << ": max observed response " << worst[i] << " (from " << a.measure << ")\n";

  std::vector<std::string> mismatches;
  if (a.common.verify) {
    if (simulate(ts, rp, a.horizon).segments != trace.segments) mismatches.push_back("schedule is not deterministic");
    // analysed bounds apply while every job completes before its own next release
    Json checked = Json::array();
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const auto q = ResponseQuery::for_task(ts, j);
      if (utilization(q.tasks) >= Rational(1)) continue;
      const Int r = response_bruteforce(q, ctx.limits);
      if (r > ts[j].p - ts[j].jitter) continue;
      checked.push_back(j);
      for (const auto& o : observed_responses(trace, Measure::FromRelease))
        if (o.task == j && o.value > r)
          mismatches.push_back("task " + std::to_string(j + 1) + " job " + std::to_string(o.job) + " observed " +
                               std::to_string(o.value) + " above the analysed " + std::to_string(r));
    }
    report["certificates"]["bound_checked_tasks"] = checked;
  }
  return finish(ctx, a.common, report, text.str(), mismatches);
}

// ---- blockip ----

struct BlockArgs {
  Common common;
  std::string input;
  std::optional<Int> H;
  std::uint64_t budget = DeskOptions{}.node_budget;
  std::string output;
};

/// Minimum of w^T x over the whole box, or empty when nothing is feasible.
std::optional<Int> enumerate_4block(const SimpleFourBlock& p, std::uint64_t max_points) {
  const auto len = static_cast<std::size_t>(p.u.size());
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < len; ++i) {
    const auto width = static_cast<std::uint64_t>(p.u(static_cast<Eigen::Index>(i))) + 1;
    require(points <= max_points / width, ErrorKind::BudgetExceeded,
            "box too large for the enumeration oracle (more than " + std::to_string(max_points) + " points)");
    points *= width;
  }
  const IntVector a = p.coupling_row();
  IntVector x = IntVector::Zero(static_cast<Eigen::Index>(len));
  std::optional<Int> best;
  while (true) {
    bool ok = a.dot(x) >= p.b0;
    for (int i = 0; i < p.n && ok; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const IntVector lhs = p.B[k] * x.head(p.s) + p.A[k] * x.segment(p.s + i * p.t, p.t);
      ok = lhs == p.b.segment(i * p.r, p.r);
    }
    if (ok) {
      const Int v = p.w.dot(x);
      if (!best || v < *best) best = v;
    }
    std::size_t v = 0;
    while (v < len && ++x(static_cast<Eigen::Index>(v)) > p.u(static_cast<Eigen::Index>(v)))
      x(static_cast<Eigen::Index>(v++)) = 0;
    if (v == len) break;
  }
  return best;
}

int blockip_solve(Ctx& ctx, const BlockArgs& a) {
  const SimpleFourBlock p = io::four_block_from_json(io::read_file(a.input));
  DeskOptions opt;
  opt.node_budget = a.budget;
  Timer timer;
  const FourBlockResult res = solve_simple_4block(p, a.H, opt);
  const double ms = timer.ms();
  OpCounter ops;
  ops.probes = static_cast<std::uint64_t>(res.probes);
  ops.arithmetic = res.nodes;

  Json report{{"command", "blockip solve"},
              {"algorithm", "binary search over 2-stage desk solver"},
              {"instance", io::to_json(p)},
              {"result", {{"value", res.value}, {"nodes", res.nodes}, {"probes", res.probes}}},
              {"certificates", {{"H", a.H.value_or(default_objective_bound(p))}}},
              {"timings", timings(ms, ops)}};
  std::ostringstream text;
  text << "minimum " << res.value << " (" << res.probes << " probes, " << res.nodes << " nodes)\n";

  std::vector<std::string> mismatches;
  if (a.common.verify) {
    const auto oracle = enumerate_4block(p, 20'000'000);
    if (!oracle || *oracle != res.value)
      mismatches.push_back("minimum " + std::to_string(res.value) + " but enumeration gives " +
                           (oracle ? std::to_string(*oracle) : std::string("infeasible")));
  }
  return finish(ctx, a.common, report, text.str(), mismatches);
}

int blockip_encode(Ctx& ctx, const BlockArgs& a) {
  const TaskSystem ts = io::task_system_from_json(io::read_file(a.input));
  const SimpleFourBlock p = encode_rtc_as_4block(ts);
  std::vector<std::string> mismatches;
  if (a.common.verify) {
    const auto q = ResponseQuery::for_task(ts, ts.size() - 1);
    const Int r = response_bruteforce(q, ctx.limits);
    const Int v = solve_simple_4block(p, search_upper_bound(q, ctx.limits)).value;
    if (r != v) mismatches.push_back("encoded minimum " + std::to_string(v) + " but r_n = " + std::to_string(r));
  }
  std::ostringstream text;
  text << "r=" << p.r << " s=" << p.s << " t=" << p.t << " q=" << p.q << " n=" << p.n << " b0=" << p.b0 << "\n";
  GenArgs g;
  g.common = a.common;
  g.output = a.output;
  return gen_emit(ctx, g, io::to_json(p), text.str(), mismatches);
}

// ---- bench ----

struct BenchArgs {
  Common common;
  std::string suite = "harmonic";
  std::uint64_t seed = 1;
  int count = 50;
};

struct Column {
  double ms = 0;
  OpCounter ops;
};

template <class F>
Int timed(Column& col, F&& f) {
  Timer timer;
  const Int v = f(&col.ops);
  col.ms += timer.ms();
  return v;
}

Json columns_json(const std::map<std::string, Column>& cols) {
  Json out = Json::object();
  for (const auto& [name, col] : cols) out[name] = timings(col.ms, col.ops);
  return out;
}

int bench(Ctx& ctx, const BenchArgs& a) {
  std::map<std::string, Column> cols;
  std::vector<std::string> mismatches;
  Json extra = Json::object();
  int instances = 0;
  const Limits& lim = ctx.limits;

  auto compare = [&](int index, const std::string& name, Int got, Int want) {
    if (got != want)
      mismatches.push_back("instance " + std::to_string(index) + ": " + name + " gives " + std::to_string(got) +
                           ", oracle " + std::to_string(want));
  };

  if (a.suite == "harmonic") {
    for (int i = 0; i < a.count; ++i) {
      const auto ts = random_system({a.seed + static_cast<std::uint64_t>(i), 2 + i % 6, 64, true, JitterMode::Uniform});
      const auto q = ResponseQuery::for_task(ts, ts.size() - 1);
      const Int want = timed(cols["bruteforce"], [&](OpCounter* o) { return response_bruteforce(q, lim, o); });
      compare(i, "harmonic", timed(cols["harmonic"], [&](OpCounter* o) { return response_harmonic(q, o); }), want);
      compare(i, "lcm-scan", timed(cols["lcm-scan"], [&](OpCounter* o) { return response_lcm_scan(q, lim, o); }), want);
      compare(i, "turing", timed(cols["turing"], [&](OpCounter* o) { return response_turing(q, lim, o); }), want);
      ++instances;
    }
  } else if (a.suite == "mixing" || a.suite == "general-mix") {
    const bool harmonic = a.suite == "mixing";
    for (int i = 0; i < a.count; ++i) {
      RandomMixSpec spec;
      spec.seed = a.seed + static_cast<std::uint64_t>(i);
      spec.n = 1 + i % 5;
      spec.harmonic = harmonic;
      MixInstance inst = random_mix(spec);
      if (!harmonic) {
        inst.w0 = 1;
        if (is_unbounded(inst)) continue;
      }
      const Int want =
          timed(cols["bruteforce"], [&](OpCounter* o) { return solve_bruteforce(inst, lim, o).objective; });
      if (harmonic)
        compare(i, "harmonic", timed(cols["harmonic"], [&](OpCounter* o) { return solve_harmonic(inst, o).objective; }),
                want);
      else
        compare(i, "shift",
                timed(cols["shift"], [&](OpCounter* o) { return solve_general_via_shift(inst, lim, o).objective; }),
                want);
      ++instances;
    }
  } else if (a.suite == "scaling") {
    // mean response_harmonic operation counts over a p_max grid and an n grid
    auto mean_ops = [&](int n, Int p_max) {
      std::uint64_t total = 0;
      int drawn = 0;
      for (std::uint64_t i = 0; drawn < a.count; ++i) {
        // large n with small periods often overloads; such seeds are skipped
        require(i < 50 * static_cast<std::uint64_t>(a.count), ErrorKind::GenerationFailed,
                "too few loadable systems for n = " + std::to_string(n));
        TaskSystem ts;
        try {
          ts = random_system({a.seed + i, n, p_max, true, JitterMode::Uniform});
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::GenerationFailed) continue;
          throw;
        }
        ++drawn;
        const auto q = ResponseQuery::for_task(ts, ts.size() - 1);
        OpCounter ops;
        Timer timer;
        const Int got = response_harmonic(q, &ops);
        cols["harmonic"].ms += timer.ms();
        cols["harmonic"].ops.arithmetic += ops.arithmetic;
        total += ops.arithmetic;
        if (a.common.verify) compare(instances, "harmonic", got, response_turing(q, lim));
        ++instances;
      }
      return static_cast<double>(total) / a.count;
    };
    Json by_p = Json::array(), by_n = Json::array();
    for (int bits : {6, 12, 18}) by_p.push_back({{"n", 8}, {"p_max", Int{1} << bits}, {"mean_ops", mean_ops(8, Int{1} << bits)}});
    for (int n : {8, 16, 32}) by_n.push_back({{"n", n}, {"p_max", 4096}, {"mean_ops", mean_ops(n, 4096)}});
    extra = {{"by_p_max", by_p}, {"by_n", by_n}};
  } else {
    fail(ErrorKind::InvalidInstance, "unknown suite " + a.suite);
  }

  Json result{{"instances", instances}, {"mismatches", mismatches.size()}};
  if (!extra.empty()) result["scaling"] = extra;
  Json report{{"command", "bench"},
              {"algorithm", a.suite},
              {"instance", {{"suite", a.suite}, {"seed", a.seed}, {"count", a.count}}},
              {"result", result},
              {"certificates", Json::object()},
              {"timings", columns_json(cols)}};
  std::ostringstream text;
  text << a.suite << ": " << instances << " instances, " << mismatches.size() << " mismatches\n";
  for (const auto& [name, col] : cols)
    text << "  " << name << ": " << col.ms << " ms, " << col.ops.arithmetic << " ops\n";
  const int code = finish(ctx, a.common, report, text.str(), a.common.verify ? mismatches : std::vector<std::string>{});
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Response-time analysis, mixing-set and 4-block solvers", "rtmix"};
  app.require_subcommand(1);
  Ctx ctx{out, err, Limits{}};

  auto* rta = app.add_subcommand("rta", "Response-time analysis")->require_subcommand(1);
  RtaArgs rta_args;
  auto* rta_cmd = rta->add_subcommand("compute", "Response time of every task");
  rta_cmd->add_option("--input", rta_args.input, "Task-system JSON")->required();
  rta_cmd->add_option("--algorithm", rta_args.algorithm)
      ->check(CLI::IsMember({"auto", "harmonic", "lcm-scan", "turing", "jitter-free", "bruteforce"}));
  rta_cmd->add_flag("--require-schedulable", rta_args.require_schedulable, "Exit 1 unless every deadline is met");
  add_common(rta_cmd, rta_args.common);

  auto* mix = app.add_subcommand("mix", "Mixing-set programs")->require_subcommand(1);
  MixArgs mix_args;
  auto* mix_cmd = mix->add_subcommand("solve", "Optimal mixing-set solution");
  mix_cmd->add_option("--input", mix_args.input, "Mixing JSON")->required();
  mix_cmd->add_option("--algorithm", mix_args.algorithm)
      ->check(CLI::IsMember({"auto", "harmonic", "bruteforce", "via-rtc", "shift"}));
  add_common(mix_cmd, mix_args.common);

  auto* gen = app.add_subcommand("gen", "Instance generators")->require_subcommand(1);
  GenArgs gen_args;
  auto* gen_extreme_cmd = gen->add_subcommand("extreme", "Tight harmonic full-utilization system");
  gen_extreme_cmd->add_option("--n", gen_args.n, "Number of tasks (>= 3)");
  gen_extreme_cmd->add_option("--p1", gen_args.p1, "Period of the first task");
  gen_extreme_cmd->add_option("--c", gen_args.c, "Leading costs: one value or n - 2 values")->delimiter(',');
  gen_extreme_cmd->add_option("--jitter", gen_args.jitter, "p or zero")->check(CLI::IsMember({"p", "zero"}));
  auto* gen_tight_cmd = gen->add_subcommand("tight-mix", "Mixing instance with optimum n 2^n - 1");
  gen_tight_cmd->add_option("--n", gen_args.n);
  auto* gen_random_cmd = gen->add_subcommand("random", "Seeded random task system");
  gen_random_cmd->add_option("--seed", gen_args.seed);
  gen_random_cmd->add_option("--n", gen_args.n);
  gen_random_cmd->add_option("--p-max", gen_args.p_max);
  gen_random_cmd->add_flag("--harmonic", gen_args.harmonic);
  gen_random_cmd->add_option("--jitter", gen_args.jitter, "zero, full or uniform")
      ->check(CLI::IsMember({"zero", "full", "p", "uniform"}));
  auto* gen_mix_cmd = gen->add_subcommand("random-mix", "Seeded random bounded mixing instance");
  gen_mix_cmd->add_option("--seed", gen_args.seed);
  gen_mix_cmd->add_option("--n", gen_args.n);
  gen_mix_cmd->add_option("--a-max", gen_args.a_max);
  gen_mix_cmd->add_option("--b-abs", gen_args.b_abs);
  gen_mix_cmd->add_option("--w-max", gen_args.w_max);
  gen_mix_cmd->add_flag("--harmonic", gen_args.harmonic);
  for (auto* g : {gen_extreme_cmd, gen_tight_cmd, gen_random_cmd, gen_mix_cmd}) {
    g->add_option("--output,-o", gen_args.output, "Write the instance to a file");
    add_common(g, gen_args.common);
  }

  auto* sim = app.add_subcommand("sim", "Discrete-time schedule simulation")->require_subcommand(1);
  SimArgs sim_args;
  auto* sim_cmd = sim->add_subcommand("run", "Simulate a release pattern");
  sim_cmd->add_option("--input", sim_args.input, "Task-system JSON")->required();
  sim_cmd->add_option("--releases", sim_args.releases, "Release-pattern JSON (default: synchronous periodic)");
  sim_cmd->add_option("--horizon", sim_args.horizon)->required()->check(CLI::NonNegativeNumber);
  sim_cmd->add_flag("--gantt", sim_args.gantt, "Include a text Gantt strip");
  sim_cmd->add_option("--measure", sim_args.measure)->check(CLI::IsMember({"release", "arrival"}));
  add_common(sim_cmd, sim_args.common);

  auto* blockip = app.add_subcommand("blockip", "Simple 4-block integer programs")->require_subcommand(1);
  BlockArgs block_args;
  auto* block_solve_cmd = blockip->add_subcommand("solve", "Minimise a simple 4-block program");
  block_solve_cmd->add_option("--input", block_args.input, "4-block JSON")->required();
  block_solve_cmd->add_option("--H", block_args.H, "Objective bound (default sum |w| u)");
  block_solve_cmd->add_option("--budget", block_args.budget, "Node budget per 2-stage solve");
  add_common(block_solve_cmd, block_args.common);
  auto* block_encode_cmd = blockip->add_subcommand("encode-rtc", "Encode a jitter-free response query");
  block_encode_cmd->add_option("--input", block_args.input, "Task-system JSON")->required();
  block_encode_cmd->add_option("--output,-o", block_args.output, "Write the instance to a file");
  add_common(block_encode_cmd, block_args.common);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Seeded benchmark suites");
  bench_cmd->add_option("--suite", bench_args.suite)
      ->check(CLI::IsMember({"harmonic", "mixing", "general-mix", "scaling"}));
  bench_cmd->add_option("--seed", bench_args.seed);
  bench_cmd->add_option("--count", bench_args.count)->check(CLI::PositiveNumber);
  add_common(bench_cmd, bench_args.common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : BadInput;
  }

  try {
    ctx.limits = Limits::from_env();
    if (rta_cmd->parsed()) return rta_compute(ctx, rta_args);
    if (mix_cmd->parsed()) return mix_solve(ctx, mix_args);
    if (gen_extreme_cmd->parsed()) return gen_extreme(ctx, gen_args);
    if (gen_tight_cmd->parsed()) return gen_tight_mix(ctx, gen_args);
    if (gen_random_cmd->parsed()) return gen_random(ctx, gen_args);
    if (gen_mix_cmd->parsed()) return gen_random_mix(ctx, gen_args);
    if (sim_cmd->parsed()) return sim_run(ctx, sim_args);
    if (block_solve_cmd->parsed()) return blockip_solve(ctx, block_args);
    if (block_encode_cmd->parsed()) return blockip_encode(ctx, block_args);
    if (bench_cmd->parsed()) return bench(ctx, bench_args);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return VerifyFailed;
  }
  return BadInput;
}

}  // namespace rtmix::cli
