// Exact Mixing Set solver for harmonic capacities.
//
// Write b_j = Q_j a_j + beta_j with 0 <= beta_j < a_j. For s >= 0,
//
//   f(s) = sum w_j Q_j + w0 s - sum w_j floor(s / a_j) + sum w_j [s mod a_j < beta_j].
//
// Some optimal s lies below the largest capacity M, so s is a mixed-radix
// number over the distinct capacities A_1 | A_2 | ... | A_L = M. Going from
// the top level down, the terms that only depend on the high digit are
// step functions [s < v]. Splitting s = r + A_l q folds them into a step
// function of the low part r: for fixed r the best q is 0 or one of the
// thresholds ceil((v - r) / A_l), and the folded function only changes where
// r crosses v mod A_l. Each fold therefore produces at most as many steps as
// it consumes, and the bottom level is a one-dimensional search over the
// remaining step positions.
//
// Costs are (objective, s) pairs compared lexicographically, which makes the
// optimum unique and equal to the smallest optimal s.

#include <algorithm>
#include <map>
#include <string>

#include "rtmix/mixing.hpp"

namespace rtmix {

namespace {

using Wide = __int128;

struct Cost {
  Wide value = 0;
  Wide s = 0;

  friend Cost operator+(Cost a, Cost b) { return {a.value + b.value, a.s + b.s}; }
  friend Cost operator-(Cost a, Cost b) { return {a.value - b.value, a.s - b.s}; }
  friend Cost operator*(Cost a, Wide k) { return {a.value * k, a.s * k}; }
  friend bool operator<(Cost a, Cost b) { return a.value != b.value ? a.value < b.value : a.s < b.s; }
  friend bool operator==(Cost a, Cost b) { return a.value == b.value && a.s == b.s; }
  bool is_zero() const { return value == 0 && s == 0; }
};

/// Step [x < v] carrying weight delta.
struct Step {
  Int v;
  Cost delta;
};

/// Best high digit q for each interval of the low part r; intervals start at
/// `start` and run to the next entry.
struct DigitTable {
  Int radix = 1;
  std::vector<std::pair<Int, Int>> start_q;

  Int lookup(Int r) const {
    auto it = std::upper_bound(start_q.begin(), start_q.end(), std::pair<Int, Int>{r, std::numeric_limits<Int>::max()});
    return std::prev(it)->second;
  }
};

/// Folds steps defined on [0, radix * q_count) into steps on [0, radix).
/// `slope` is the cost of one unit of the high digit.
std::vector<Step> fold(const std::vector<Step>& steps, Int radix, Int q_count, Cost slope,
                       Cost& constant, DigitTable& table, OpCounter* ops) {
  struct Item {
    Int u, e;
    Cost delta;
  };
  std::vector<Item> items;
  items.reserve(steps.size());
  std::vector<Int> qs{0};
  for (const auto& st : steps) {
    Item it{st.v / radix, st.v % radix, st.delta};
    items.push_back(it);
    if (it.u < q_count) qs.push_back(it.u);
    if (it.u + 1 < q_count) qs.push_back(it.u + 1);
  }
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  bump(ops, items.size() * 2 + qs.size());

  // cost(q) at r = 0, where theta = u + [e > 0].
  std::vector<std::pair<Int, Cost>> by_theta;
  by_theta.reserve(items.size());
  Cost total;
  for (const auto& it : items) {
    by_theta.emplace_back(it.u + (it.e > 0 ? 1 : 0), it.delta);
    total = total + it.delta;
  }
  std::sort(by_theta.begin(), by_theta.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Cost> cost(qs.size());
  {
    Cost paid_off;  // weight of steps with theta <= q
    std::size_t k = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      while (k < by_theta.size() && by_theta[k].first <= qs[i]) paid_off = paid_off + by_theta[k++].second;
      cost[i] = slope * qs[i] + (total - paid_off);
    }
  }
  bump(ops, by_theta.size() + qs.size());

  std::size_t best = 0;
  for (std::size_t i = 1; i < qs.size(); ++i)
    if (cost[i] < cost[best]) best = i;

  // Sweep r upward; at r = e the steps with that residue lose their +1.
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.e < b.e; });
  std::vector<Int> starts{0};
  std::vector<Cost> h{cost[best]};
  table.radix = radix;
  table.start_q.assign(1, {0, qs[best]});
  for (std::size_t k = 0; k < items.size();) {
    const Int e = items[k].e;
    if (e == 0) {
      ++k;
      continue;
    }
    for (; k < items.size() && items[k].e == e; ++k) {
      const auto pos = static_cast<std::size_t>(
          std::lower_bound(qs.begin(), qs.end(), items[k].u) - qs.begin());
      cost[pos] = cost[pos] - items[k].delta;
      if (cost[pos] < cost[best] || (cost[pos] == cost[best] && pos < best)) best = pos;
      bump(ops, 3);
    }
    starts.push_back(e);
    h.push_back(cost[best]);
    table.start_q.emplace_back(e, qs[best]);
  }

  std::vector<Step> out;
  for (std::size_t t = 0; t + 1 < h.size(); ++t) {
    const Cost d = h[t] - h[t + 1];
    if (d < Cost{} && !d.is_zero())
      fail(ErrorKind::InternalInvariantViolated, "folded cost is not monotone");
    if (!d.is_zero()) out.push_back({starts[t + 1], d});
  }
  constant = constant + h.back();
  return out;
}

Int narrow(Wide v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    fail(ErrorKind::OverflowLimit, "harmonic mixing value overflows");
  return static_cast<Int>(v);
}

}  // namespace

MixSolution solve_harmonic(const MixInstance& inst, OpCounter* ops) {
  validate(inst);
  const auto caps = inst.capacities();
  require(is_harmonic(caps), ErrorKind::PreconditionViolated, "capacities are not harmonic");
  if (is_unbounded(inst)) fail(ErrorKind::Unbounded, "sum w_i/a_i exceeds w0");
  if (ops) ++ops->mix_solves;
  if (inst.terms.empty()) return complete(0, inst);

  std::vector<Int> levels = caps;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const std::size_t L = levels.size();

  Cost constant;
  std::vector<std::vector<Step>> real_steps(L);
  for (const auto& t : inst.terms) {
    const auto lvl = static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), t.a) - levels.begin());
    constant.value += static_cast<Wide>(t.w) * floor_div(t.b, t.a);
    if (t.w > 0) real_steps[lvl].push_back({mod_floor(t.b, t.a), Cost{t.w, 0}});
  }
  bump(ops, inst.terms.size());

  // Per-level floor slope: sum_{a_j <= A_l} w_j A_l / a_j.
  std::vector<Wide> floor_weight(L, 0);
  for (const auto& t : inst.terms)
    for (std::size_t l = 0; l < L; ++l)
      if (t.a <= levels[l]) floor_weight[l] += static_cast<Wide>(t.w) * (levels[l] / t.a);
  bump(ops, inst.terms.size() * L);

  std::vector<Step> steps = real_steps[L - 1];
  std::vector<DigitTable> tables(L);
  for (std::size_t l = L - 1; l-- > 0;) {
    const Int radix = levels[l];
    const Int q_count = levels[l + 1] / radix;
    const Cost slope{static_cast<Wide>(inst.w0) * radix - floor_weight[l], radix};
    steps = fold(steps, radix, q_count, slope, constant, tables[l], ops);
    steps.insert(steps.end(), real_steps[l].begin(), real_steps[l].end());
  }

  // Bottom digit: r in [0, A_1), cost (w0 r, r) + sum of steps with v > r.
  std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) { return a.v < b.v; });
  Cost suffix;
  for (const auto& st : steps) suffix = suffix + st.delta;
  std::size_t k = 0;
  while (k < steps.size() && steps[k].v <= 0) suffix = suffix - steps[k++].delta;
  Cost best_cost = suffix;  // r = 0
  Int best_r = 0;
  while (k < steps.size()) {
    const Int r = steps[k].v;
    while (k < steps.size() && steps[k].v == r) suffix = suffix - steps[k++].delta;
    const Cost c = Cost{static_cast<Wide>(inst.w0) * r, r} + suffix;
    if (c < best_cost) {
      best_cost = c;
      best_r = r;
    }
  }
  bump(ops, steps.size() * 2);

  Int s = best_r;
  for (std::size_t l = 0; l + 1 < L; ++l) s += levels[l] * tables[l].lookup(s);

  MixSolution sol = complete(s, inst);
  const Cost total = constant + best_cost;
  if (narrow(total.value) != sol.objective || narrow(total.s) != s)
    fail(ErrorKind::InternalInvariantViolated,
         "harmonic fold disagrees with canonical completion at s=" + std::to_string(s));
  if (!is_feasible(sol, inst))
    fail(ErrorKind::InternalInvariantViolated, "harmonic solver returned an infeasible solution");
  return sol;
}

}  // namespace rtmix
