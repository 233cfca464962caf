#pragma once

// Greedy 2-approximation for pure instances with sink-independent fixed
// costs, with the bounds used to certify it.

#include "fct/model.hpp"
#include "fct/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace fct {

/// Sources by nonincreasing f_i and sinks by nonincreasing b_j, ties by index.
struct SortedView {
  std::vector<std::size_t> source_order;  // rank -> source
  std::vector<std::size_t> sink_order;    // rank -> sink
  std::vector<std::size_t> source_rank;   // source -> rank
  std::vector<std::size_t> sink_rank;     // sink -> rank
  std::vector<Rational> f;                // f in source rank order
  std::vector<std::int64_t> a;            // a in source rank order
  std::vector<std::int64_t> b;            // b in sink rank order
};

inline SortedView make_sorted_view(const Instance& inst) {
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  SortedView v;
  v.source_order.resize(n);
  v.sink_order.resize(m);
  std::iota(v.source_order.begin(), v.source_order.end(), std::size_t{0});
  std::iota(v.sink_order.begin(), v.sink_order.end(), std::size_t{0});
  std::stable_sort(v.source_order.begin(), v.source_order.end(), [&](std::size_t x, std::size_t y) {
    return inst.fixed(x, 0) > inst.fixed(y, 0);
  });
  std::stable_sort(v.sink_order.begin(), v.sink_order.end(),
                   [&](std::size_t x, std::size_t y) { return inst.demand[x] > inst.demand[y]; });
  v.source_rank.resize(n);
  v.sink_rank.resize(m);
  for (std::size_t r = 0; r < n; ++r) {
    v.source_rank[v.source_order[r]] = r;
    v.f.push_back(inst.fixed(v.source_order[r], 0));
    v.a.push_back(inst.supply[v.source_order[r]]);
  }
  for (std::size_t r = 0; r < m; ++r) {
    v.sink_rank[v.sink_order[r]] = r;
    v.b.push_back(inst.demand[v.sink_order[r]]);
  }
  return v;
}

inline bool is_pfct_s(const Instance& inst) {
  const VariantTag tag = classify_variant(inst);
  return tag.pure && tag.sink_independent;
}

inline void require_pfct_s(const Instance& inst) {
  require_valid(inst);
  if (!is_pfct_s(inst)) throw UsageError("requires PFCT-S");
}

/// Two-pointer sweep over the sorted view, sending min(remaining a, remaining b).
inline FlowSolution greedy_solve(const Instance& inst) {
  require_pfct_s(inst);
  const SortedView v = make_sorted_view(inst);
  std::vector<std::int64_t> a = v.a, b = v.b;
  FlowSolution x;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const std::int64_t q = std::min(a[i], b[j]);
    x.add(v.source_order[i], v.sink_order[j], Rational(q));
    a[i] -= q;
    b[j] -= q;
    if (a[i] == 0) ++i;
    if (b[j] == 0) ++j;
  }
  return x;
}

/// Σ (x_ij / b_j) f_i.
inline Rational lp_cost(const Instance& inst, const FlowSolution& x) {
  Rational total = 0;
  for (const auto& [edge, flow] : x.entries())
    total += flow / Rational(inst.demand[edge.second]) * inst.fixed(edge.first, 0);
  return total;
}

/// Smallest prefix length of the demand-sorted sinks with total demand ≥ t.
inline std::size_t pi(const Instance& inst, const Rational& t) {
  const SortedView v = make_sorted_view(inst);
  if (t <= 0 || t > Rational(inst.total_supply())) throw UsageError("t out of range for pi");
  std::int64_t prefix = 0;
  for (std::size_t r = 0; r < v.b.size(); ++r) {
    prefix += v.b[r];
    if (Rational(prefix) >= t) return r + 1;
  }
  return v.b.size();
}

namespace detail {

// π at each source-prefix breakpoint a([1..i]), i = 1..n.
inline std::vector<std::size_t> pi_breakpoints(const Instance& inst, const SortedView& v) {
  std::vector<std::size_t> out;
  std::int64_t prefix = 0;
  for (auto a : v.a) {
    prefix += a;
    out.push_back(pi(inst, Rational(prefix)));
  }
  return out;
}

}  // namespace detail

/// Σ_i (f_i - f_{i+1}) π(a([i])) over the sorted view, with f_{n+1} = 0.
inline Rational opt_lower_bound(const Instance& inst) {
  require_pfct_s(inst);
  const SortedView v = make_sorted_view(inst);
  const auto pis = detail::pi_breakpoints(inst, v);
  Rational total = 0;
  for (std::size_t r = 0; r < v.f.size(); ++r) {
    const Rational next = r + 1 < v.f.size() ? v.f[r + 1] : Rational(0);
    total += (v.f[r] - next) * Rational(static_cast<std::int64_t>(pis[r]));
  }
  return total;
}

/// opt_lower_bound + Σ_{i≥2} f_i in sorted order.
inline Rational greedy_upper_bound(const Instance& inst) {
  Rational total = opt_lower_bound(inst);
  const SortedView v = make_sorted_view(inst);
  for (std::size_t r = 1; r < v.f.size(); ++r) total += v.f[r];
  return total;
}

/// False iff there are ranks i < i', j < j' with x_{ij'} > 0 and x_{i'j} > 0.
inline bool no_crossing_check(const Instance& inst, const FlowSolution& x) {
  const SortedView v = make_sorted_view(inst);
  std::vector<std::pair<std::size_t, std::size_t>> ranked;
  for (const auto& [edge, flow] : x.entries())
    ranked.push_back({v.source_rank.at(edge.first), v.sink_rank.at(edge.second)});
  for (const auto& [i, jp] : ranked)
    for (const auto& [ip, j] : ranked)
      if (i < ip && j < jp) return false;
  return true;
}

/// Greedy cost on inst2 ≤ opt(inst1) + Δ f_1 + Σ_{i≥2} f_i, given that the two
/// instances share sources and π2 ≤ π1 + Δ at every source breakpoint.
/// opt(inst1) comes from the exact oracle, so this is meant for small inputs.
inline bool compare_residual_bound(const Instance& inst1, const Instance& inst2, std::int64_t delta) {
  require_pfct_s(inst1);
  require_pfct_s(inst2);
  if (delta < 0) throw UsageError("negative shift");
  if (inst1.supply != inst2.supply) throw UsageError("instances must share sources");
  for (std::size_t i = 0; i < inst1.num_sources(); ++i)
    if (inst1.fixed(i, 0) != inst2.fixed(i, 0)) throw UsageError("instances must share sources");

  const SortedView v1 = make_sorted_view(inst1), v2 = make_sorted_view(inst2);
  const auto pi1 = detail::pi_breakpoints(inst1, v1);
  const auto pi2 = detail::pi_breakpoints(inst2, v2);
  for (std::size_t r = 0; r < pi1.size(); ++r)
    if (pi2[r] > pi1[r] + static_cast<std::size_t>(delta)) throw UsageError("π shift exceeds Δ");

  Rational bound = exact_fct_by_assignment(inst1).cost + Rational(delta) * v1.f.front();
  for (std::size_t r = 1; r < v1.f.size(); ++r) bound += v1.f[r];
  return evaluate_cost(inst2, greedy_solve(inst2)) <= bound;
}

}  // namespace fct
