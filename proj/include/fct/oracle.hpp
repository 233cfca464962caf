#pragma once

// Exact brute-force solvers for small instances. These are the ground truth
// the approximation algorithms are tested against, so none of them call into
// the transportation solver or the approximation code.

#include "fct/balanced_sets.hpp"
#include "fct/model.hpp"
#include "fct/problems.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace fct {

struct OracleResult {
  Rational cost;
  FlowSolution flow;
};

namespace detail {

class RollbackDsu {
 public:
  explicit RollbackDsu(std::size_t size) : parent_(size), rank_(size, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    history_.push_back({b, rank_[a] == rank_[b]});
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }
  void rollback() {
    auto [b, bumped] = history_.back();
    history_.pop_back();
    std::size_t a = parent_[b];
    parent_[b] = b;
    if (bumped) --rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
  std::vector<std::pair<std::size_t, bool>> history_;
};

// The unique flow supported on a forest, or nullopt if some flow would be
// negative or some component is unbalanced.
inline std::optional<std::vector<std::int64_t>> forest_flow(const Instance& inst,
                                                            const std::vector<Edge>& edges) {
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  std::vector<std::int64_t> residual(n + m);
  for (std::size_t i = 0; i < n; ++i) residual[i] = inst.supply[i];
  for (std::size_t j = 0; j < m; ++j) residual[n + j] = inst.demand[j];
  std::vector<std::vector<std::size_t>> incident(n + m);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    incident[edges[k].first].push_back(k);
    incident[n + edges[k].second].push_back(k);
  }
  std::vector<std::size_t> degree(n + m);
  std::vector<std::size_t> leaves;
  for (std::size_t v = 0; v < n + m; ++v) {
    degree[v] = incident[v].size();
    if (degree[v] == 1) leaves.push_back(v);
  }
  std::vector<bool> done(edges.size(), false);
  std::vector<std::int64_t> flow(edges.size(), 0);
  while (!leaves.empty()) {
    std::size_t v = leaves.back();
    leaves.pop_back();
    if (degree[v] != 1) continue;
    std::size_t k = *std::find_if(incident[v].begin(), incident[v].end(),
                                  [&](std::size_t e) { return !done[e]; });
    done[k] = true;
    std::int64_t x = residual[v];
    if (x < 0) return std::nullopt;
    flow[k] = x;
    residual[v] = 0;
    std::size_t u = v < n ? n + edges[k].second : edges[k].first;
    residual[u] -= x;
    --degree[v];
    if (--degree[u] == 1) leaves.push_back(u);
  }
  for (auto r : residual)
    if (r != 0) return std::nullopt;
  return flow;
}

}  // namespace detail

/// Exact FCT optimum by enumerating forest supports over the allowed edges.
/// The flow on a forest is unique, so each support is evaluated directly.
inline OracleResult exact_fct(const Instance& inst, std::size_t max_edges = 12) {
  require_valid(inst);
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  std::vector<Edge> allowed;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (inst.allowed(i, j)) allowed.push_back({i, j});
  if (allowed.size() > max_edges)
    throw GuardError("instance too large for the support-enumeration oracle");

  std::optional<Rational> best;
  FlowSolution best_flow;
  detail::RollbackDsu dsu(n + m);
  std::vector<Edge> chosen;

  std::function<void(std::size_t, const Rational&)> search = [&](std::size_t k,
                                                                 const Rational& fixed_so_far) {
    if (best && fixed_so_far >= *best) return;
    if (k == allowed.size()) {
      auto flow = detail::forest_flow(inst, chosen);
      if (!flow) return;
      Rational cost = 0;
      FlowSolution x;
      for (std::size_t e = 0; e < chosen.size(); ++e) {
        if ((*flow)[e] == 0) continue;
        auto [i, j] = chosen[e];
        cost += inst.fixed(i, j) + inst.linear(i, j).value() * (*flow)[e];
        x.set(i, j, Rational((*flow)[e]));
      }
      if (!best || cost < *best) {
        best = cost;
        best_flow = std::move(x);
      }
      return;
    }
    auto [i, j] = allowed[k];
    if (dsu.unite(i, n + j)) {
      chosen.push_back(allowed[k]);
      search(k + 1, fixed_so_far + inst.fixed(i, j));
      chosen.pop_back();
      dsu.rollback();
    }
    search(k + 1, fixed_so_far);
  };
  search(0, Rational(0));
  if (!best) throw InfeasibleError();
  return {*best, std::move(best_flow)};
}

namespace detail {

template <typename Cost>
struct AssignmentDp {
  const Instance& inst;
  const Matrix<Cost>& fixed;
  const Matrix<std::optional<Cost>>& linear;

  std::optional<std::pair<Cost, FlowSolution>> run(std::uint64_t max_states) const {
    const std::size_t n = inst.num_sources(), m = inst.num_sinks();
    std::vector<std::uint64_t> radix(n);
    std::uint64_t states = 1;
    for (std::size_t i = 0; i < n; ++i) {
      radix[i] = states;
      states *= static_cast<std::uint64_t>(inst.supply[i]) + 1;
      if (states > max_states) throw GuardError("instance too large for the assignment oracle");
    }
    auto decode = [&](std::uint64_t idx) {
      std::vector<std::int64_t> rem(n);
      for (std::size_t i = 0; i < n; ++i)
        rem[i] = static_cast<std::int64_t>((idx / radix[i]) % (inst.supply[i] + 1));
      return rem;
    };

    std::vector<std::vector<std::optional<Cost>>> cost(m + 1);
    std::vector<std::vector<std::uint64_t>> back(m + 1);
    cost[0].assign(states, std::nullopt);
    cost[0][states - 1] = Cost(0);  // all supply remaining
    std::vector<std::int64_t> d(n, 0);
    for (std::size_t j = 0; j < m; ++j) {
      cost[j + 1].assign(states, std::nullopt);
      back[j + 1].assign(states, 0);
      for (std::uint64_t idx = 0; idx < states; ++idx) {
        if (!cost[j][idx]) continue;
        const auto rem = decode(idx);
        std::vector<std::int64_t> tail(n + 1, 0);  // Σ usable remaining from i on
        for (std::size_t i = n; i-- > 0;)
          tail[i] = tail[i + 1] + (linear(i, j) ? rem[i] : 0);
        std::function<void(std::size_t, std::int64_t, Cost, std::uint64_t)> place =
            [&](std::size_t i, std::int64_t left, Cost acc, std::uint64_t next) {
              if (i == n) {
                if (left != 0) return;
                auto& slot = cost[j + 1][next];
                if (!slot || acc < *slot) {
                  slot = acc;
                  back[j + 1][next] = idx;
                }
                return;
              }
              if (left > tail[i]) return;
              place(i + 1, left, acc, next);
              if (!linear(i, j)) return;
              const std::int64_t hi = std::min(left, rem[i]);
              for (std::int64_t q = 1; q <= hi; ++q)
                place(i + 1, left - q, acc + fixed(i, j) + *linear(i, j) * Cost(q),
                      next - static_cast<std::uint64_t>(q) * radix[i]);
            };
        place(0, inst.demand[j], *cost[j][idx], idx);
      }
    }
    if (!cost[m][0]) return std::nullopt;
    FlowSolution x;
    std::uint64_t idx = 0;
    for (std::size_t j = m; j-- > 0;) {
      std::uint64_t prev = back[j + 1][idx];
      auto before = decode(prev), after = decode(idx);
      for (std::size_t i = 0; i < n; ++i)
        if (before[i] != after[i]) x.set(i, j, Rational(before[i] - after[i]));
      idx = prev;
    }
    return std::pair{*cost[m][0], std::move(x)};
  }
};

}  // namespace detail

/// Exact FCT optimum by dynamic programming over integral assignments, sink by
/// sink, with the vector of remaining supplies as state. Integral optima exist
/// because forest flows with integral marginals are integral. Runs on 64-bit
/// integers after scaling costs to a common denominator when that is safe.
inline OracleResult exact_fct_by_assignment(const Instance& inst,
                                            std::uint64_t max_states = 2'000'000) {
  require_valid(inst);
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  BigInt lcm = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      lcm = boost::multiprecision::lcm(lcm, denominator(inst.fixed(i, j)));
      if (inst.allowed(i, j))
        lcm = boost::multiprecision::lcm(lcm, denominator(inst.linear(i, j).value()));
    }
  BigInt bound = 0;
  const BigInt total = inst.total_supply();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      bound += numerator(inst.fixed(i, j) * Rational(lcm));
      if (inst.allowed(i, j)) bound += numerator(inst.linear(i, j).value() * Rational(lcm)) * total;
    }

  if (bound < BigInt(std::numeric_limits<std::int64_t>::max() / 4)) {
    Matrix<std::int64_t> fixed(n, m, 0);
    Matrix<std::optional<std::int64_t>> linear(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        fixed(i, j) = numerator(inst.fixed(i, j) * Rational(lcm)).convert_to<std::int64_t>();
        if (inst.allowed(i, j))
          linear(i, j) = numerator(inst.linear(i, j).value() * Rational(lcm)).convert_to<std::int64_t>();
      }
    auto result = detail::AssignmentDp<std::int64_t>{inst, fixed, linear}.run(max_states);
    if (!result) throw InfeasibleError();
    return {Rational(result->first) / Rational(lcm), std::move(result->second)};
  }
  Matrix<std::optional<Rational>> linear(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (inst.allowed(i, j)) linear(i, j) = inst.linear(i, j).value();
  auto result = detail::AssignmentDp<Rational>{inst, inst.fixed, linear}.run(max_states);
  if (!result) throw InfeasibleError();
  return {result->first, std::move(result->second)};
}

struct PartitionResult {
  std::size_t parts = 0;
  BalancedPartition partition;
};

/// Maximum number of parts in a partition of sources ∪ sinks into balanced
/// sets, by subset dynamic programming. For PFCT-U, opt = n + m - parts.
inline PartitionResult exact_balanced_partition(const Instance& inst, std::size_t max_ground = 16) {
  require_valid(inst);
  const std::size_t n = inst.num_sources(), m = inst.num_sinks(), ground = n + m;
  if (ground > max_ground) throw GuardError("instance too large for the partition oracle");
  std::vector<Element> elements;
  for (std::size_t i = 0; i < n; ++i) elements.push_back({Side::source, i, inst.supply[i]});
  for (std::size_t j = 0; j < m; ++j) elements.push_back({Side::sink, j, inst.demand[j]});

  const std::uint32_t full = (std::uint32_t{1} << ground) - 1;
  std::vector<std::int64_t> net(std::size_t{full} + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const auto& e = elements[low];
    net[mask] = net[mask & (mask - 1)] + (e.side == Side::source ? e.weight : -e.weight);
  }
  std::vector<int> best(std::size_t{full} + 1, -1);
  std::vector<std::uint32_t> choice(std::size_t{full} + 1, 0);
  best[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (net[mask] != 0) continue;
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t part = sub | low;
      if (net[part] == 0 && best[mask ^ part] >= 0 && best[mask ^ part] + 1 > best[mask]) {
        best[mask] = best[mask ^ part] + 1;
        choice[mask] = part;
      }
      if (sub == 0) break;
    }
  }
  PartitionResult result;
  result.parts = static_cast<std::size_t>(best[full]);
  for (std::uint32_t mask = full; mask != 0; mask ^= choice[mask]) {
    std::vector<Element> part;
    for (std::size_t k = 0; k < ground; ++k)
      if (choice[mask] >> k & 1u) part.push_back(elements[k]);
    result.partition.parts.push_back(make_balanced_set(std::move(part)));
  }
  std::sort(result.partition.parts.begin(), result.partition.parts.end());
  return result;
}

/// Minimum directed Steiner tree cost (Dreyfus-Wagner over terminal subsets).
inline Rational exact_dst(const DstInstance& dst, std::size_t max_vertices = 7) {
  if (auto violation = validate_dst(dst)) throw UsageError("invalid DST instance: " + *violation);
  const std::size_t V = dst.num_vertices;
  if (V > max_vertices) throw GuardError("instance too large for the DST oracle");
  std::vector<std::size_t> terms;
  for (auto t : dst.terminals)
    if (t != dst.root && std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);

  Matrix<ExtRational> dist(V, V, ExtRational::infinity());
  for (std::size_t v = 0; v < V; ++v) dist(v, v) = ExtRational(0);
  for (const auto& e : dst.edges)
    if (ExtRational(e.cost) < dist(e.from, e.to)) dist(e.from, e.to) = ExtRational(e.cost);
  for (std::size_t k = 0; k < V; ++k)
    for (std::size_t i = 0; i < V; ++i)
      for (std::size_t j = 0; j < V; ++j)
        if (dist(i, k) + dist(k, j) < dist(i, j)) dist(i, j) = dist(i, k) + dist(k, j);

  const std::size_t k = terms.size();
  if (k == 0) return 0;
  const std::size_t subsets = std::size_t{1} << k;
  std::vector<std::vector<ExtRational>> dp(subsets, std::vector<ExtRational>(V, ExtRational::infinity()));
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t v = 0; v < V; ++v) dp[std::size_t{1} << t][v] = dist(v, terms[t]);
  for (std::size_t s = 1; s < subsets; ++s) {
    if (std::has_single_bit(s)) continue;
    std::vector<ExtRational> merged(V, ExtRational::infinity());
    for (std::size_t v = 0; v < V; ++v)
      for (std::size_t sub = (s - 1) & s; sub != 0; sub = (sub - 1) & s)
        if (dp[sub][v] + dp[s ^ sub][v] < merged[v]) merged[v] = dp[sub][v] + dp[s ^ sub][v];
    for (std::size_t v = 0; v < V; ++v)
      for (std::size_t u = 0; u < V; ++u)
        if (dist(v, u) + merged[u] < dp[s][v]) dp[s][v] = dist(v, u) + merged[u];
  }
  const ExtRational& answer = dp[subsets - 1][dst.root];
  if (answer.is_infinite()) throw UsageError("infeasible DST");
  return answer.value();
}

/// Minimum number of sets covering every element.
inline std::size_t exact_min_dominating(const SetCoverInstance& sc, std::size_t max_sets = 12) {
  if (auto violation = validate_set_cover(sc)) throw UsageError("invalid set cover: " + *violation);
  if (sc.num_sets > max_sets) throw GuardError("instance too large for the set cover oracle");
  std::size_t best = sc.num_sets;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << sc.num_sets); ++mask) {
    auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size >= best) continue;
    std::vector<bool> covered(sc.num_elements, false);
    for (std::size_t v = 0; v < sc.num_sets; ++v)
      if (mask >> v & 1u)
        for (auto u : sc.members[v]) covered[u] = true;
    if (std::all_of(covered.begin(), covered.end(), [](bool c) { return c; })) best = size;
  }
  return best;
}

namespace detail {

// Whether the uncapacitated network using edges in `mask` routes all supply.
inline bool digraph_feasible(const DigraphInstance& dg, std::uint32_t mask) {
  const std::size_t V = dg.num_vertices, s = V, t = V + 1;
  std::int64_t total = 0;
  for (auto [v, a] : dg.sources) total += a;
  Matrix<std::int64_t> cap(V + 2, V + 2, 0);
  for (auto [v, a] : dg.sources) cap(s, v) += a;
  for (auto [v, b] : dg.sinks) cap(v, t) += b;
  for (std::size_t k = 0; k < dg.edges.size(); ++k)
    if (mask >> k & 1u) cap(dg.edges[k].from, dg.edges[k].to) = total;
  std::int64_t flow = 0;
  while (flow < total) {
    std::vector<std::size_t> pred(V + 2, V + 2);
    pred[s] = s;
    std::deque<std::size_t> queue{s};
    while (!queue.empty() && pred[t] == V + 2) {
      auto u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < V + 2; ++v)
        if (pred[v] == V + 2 && cap(u, v) > 0) {
          pred[v] = u;
          queue.push_back(v);
        }
    }
    if (pred[t] == V + 2) return false;
    std::int64_t push = total;
    for (auto v = t; v != s; v = pred[v]) push = std::min(push, cap(pred[v], v));
    for (auto v = t; v != s; v = pred[v]) {
      cap(pred[v], v) -= push;
      cap(v, pred[v]) += push;
    }
    flow += push;
  }
  return true;
}

}  // namespace detail

struct DigraphOracleResult {
  Rational cost;
  std::vector<std::size_t> used_edges;  // indices into DigraphInstance::edges
};

/// Exact PFCT-Digraph optimum: the cheapest edge subset that admits a feasible
/// uncapacitated flow. Subsets are explored by dropping edges while the
/// remaining network stays feasible.
inline DigraphOracleResult exact_digraph(const DigraphInstance& dg, std::size_t max_edges = 20) {
  if (auto violation = validate_digraph(dg)) throw UsageError("invalid digraph instance: " + *violation);
  const std::size_t E = dg.edges.size();
  if (E > max_edges) throw GuardError("instance too large for the digraph oracle");
  const std::uint32_t all = E == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << E) - 1;
  if (!detail::digraph_feasible(dg, all)) throw UsageError("infeasible digraph instance");

  Rational best = 0;
  for (const auto& e : dg.edges) best += e.cost;
  std::uint32_t best_mask = all;
  std::function<void(std::size_t, std::uint32_t, const Rational&, std::uint32_t)> search =
      [&](std::size_t k, std::uint32_t kept, const Rational& kept_cost, std::uint32_t avail) {
        if (kept_cost >= best) return;
        if (k == E) {
          best = kept_cost;
          best_mask = kept;
          return;
        }
        const std::uint32_t without = avail & ~(std::uint32_t{1} << k);
        if (detail::digraph_feasible(dg, without)) search(k + 1, kept, kept_cost, without);
        search(k + 1, kept | (std::uint32_t{1} << k), kept_cost + dg.edges[k].cost, avail);
      };
  search(0, 0, Rational(0), all);
  DigraphOracleResult result{best, {}};
  for (std::size_t k = 0; k < E; ++k)
    if (best_mask >> k & 1u) result.used_edges.push_back(k);
  return result;
}

}  // namespace fct
