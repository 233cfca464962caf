#pragma once

// Exact solver for linear objectives over the transportation polytope, and
// cycle cancellation to forest support.

#include "fct/model.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

namespace fct {

/// Objective coefficients; an infinite entry forbids its edge.
using WeightMatrix = Matrix<ExtRational>;

struct TransportResult {
  FlowSolution flow;
  Rational value;
};

inline Rational weighted_cost(const FlowSolution& x, const WeightMatrix& w) {
  Rational total = 0;
  for (const auto& [edge, flow] : x.entries()) {
    const ExtRational& we = w(edge.first, edge.second);
    if (we.is_infinite()) throw UsageError("flow on an edge with infinite weight");
    total += we.value() * flow;
  }
  return total;
}

namespace detail {

// Returns the edges of the first cycle closed when support edges are added in
// lexicographic order, listed so that consecutive edges share an endpoint.
inline std::optional<std::vector<Edge>> find_support_cycle(const FlowSolution& x, std::size_t n,
                                                           std::size_t m) {
  const std::size_t nodes = n + m;
  DisjointSets sets(nodes);
  std::vector<std::vector<std::pair<std::size_t, Edge>>> adj(nodes);
  for (const auto& [edge, flow] : x.entries()) {
    const std::size_t u = edge.first, v = n + edge.second;
    if (sets.unite(u, v)) {
      adj[u].push_back({v, edge});
      adj[v].push_back({u, edge});
      continue;
    }
    // Path v -> u in the forest built so far, then close with (u, v).
    std::vector<std::optional<std::pair<std::size_t, Edge>>> pred(nodes);
    std::vector<bool> seen(nodes, false);
    std::deque<std::size_t> queue{v};
    seen[v] = true;
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      if (cur == u) break;
      for (const auto& [next, e] : adj[cur])
        if (!seen[next]) {
          seen[next] = true;
          pred[next] = {cur, e};
          queue.push_back(next);
        }
    }
    std::vector<Edge> cycle{edge};
    for (std::size_t cur = u; cur != v; cur = pred[cur]->first) cycle.push_back(pred[cur]->second);
    return cycle;
  }
  return std::nullopt;
}

}  // namespace detail

/// Rotates flow around support cycles until the support is a forest. Each
/// rotation moves in the direction that does not increase Σ w x; when both
/// directions cost the same, flow is pushed onto the lexicographically
/// smallest cycle edge. Marginals are preserved exactly.
inline FlowSolution cancel_cycles(FlowSolution x, const WeightMatrix& w) {
  const std::size_t n = w.rows(), m = w.cols();
  while (auto cycle = detail::find_support_cycle(x, n, m)) {
    const auto& edges = *cycle;
    Rational even_minus_odd = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const ExtRational& we = w(edges[k].first, edges[k].second);
      if (we.is_infinite()) throw UsageError("flow on an edge with infinite weight");
      even_minus_odd += (k % 2 == 0) ? we.value() : Rational(-we.value());
    }
    bool raise_even;
    if (even_minus_odd != 0) {
      raise_even = even_minus_odd < 0;
    } else {
      auto smallest = std::min_element(edges.begin(), edges.end()) - edges.begin();
      raise_even = smallest % 2 == 0;
    }
    std::optional<Rational> delta;
    for (std::size_t k = 0; k < edges.size(); ++k)
      if ((k % 2 == 0) != raise_even) {
        Rational f = x.get(edges[k].first, edges[k].second);
        if (!delta || f < *delta) delta = f;
      }
    for (std::size_t k = 0; k < edges.size(); ++k)
      x.add(edges[k].first, edges[k].second, (k % 2 == 0) == raise_even ? *delta : Rational(-*delta));
  }
  return x;
}

/// Minimizes Σ w_ij x_ij over the transportation polytope of inst, with
/// infinite-weight edges excluded. Successive shortest paths on the residual
/// network; the result is integral with forest support.
inline TransportResult solve_transportation(const Instance& inst, const WeightMatrix& w) {
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  if (w.rows() != n || w.cols() != m) throw UsageError("weight matrix has wrong shape");

  std::vector<std::int64_t> rem_a = inst.supply, rem_b = inst.demand;
  Matrix<std::int64_t> flow(n, m, 0);
  std::int64_t remaining = inst.total_supply();

  // Node ids: sources 0..n-1, sinks n..n+m-1.
  const std::size_t nodes = n + m;
  while (remaining > 0) {
    std::vector<std::optional<Rational>> dist(nodes);
    std::vector<std::size_t> pred(nodes, nodes);
    for (std::size_t i = 0; i < n; ++i)
      if (rem_a[i] > 0) dist[i] = Rational(0);
    // Bellman-Ford; residual arcs are i->j (allowed) and j->i (positive flow).
    for (std::size_t round = 0; round < nodes; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          if (w(i, j).is_infinite()) continue;
          const Rational& wij = w(i, j).value();
          if (dist[i] && (!dist[n + j] || *dist[i] + wij < *dist[n + j])) {
            dist[n + j] = *dist[i] + wij;
            pred[n + j] = i;
            changed = true;
          }
          if (flow(i, j) > 0 && dist[n + j] && (!dist[i] || *dist[n + j] - wij < *dist[i])) {
            dist[i] = *dist[n + j] - wij;
            pred[i] = n + j;
            changed = true;
          }
        }
      if (!changed) break;
    }
    std::optional<std::size_t> target;
    for (std::size_t j = 0; j < m; ++j)
      if (rem_b[j] > 0 && dist[n + j] && (!target || *dist[n + j] < *dist[n + *target])) target = j;
    if (!target) throw InfeasibleError();

    // Walk back to the originating source to find the bottleneck.
    std::int64_t bottleneck = rem_b[*target];
    std::size_t cur = n + *target;
    while (pred[cur] != nodes) {
      std::size_t prev = pred[cur];
      if (cur < n) bottleneck = std::min(bottleneck, flow(cur, prev - n));  // sink -> source arc
      cur = prev;
    }
    bottleneck = std::min(bottleneck, rem_a[cur]);
    const std::size_t origin = cur;

    cur = n + *target;
    while (pred[cur] != nodes) {
      std::size_t prev = pred[cur];
      if (cur >= n)
        flow(prev, cur - n) += bottleneck;
      else
        flow(cur, prev - n) -= bottleneck;
      cur = prev;
    }
    rem_a[origin] -= bottleneck;
    rem_b[*target] -= bottleneck;
    remaining -= bottleneck;
  }

  FlowSolution x;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (flow(i, j) > 0) x.set(i, j, Rational(flow(i, j)));
  x = cancel_cycles(std::move(x), w);
  Rational value = weighted_cost(x, w);
  return {std::move(x), std::move(value)};
}

}  // namespace fct
