#pragma once

// Bicriteria approximation for general FCT: solve the LP with per-unit
// weights c + f/p, round small normalized edge values on each tree, then
// rescale rows so every source sends exactly its supply. Sinks receive
// within (1 ± eps) of their demand.

#include "fct/model.hpp"
#include "fct/transport.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <vector>

namespace fct {

/// y = x / p with p_ij = min(a_i, b_j), plus the per-unit weights c + f/p.
struct NormalizedFractional {
  std::size_t num_sources = 0;
  std::size_t num_sinks = 0;
  Matrix<Rational> p;
  Matrix<Rational> unit_cost;     // c_ij + f_ij / p_ij on allowed edges
  std::vector<Rational> capacity;  // (a|b)_v: a for sources, then b for sinks
  std::map<Edge, Rational> y;
};

inline NormalizedFractional normalize_flow(const Instance& inst, const FlowSolution& x) {
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  NormalizedFractional nf{n, m, Matrix<Rational>(n, m), Matrix<Rational>(n, m), {}, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      nf.p(i, j) = Rational(std::min(inst.supply[i], inst.demand[j]));
      if (inst.allowed(i, j)) nf.unit_cost(i, j) = inst.linear(i, j).value() + inst.fixed(i, j) / nf.p(i, j);
    }
  for (auto a : inst.supply) nf.capacity.emplace_back(a);
  for (auto b : inst.demand) nf.capacity.emplace_back(b);
  for (const auto& [edge, flow] : x.entries()) nf.y[edge] = flow / nf.p(edge.first, edge.second);
  return nf;
}

namespace detail {

// Child edges of every vertex after rooting each tree at its lowest-index
// vertex (sources 0..n-1, then sinks n..n+m-1).
inline std::vector<std::vector<Edge>> child_groups(const NormalizedFractional& nf) {
  const std::size_t n = nf.num_sources, nodes = n + nf.num_sinks;
  std::vector<std::vector<std::pair<std::size_t, Edge>>> adj(nodes);
  DisjointSets sets(nodes);
  for (const auto& [edge, value] : nf.y) {
    const std::size_t u = edge.first, v = n + edge.second;
    if (!sets.unite(u, v)) throw UsageError("support is not a forest");
    adj[u].push_back({v, edge});
    adj[v].push_back({u, edge});
  }
  std::vector<std::vector<Edge>> children(nodes);
  std::vector<bool> seen(nodes, false);
  for (std::size_t root = 0; root < nodes; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (const auto& [v, e] : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          children[u].push_back(e);
          queue.push_back(v);
        }
    }
  }
  for (auto& group : children) std::sort(group.begin(), group.end());
  return children;
}

}  // namespace detail

/// In each child group, values y_e ≥ eps stay. The mass Σ p_e y_e of the
/// small edges is refilled cheapest first (by unit cost, then edge) at eps
/// per edge; the one edge left partially filled is set to 0.
inline NormalizedFractional round_tree(NormalizedFractional nf, const Rational& eps) {
  if (eps <= 0) throw UsageError("eps must be positive");
  for (const auto& group : detail::child_groups(nf)) {
    std::vector<Edge> small;
    Rational mass = 0;
    for (const auto& e : group)
      if (nf.y.at(e) < eps) {
        small.push_back(e);
        mass += nf.p(e.first, e.second) * nf.y.at(e);
      }
    std::stable_sort(small.begin(), small.end(), [&](const Edge& l, const Edge& r) {
      return nf.unit_cost(l.first, l.second) < nf.unit_cost(r.first, r.second);
    });
    for (const auto& e : small) {
      const Rational full = nf.p(e.first, e.second) * eps;
      if (mass >= full) {
        nf.y[e] = eps;
        mass -= full;
      } else {
        nf.y.erase(e);
        mass = 0;
      }
    }
  }
  return nf;
}

/// K(eps') = 1 / (eps' (1 - 2 eps')).
inline Rational bicriteria_cost_factor(const Rational& internal_eps) {
  return 1 / (internal_eps * (1 - 2 * internal_eps));
}

struct BicriteriaResult {
  FlowSolution flow;  // relaxation-tagged with eps
  Rational lp_value;
  Rational internal_eps;  // eps / 4
  Rational cost_factor;   // K(internal_eps)
  Rational cost_bound;    // cost_factor * lp_value
  NormalizedFractional lp;       // y from the LP solution
  NormalizedFractional rounded;  // y'
};

inline BicriteriaResult solve_bicriteria(const Instance& inst, const Rational& eps) {
  require_valid(inst);
  if (eps <= 0 || eps > make_rational(1, 4)) throw UsageError("epsilon must be in (0, 1/4]");
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  WeightMatrix w(n, m, ExtRational::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (inst.allowed(i, j))
        w(i, j) = ExtRational(inst.linear(i, j).value() +
                              inst.fixed(i, j) / Rational(std::min(inst.supply[i], inst.demand[j])));
  auto lp = solve_transportation(inst, w);
  FlowSolution forest = cancel_cycles(std::move(lp.flow), w);

  BicriteriaResult result;
  result.lp_value = lp.value;
  result.internal_eps = eps / 4;
  result.cost_factor = bicriteria_cost_factor(result.internal_eps);
  result.cost_bound = result.cost_factor * result.lp_value;
  result.lp = normalize_flow(inst, forest);
  result.rounded = round_tree(result.lp, result.internal_eps);

  FlowSolution x;
  for (const auto& [edge, value] : result.rounded.y)
    x.set(edge.first, edge.second, result.rounded.p(edge.first, edge.second) * value);
  const auto rows = row_sums(x, n);
  FlowSolution scaled;
  for (const auto& [edge, flow] : x.entries())
    scaled.set(edge.first, edge.second, flow * Rational(inst.supply[edge.first]) / rows[edge.first]);
  scaled.set_relaxation(eps);
  result.flow = std::move(scaled);
  return result;
}

}  // namespace fct
