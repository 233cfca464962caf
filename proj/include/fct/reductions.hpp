#pragma once

// Instance generators built from other problems: digraph flow to bipartite
// PFCT by vertex splitting, directed Steiner tree to digraph flow, set cover
// to FCT-S, and 3-dimensional matching to PFCT-U with random demands.

#include "fct/model.hpp"
#include "fct/problems.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <cmath>
#include <vector>

namespace fct {

/// Gives every source no in-edges and every sink no out-edges by moving its
/// supply (demand) to a new pendant vertex joined by a zero-cost edge.
inline DigraphInstance normalize_digraph(DigraphInstance dg) {
  if (auto violation = validate_digraph(dg)) throw UsageError("invalid digraph instance: " + *violation);
  std::vector<bool> has_in(dg.num_vertices, false), has_out(dg.num_vertices, false);
  for (const auto& e : dg.edges) {
    has_out[e.from] = true;
    has_in[e.to] = true;
  }
  for (auto& [v, a] : dg.sources)
    if (has_in[v]) {
      const std::size_t fresh = dg.num_vertices++;
      dg.edges.push_back({fresh, v, Rational(0)});
      v = fresh;
    }
  for (auto& [v, b] : dg.sinks)
    if (has_out[v]) {
      const std::size_t fresh = dg.num_vertices++;
      dg.edges.push_back({v, fresh, Rational(0)});
      v = fresh;
    }
  return dg;
}

struct SplitResult {
  Instance instance;
  DigraphInstance normalized;
  std::vector<std::size_t> internal;  // vertex behind each v_out / v_in, in order
};

/// Sources are the digraph sources followed by v_out for every other vertex v;
/// sinks are the digraph sinks followed by v_in. v_out has supply D = Σ a and
/// v_in demand D, joined by a free edge. Digraph edges keep their cost as f;
/// missing pairs get f = 0, c = inf. Parallel edges keep the cheapest.
inline SplitResult split_digraph_to_bipartite(const DigraphInstance& input) {
  SplitResult out;
  out.normalized = normalize_digraph(input);
  const DigraphInstance& dg = out.normalized;
  std::int64_t total = 0;
  for (auto [v, a] : dg.sources) total += a;

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> as_source(dg.num_vertices, none), as_sink(dg.num_vertices, none);
  std::vector<bool> terminal(dg.num_vertices, false);
  for (auto [v, a] : dg.sources) terminal[v] = true;
  for (auto [v, b] : dg.sinks) terminal[v] = true;
  for (std::size_t v = 0; v < dg.num_vertices; ++v)
    if (!terminal[v]) out.internal.push_back(v);

  Instance& inst = out.instance;
  for (std::size_t k = 0; k < dg.sources.size(); ++k) {
    as_source[dg.sources[k].first] = k;
    inst.supply.push_back(dg.sources[k].second);
  }
  for (std::size_t k = 0; k < dg.sinks.size(); ++k) {
    as_sink[dg.sinks[k].first] = k;
    inst.demand.push_back(dg.sinks[k].second);
  }
  for (auto v : out.internal) {
    as_source[v] = inst.supply.size();
    as_sink[v] = inst.demand.size();
    inst.supply.push_back(total);
    inst.demand.push_back(total);
  }
  const std::size_t n = inst.supply.size(), m = inst.demand.size();
  inst.fixed = Matrix<Rational>(n, m, Rational(0));
  inst.linear = Matrix<ExtRational>(n, m, ExtRational::infinity());
  for (auto v : out.internal) inst.linear(as_source[v], as_sink[v]) = ExtRational(0);
  for (const auto& e : dg.edges) {
    if (e.from == e.to) continue;
    const std::size_t i = as_source[e.from], j = as_sink[e.to];
    if (i == none || j == none) throw Error("normalization left an edge into a source or out of a sink");
    if (inst.linear(i, j).is_infinite() || e.cost < inst.fixed(i, j)) {
      inst.fixed(i, j) = e.cost;
      inst.linear(i, j) = ExtRational(0);
    }
  }
  require_valid(inst);
  return out;
}

/// Root r supplies k units, one per terminal; each terminal demands 1. A
/// terminal with other than exactly one in-edge, or with out-edges, is served
/// through a pendant copy joined by a zero-cost edge.
inline DigraphInstance dst_to_pfct_digraph(const DstInstance& dst) {
  if (auto violation = validate_dst(dst)) throw UsageError("invalid DST instance: " + *violation);
  std::vector<std::size_t> terms;
  for (auto t : dst.terminals)
    if (t != dst.root && std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);
  if (terms.empty()) throw UsageError("DST instance has no terminals besides the root");

  std::vector<std::vector<std::size_t>> adj(dst.num_vertices);
  std::vector<std::size_t> in_degree(dst.num_vertices, 0), out_degree(dst.num_vertices, 0);
  for (const auto& e : dst.edges) {
    adj[e.from].push_back(e.to);
    ++in_degree[e.to];
    ++out_degree[e.from];
  }
  std::vector<bool> reached(dst.num_vertices, false);
  std::deque<std::size_t> queue{dst.root};
  reached[dst.root] = true;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto v : adj[u])
      if (!reached[v]) {
        reached[v] = true;
        queue.push_back(v);
      }
  }
  for (auto t : terms)
    if (!reached[t]) throw UsageError("infeasible DST");

  DigraphInstance dg{dst.num_vertices, dst.edges, {{dst.root, static_cast<std::int64_t>(terms.size())}}, {}};
  for (auto t : terms) {
    if (in_degree[t] == 1 && out_degree[t] == 0) {
      dg.sinks.push_back({t, 1});
    } else {
      const std::size_t copy = dg.num_vertices++;
      dg.edges.push_back({t, copy, Rational(0)});
      dg.sinks.push_back({copy, 1});
    }
  }
  return dg;
}

/// Sources: s* (supply |U|, f = 1) then v_out per set (supply |U|, f = 0).
/// Sinks: v_in per set (demand |U|) then one per element (demand 1).
/// Allowed edges, all with c = 0: (v_out, v_in), (s*, v_in), and (v_out, u)
/// for u in v. The optimum equals the minimum number of covering sets.
inline Instance setcover_to_fct_s(const SetCoverInstance& sc) {
  if (auto violation = validate_set_cover(sc)) throw UsageError("invalid set cover: " + *violation);
  const std::size_t sets = sc.num_sets, elements = sc.num_elements;
  const auto big = static_cast<std::int64_t>(elements);
  Instance inst;
  inst.supply.assign(1 + sets, big);
  inst.demand.assign(sets, big);
  inst.demand.resize(sets + elements, 1);
  const std::size_t n = inst.supply.size(), m = inst.demand.size();
  inst.fixed = Matrix<Rational>(n, m, Rational(0));
  inst.linear = Matrix<ExtRational>(n, m, ExtRational::infinity());
  for (std::size_t j = 0; j < m; ++j) inst.fixed(0, j) = 1;
  for (std::size_t v = 0; v < sets; ++v) {
    inst.linear(0, v) = ExtRational(0);
    inst.linear(1 + v, v) = ExtRational(0);
    for (auto u : sc.members[v]) inst.linear(1 + v, sets + u) = ExtRational(0);
  }
  require_valid(inst);
  return inst;
}

/// Number of integer vectors h with |h|_1 <= bound in the given dimension.
inline double l1_ball_size(std::size_t dimension, std::size_t bound) {
  double total = 0;
  for (std::size_t k = 0; k <= std::min(dimension, bound); ++k) {
    double term = std::pow(2.0, static_cast<double>(k));
    for (std::size_t i = 0; i < k; ++i)
      term *= static_cast<double>(dimension - i) / static_cast<double>(i + 1) *
              static_cast<double>(bound - i) / static_cast<double>(k - i);
    total += term;
  }
  return total;
}

/// True iff no integer h with 1 <= |h|_1 <= bound has Σ h_v b_v = 0.
inline bool verify_h_independence(const std::vector<std::int64_t>& b, std::size_t bound,
                                  double max_vectors = 1e7) {
  if (l1_ball_size(b.size(), bound) > max_vectors)
    throw GuardError("too many vectors for the independence check");
  // Search vectors whose first nonzero entry is positive; h and -h are equivalent.
  std::function<bool(std::size_t, std::size_t, BigInt, bool)> exists =
      [&](std::size_t v, std::size_t left, BigInt sum, bool nonzero) -> bool {
    if (nonzero && sum == 0) return true;
    if (v == b.size() || left == 0) return false;
    if (exists(v + 1, left, sum, nonzero)) return true;
    for (std::size_t mag = 1; mag <= left; ++mag) {
      const BigInt step = BigInt(b[v]) * static_cast<std::int64_t>(mag);
      if (exists(v + 1, left - mag, sum + step, true)) return true;
      if (nonzero && exists(v + 1, left - mag, sum - step, true)) return true;
    }
    return false;
  };
  return !exists(0, bound, BigInt(0), false);
}

struct ThreeDmReduction {
  Instance instance;
  std::vector<std::int64_t> element_demand;  // X, then Y, then Z
  std::size_t attempts = 0;                  // draws until independence held
};

/// 2 (6n + 1)^bound.
inline std::int64_t default_delta(std::size_t n, std::size_t bound) {
  BigInt delta = 2;
  for (std::size_t k = 0; k < bound; ++k) delta *= 6 * static_cast<std::int64_t>(n) + 1;
  if (delta > BigInt(std::int64_t{1} << 40)) throw UsageError("delta too large");
  return delta.convert_to<std::int64_t>();
}

/// Sinks: the 3n elements (X, Y, Z), each with demand drawn uniformly from
/// (delta, 2 delta], then a dummy sink. Sources: one per triple, with supply
/// equal to the sum of its three demands. The dummy demand balances the two.
/// Draws repeat until the element demands pass verify_h_independence(bound).
inline ThreeDmReduction threedm_to_pfct_u(const ThreeDmInstance& tdm, std::int64_t delta,
                                          std::uint64_t seed, std::size_t bound = 6,
                                          std::size_t max_attempts = 64) {
  if (auto violation = validate_three_dm(tdm)) throw UsageError("invalid 3DM instance: " + *violation);
  if (delta <= 0) throw UsageError("delta must be positive");
  boost::random::mt19937_64 rng(seed);
  boost::random::uniform_int_distribution<std::int64_t> draw(delta + 1, 2 * delta);
  ThreeDmReduction out;
  for (;;) {
    if (out.attempts == max_attempts) throw UsageError("no independent demand draw found");
    ++out.attempts;
    out.element_demand.assign(3 * tdm.n, 0);
    for (auto& b : out.element_demand) b = draw(rng);
    if (verify_h_independence(out.element_demand, bound)) break;
  }
  Instance& inst = out.instance;
  for (const auto& t : tdm.triples)
    inst.supply.push_back(out.element_demand[t[0]] + out.element_demand[tdm.n + t[1]] +
                          out.element_demand[2 * tdm.n + t[2]]);
  inst.demand = out.element_demand;
  std::int64_t dummy = 0;
  for (auto a : inst.supply) dummy += a;
  for (auto b : out.element_demand) dummy -= b;
  if (dummy <= 0) throw UsageError("need more triples or larger instance");
  inst.demand.push_back(dummy);
  inst.fixed = Matrix<Rational>(inst.supply.size(), inst.demand.size(), Rational(1));
  inst.linear = Matrix<ExtRational>(inst.supply.size(), inst.demand.size(), ExtRational(0));
  require_valid(inst);
  return out;
}

}  // namespace fct
