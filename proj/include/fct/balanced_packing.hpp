#pragma once

// PFCT-U via balanced-set packing: matched pairs are removed first, then the
// balanced sets of size 3..k are packed, and the leftovers form one more part.

#include "fct/balanced_sets.hpp"
#include "fct/model.hpp"
#include "fct/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fct {

struct PairPreprocessing {
  std::vector<BalancedSet> pairs;
  std::vector<Element> residual;  // sources first, each side by index
};

struct PackingInstance {
  std::vector<Element> ground;
  std::vector<BalancedSet> family;  // by size, then lexicographic
  std::size_t k = 3;
};

inline bool is_pfct_u(const Instance& inst) {
  const VariantTag tag = classify_variant(inst);
  return tag.pure && tag.uniform;
}

inline std::vector<Element> instance_elements(const Instance& inst) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < inst.num_sources(); ++i) out.push_back({Side::source, i, inst.supply[i]});
  for (std::size_t j = 0; j < inst.num_sinks(); ++j) out.push_back({Side::sink, j, inst.demand[j]});
  return out;
}

/// Repeatedly removes a source and a sink of equal weight; smallest weight
/// first, then smallest source index, then smallest sink index.
inline PairPreprocessing preprocess_matched_pairs(const Instance& inst) {
  require_valid(inst);
  if (!is_pfct_u(inst)) throw UsageError("requires PFCT-U");
  std::vector<Element> sources, sinks;
  for (const auto& e : instance_elements(inst)) (e.side == Side::source ? sources : sinks).push_back(e);
  PairPreprocessing out;
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t s = 0; s < sources.size(); ++s)
      for (std::size_t t = 0; t < sinks.size(); ++t)
        if (sources[s].weight == sinks[t].weight &&
            (!best || sources[s].weight < sources[best->first].weight))
          best = {s, t};
    if (!best) break;
    out.pairs.push_back(make_balanced_set({sources[best->first], sinks[best->second]}));
    sources.erase(sources.begin() + static_cast<std::ptrdiff_t>(best->first));
    sinks.erase(sinks.begin() + static_cast<std::ptrdiff_t>(best->second));
  }
  out.residual = std::move(sources);
  out.residual.insert(out.residual.end(), sinks.begin(), sinks.end());
  return out;
}

namespace detail {

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace detail

/// All balanced subsets of `ground` with 3..k elements.
inline PackingInstance enumerate_balanced_sets(std::vector<Element> ground, std::size_t k) {
  if (k < 3 || k > 6) throw UsageError("k must be between 3 and 6");
  std::sort(ground.begin(), ground.end());
  const std::size_t size = ground.size();
  if (detail::binomial(size, k) > 1e7) throw GuardError("instance too large for enumeration");
  PackingInstance pk{ground, {}, k};
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::size_t, std::int64_t)> rec = [&](std::size_t start,
                                                                         std::size_t want,
                                                                         std::int64_t net) {
    if (pick.size() == want) {
      if (net != 0) return;
      BalancedSet set;
      for (auto p : pick) set.elements.push_back(ground[p]);
      pk.family.push_back(std::move(set));
      return;
    }
    for (std::size_t p = start; p + (want - pick.size()) <= size; ++p) {
      pick.push_back(p);
      const auto& e = ground[p];
      rec(p + 1, want, net + (e.side == Side::source ? e.weight : -e.weight));
      pick.pop_back();
    }
  };
  for (std::size_t want = 3; want <= k; ++want) rec(0, want, 0);
  return pk;
}

inline PackingInstance enumerate_balanced_sets(const Instance& inst, std::size_t k) {
  return enumerate_balanced_sets(instance_elements(inst), k);
}

namespace detail {

inline std::vector<std::uint64_t> family_masks(const PackingInstance& pk) {
  if (pk.ground.size() > 64) throw GuardError("ground set larger than 64 elements");
  std::vector<std::uint64_t> masks;
  for (const auto& set : pk.family) {
    std::uint64_t mask = 0;
    for (const auto& e : set.elements) {
      auto it = std::lower_bound(pk.ground.begin(), pk.ground.end(), e);
      if (it == pk.ground.end() || !(*it == e)) throw UsageError("set element not in ground set");
      mask |= std::uint64_t{1} << (it - pk.ground.begin());
    }
    masks.push_back(mask);
  }
  return masks;
}

}  // namespace detail

/// Local search from the empty packing. A move adds t ≤ p pairwise disjoint
/// sets and drops the fewer than t chosen sets they meet. Moves are tried in
/// order of t, then lexicographically over family indices; the first
/// improving move is taken. Returns chosen family indices in increasing order.
inline std::vector<std::size_t> local_search_packing(const std::vector<std::uint64_t>& sets,
                                                     std::size_t p) {
  if (p == 0) throw UsageError("swap size must be positive");
  std::vector<bool> chosen(sets.size(), false);
  std::vector<std::size_t> pick;

  // Tries to extend pick to size t with unchosen, pairwise disjoint sets from
  // index `start`; applies the first move that gains.
  std::function<bool(std::size_t, std::size_t, std::uint64_t)> try_move =
      [&](std::size_t t, std::size_t start, std::uint64_t used) -> bool {
    if (pick.size() == t) {
      std::vector<std::size_t> hit;
      for (std::size_t s = 0; s < sets.size(); ++s)
        if (chosen[s] && (sets[s] & used)) hit.push_back(s);
      if (hit.size() >= t) return false;
      for (auto s : hit) chosen[s] = false;
      for (auto s : pick) chosen[s] = true;
      return true;
    }
    for (std::size_t s = start; s < sets.size(); ++s) {
      if (chosen[s] || (sets[s] & used)) continue;
      pick.push_back(s);
      const bool moved = try_move(t, s + 1, used | sets[s]);
      pick.pop_back();
      if (moved) return true;
    }
    return false;
  };

  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t t = 1; t <= p && !improved; ++t) improved = try_move(t, 0, 0);
  }
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < sets.size(); ++s)
    if (chosen[s]) out.push_back(s);
  return out;
}

/// Maximum number of pairwise disjoint sets. Subset DP over the ground set
/// when it has at most 20 elements, otherwise branch and bound over at most
/// 25 sets. Returns chosen family indices in increasing order.
inline std::vector<std::size_t> exact_packing(const std::vector<std::uint64_t>& sets,
                                              std::size_t ground_size) {
  std::vector<std::size_t> out;
  if (ground_size <= 20) {
    const std::size_t states = std::size_t{1} << ground_size;
    std::vector<std::vector<std::size_t>> containing(ground_size);
    for (std::size_t s = 0; s < sets.size(); ++s)
      for (std::size_t e = 0; e < ground_size; ++e)
        if (sets[s] >> e & 1u) {
          containing[e].push_back(s);
          break;  // indexed by lowest element only
        }
    // best[avail]: max packing using only elements in avail.
    std::vector<std::int8_t> best(states, -1);
    std::function<int(std::uint64_t)> solve = [&](std::uint64_t avail) -> int {
      if (avail == 0) return 0;
      if (best[avail] >= 0) return best[avail];
      const auto low = static_cast<std::size_t>(std::countr_zero(avail));
      int value = solve(avail & (avail - 1));
      for (auto s : containing[low])
        if ((sets[s] & avail) == sets[s]) value = std::max(value, 1 + solve(avail & ~sets[s]));
      best[avail] = static_cast<std::int8_t>(value);
      return value;
    };
    std::uint64_t avail = states - 1;
    solve(avail);
    while (avail != 0) {
      const auto low = static_cast<std::size_t>(std::countr_zero(avail));
      const int here = solve(avail);
      if (solve(avail & (avail - 1)) == here) {
        avail &= avail - 1;
        continue;
      }
      for (auto s : containing[low])
        if ((sets[s] & avail) == sets[s] && 1 + solve(avail & ~sets[s]) == here) {
          out.push_back(s);
          avail &= ~sets[s];
          break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  if (sets.size() > 25) throw GuardError("packing instance too large for exact search");
  std::vector<std::size_t> current;
  std::function<void(std::size_t, std::uint64_t)> search = [&](std::size_t s, std::uint64_t used) {
    if (current.size() + (sets.size() - s) <= out.size()) return;
    if (s == sets.size()) {
      out = current;
      return;
    }
    if (!(sets[s] & used)) {
      current.push_back(s);
      search(s + 1, used | sets[s]);
      current.pop_back();
    }
    search(s + 1, used);
  };
  search(0, 0);
  return out;
}

inline std::vector<BalancedSet> local_search_packing(const PackingInstance& pk, std::size_t p) {
  std::vector<BalancedSet> out;
  for (auto s : local_search_packing(detail::family_masks(pk), p)) out.push_back(pk.family[s]);
  return out;
}

inline std::vector<BalancedSet> exact_packing(const PackingInstance& pk) {
  std::vector<BalancedSet> out;
  for (auto s : exact_packing(detail::family_masks(pk), pk.ground.size())) out.push_back(pk.family[s]);
  return out;
}

/// Routes flow inside each part with a two-pointer fill over its sources and
/// sinks, giving |part| - 1 edges per part.
inline FlowSolution flow_within_balanced_sets(const BalancedPartition& partition) {
  FlowSolution x;
  for (const auto& part : partition.parts) {
    if (!part.is_balanced()) throw UsageError("part " + to_string(part) + " is not balanced");
    std::vector<Element> sources, sinks;
    for (const auto& e : part.elements) (e.side == Side::source ? sources : sinks).push_back(e);
    std::size_t s = 0, t = 0;
    std::int64_t rem_s = sources[0].weight, rem_t = sinks[0].weight;
    while (s < sources.size() && t < sinks.size()) {
      const std::int64_t q = std::min(rem_s, rem_t);
      x.add(sources[s].index, sinks[t].index, Rational(q));
      rem_s -= q;
      rem_t -= q;
      if (rem_s == 0 && ++s < sources.size()) rem_s = sources[s].weight;
      if (rem_t == 0 && ++t < sinks.size()) rem_t = sinks[t].weight;
    }
  }
  return x;
}

struct PackingMode {
  enum class Kind { exact, local_search } kind = Kind::exact;
  std::size_t swap = 2;   // p, local search only
  std::size_t max_k = 5;  // tries k = 3..max_k
};

struct PfctUResult {
  BalancedPartition partition;
  FlowSolution flow;
  std::size_t k = 0;  // the k whose packing gave the partition; 0 if none was needed
};

/// Best partition over k = 3..max_k of: matched pairs, the packed sets, and
/// the leftover elements as one part.
inline PfctUResult solve_pfct_u(const Instance& inst, const PackingMode& mode = {}) {
  if (mode.max_k < 3 || mode.max_k > 6) throw UsageError("k must be between 3 and 6");
  const PairPreprocessing pre = preprocess_matched_pairs(inst);
  PfctUResult result;
  result.partition.parts = pre.pairs;
  if (!pre.residual.empty()) {
    std::optional<BalancedPartition> best;
    for (std::size_t k = 3; k <= mode.max_k; ++k) {
      const PackingInstance pk = enumerate_balanced_sets(pre.residual, k);
      const auto packed = mode.kind == PackingMode::Kind::exact ? exact_packing(pk)
                                                                 : local_search_packing(pk, mode.swap);
      BalancedPartition candidate{pre.pairs};
      std::vector<Element> rest = pk.ground;
      for (const auto& set : packed) {
        candidate.parts.push_back(set);
        for (const auto& e : set.elements) rest.erase(std::find(rest.begin(), rest.end(), e));
      }
      if (!rest.empty()) candidate.parts.push_back(make_balanced_set(std::move(rest)));
      if (!best || candidate.parts.size() > best->parts.size()) {
        best = std::move(candidate);
        result.k = k;
      }
    }
    result.partition = std::move(*best);
  }
  std::sort(result.partition.parts.begin(), result.partition.parts.end());
  result.flow = flow_within_balanced_sets(result.partition);
  return result;
}

}  // namespace fct
