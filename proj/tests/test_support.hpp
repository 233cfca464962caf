#pragma once

// Reference implementations used only by the tests. Each one is written
// independently of the library's own oracles: plain recursion over the
// objects being counted, no dynamic programming and no shared helpers.

#include "fct/fct.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace fct::reference {

/// Minimum of f·[x>0] + c·x over all integral flows, by filling cells in
/// row-major order.
inline std::optional<Rational> brute_force_integral(const Instance& inst) {
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  std::vector<std::int64_t> row = inst.supply, col = inst.demand;
  std::optional<Rational> best;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t cell, Rational cost) {
    if (cell == n * m) {
      for (auto r : row)
        if (r != 0) return;
      for (auto c : col)
        if (c != 0) return;
      if (!best || cost < *best) best = cost;
      return;
    }
    const std::size_t i = cell / m, j = cell % m;
    // The last cell of a row must absorb the rest of the row.
    const std::int64_t hi = std::min(row[i], col[j]);
    const std::int64_t lo = j + 1 == m ? row[i] : 0;
    if (lo > hi) return;
    for (std::int64_t q = lo; q <= hi; ++q) {
      if (q > 0 && !inst.allowed(i, j)) break;
      row[i] -= q;
      col[j] -= q;
      rec(cell + 1, q > 0 ? cost + inst.fixed(i, j) + inst.linear(i, j).value() * q : cost);
      row[i] += q;
      col[j] += q;
    }
  };
  rec(0, Rational(0));
  return best;
}

/// Every integral feasible flow, as dense matrices.
inline std::vector<Matrix<std::int64_t>> all_integral_flows(const Instance& inst) {
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  std::vector<std::int64_t> row = inst.supply, col = inst.demand;
  Matrix<std::int64_t> x(n, m, 0);
  std::vector<Matrix<std::int64_t>> out;
  std::function<void(std::size_t)> rec = [&](std::size_t cell) {
    if (cell == n * m) {
      if (std::all_of(col.begin(), col.end(), [](auto c) { return c == 0; })) out.push_back(x);
      return;
    }
    const std::size_t i = cell / m, j = cell % m;
    const std::int64_t hi = std::min(row[i], col[j]);
    const std::int64_t lo = j + 1 == m ? row[i] : 0;
    for (std::int64_t q = lo; q <= hi; ++q) {
      if (q > 0 && !inst.allowed(i, j)) break;
      row[i] -= q;
      col[j] -= q;
      x(i, j) = q;
      rec(cell + 1);
      x(i, j) = 0;
      row[i] += q;
      col[j] += q;
    }
  };
  rec(0);
  return out;
}

/// Maximum number of balanced parts, by choosing the part that contains the
/// first remaining element among all subsets of the rest.
inline std::size_t recursive_partition_count(const std::vector<std::int64_t>& signed_weights) {
  std::function<std::size_t(std::vector<std::int64_t>)> rec =
      [&](std::vector<std::int64_t> w) -> std::size_t {
    if (w.empty()) return 0;
    const std::size_t rest = w.size() - 1;
    std::size_t best = 0;
    bool any = false;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << rest); ++mask) {
      std::int64_t sum = w[0];
      std::vector<std::int64_t> left;
      for (std::size_t k = 0; k < rest; ++k) {
        if (mask >> k & 1u)
          sum += w[k + 1];
        else
          left.push_back(w[k + 1]);
      }
      if (sum != 0) continue;
      std::int64_t left_sum = 0;
      for (auto v : left) left_sum += v;
      if (left_sum != 0) continue;
      any = true;
      best = std::max(best, 1 + rec(left));
    }
    return any ? best : 0;
  };
  return rec(signed_weights);
}

inline std::vector<std::int64_t> signed_weights(const Instance& inst) {
  std::vector<std::int64_t> w(inst.supply.begin(), inst.supply.end());
  for (auto b : inst.demand) w.push_back(-b);
  return w;
}

/// Whether some sequence of at most `bound` signed picks from b sums to zero
/// without cancelling out completely, i.e. a nonzero h with |h|_1 <= bound.
inline bool has_zero_combination(const std::vector<std::int64_t>& b, std::size_t bound) {
  std::vector<std::int64_t> h(b.size(), 0);
  std::function<bool(std::size_t, std::size_t, std::int64_t)> rec =
      [&](std::size_t depth, std::size_t min_pick, std::int64_t sum) -> bool {
    if (depth > 0 && sum == 0 && std::any_of(h.begin(), h.end(), [](auto v) { return v != 0; }))
      return true;
    if (depth == bound) return false;
    // Picks are taken in nondecreasing (index, sign) order to avoid repeats.
    for (std::size_t pick = min_pick; pick < 2 * b.size(); ++pick) {
      const std::size_t v = pick / 2;
      const std::int64_t sign = pick % 2 == 0 ? 1 : -1;
      h[v] += sign;
      const bool found = rec(depth + 1, pick, sum + sign * b[v]);
      h[v] -= sign;
      if (found) return true;
    }
    return false;
  };
  return rec(0, 0, 0);
}

/// Maximum packing by trying every subfamily.
inline std::size_t brute_force_packing(const std::vector<std::uint64_t>& sets) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << sets.size()); ++mask) {
    std::uint64_t used = 0;
    bool ok = true;
    for (std::size_t s = 0; s < sets.size() && ok; ++s)
      if (mask >> s & 1u) {
        if (used & sets[s]) ok = false;
        used |= sets[s];
      }
    if (ok) best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(mask)));
  }
  return best;
}

/// Cheapest edge subset of a DST instance that reaches every terminal from
/// the root.
inline std::optional<Rational> brute_force_dst(const DstInstance& dst) {
  const std::size_t E = dst.edges.size();
  std::optional<Rational> best;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << E); ++mask) {
    Rational cost = 0;
    for (std::size_t k = 0; k < E; ++k)
      if (mask >> k & 1u) cost += dst.edges[k].cost;
    if (best && cost >= *best) continue;
    std::vector<bool> reached(dst.num_vertices, false);
    reached[dst.root] = true;
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t k = 0; k < E; ++k)
        if ((mask >> k & 1u) && reached[dst.edges[k].from] && !reached[dst.edges[k].to]) {
          reached[dst.edges[k].to] = true;
          grew = true;
        }
    }
    if (std::all_of(dst.terminals.begin(), dst.terminals.end(), [&](auto t) { return reached[t]; }))
      best = cost;
  }
  return best;
}

}  // namespace fct::reference
