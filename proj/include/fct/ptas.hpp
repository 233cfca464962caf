#pragma once

// (1 + eps)-approximation for pure instances with few sources: guess the set P
// of most expensive edges of an optimal solution, forbid every other edge
// costlier than the cheapest edge of P, and solve the linear relaxation that
// charges P up front and other edges f_ij / b_j per unit.

#include "fct/model.hpp"
#include "fct/oracle.hpp"
#include "fct/transport.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fct {

struct GuessedSet {
  std::vector<Edge> edges;
  std::optional<Rational> threshold;  // F = min f over P; none when P is empty
};

inline GuessedSet make_guessed_set(const Instance& inst, std::vector<Edge> edges) {
  GuessedSet g{std::move(edges), std::nullopt};
  for (const auto& [i, j] : g.edges)
    if (!g.threshold || inst.fixed(i, j) < *g.threshold) g.threshold = inst.fixed(i, j);
  return g;
}

/// The restricted relaxation for one guess. `value` is Σ_P f plus the LP optimum.
inline TransportResult restricted_lp(const Instance& inst, const GuessedSet& guess) {
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  WeightMatrix w(n, m, ExtRational::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!inst.allowed(i, j)) continue;
      if (guess.threshold && inst.fixed(i, j) > *guess.threshold) continue;
      w(i, j) = ExtRational(inst.fixed(i, j) / Rational(inst.demand[j]));
    }
  Rational fixed_part = 0;
  for (const auto& [i, j] : guess.edges) {
    w(i, j) = ExtRational(0);
    fixed_part += inst.fixed(i, j);
  }
  auto result = solve_transportation(inst, w);
  result.value += fixed_part;
  return result;
}

/// Number of edges outside P whose flow is strictly between 0 and b_j.
inline std::size_t fractional_edges_outside(const Instance& inst, const FlowSolution& x,
                                            const GuessedSet& guess) {
  std::size_t count = 0;
  for (const auto& [edge, flow] : x.entries())
    if (std::find(guess.edges.begin(), guess.edges.end(), edge) == guess.edges.end() &&
        flow < Rational(inst.demand[edge.second]))
      ++count;
  return count;
}

/// min(2n / eps, number of allowed edges).
inline std::size_t ptas_guess_size(const Instance& inst, const Rational& eps) {
  if (eps <= 0 || !is_integer(1 / eps)) throw UsageError("1/epsilon must be a positive integer");
  std::size_t allowed = 0;
  for (std::size_t i = 0; i < inst.num_sources(); ++i)
    for (std::size_t j = 0; j < inst.num_sinks(); ++j)
      if (inst.allowed(i, j)) ++allowed;
  const BigInt size = 2 * BigInt(inst.num_sources()) * numerator(1 / eps);
  return size < BigInt(allowed) ? size.convert_to<std::size_t>() : allowed;
}

struct PtasResult {
  FlowSolution flow;
  Rational cost;
  GuessedSet guess;        // the guess that produced flow
  std::size_t guesses = 0;  // candidate sets solved
};

/// Tries every acyclic edge set P of at most ptas_guess_size edges, in
/// lexicographic order, skipping sets whose fixed cost already exceeds the
/// best actual cost found. Keeps the first minimum.
inline PtasResult ptas_solve(const Instance& inst, const Rational& eps,
                             double max_candidates = 1e7) {
  require_valid(inst);
  if (!classify_variant(inst).pure_modulo_forbidden) throw UsageError("requires PFCT");
  const std::size_t limit = ptas_guess_size(inst, eps);
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  std::vector<Edge> allowed;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (inst.allowed(i, j)) allowed.push_back({i, j});
  double candidates = 0, binom = 1;
  for (std::size_t s = 0; s <= limit; ++s) {
    candidates += binom;
    binom = binom * static_cast<double>(allowed.size() - s) / static_cast<double>(s + 1);
  }
  if (candidates > max_candidates) throw GuardError("instance too large for PTAS enumeration");

  std::optional<PtasResult> best;
  std::size_t solved = 0;
  std::vector<Edge> chosen;
  detail::RollbackDsu dsu(n + m);
  auto evaluate = [&](const Rational& fixed_sum) {
    if (best && fixed_sum > best->cost) return;
    GuessedSet guess = make_guessed_set(inst, chosen);
    TransportResult lp;
    try {
      lp = restricted_lp(inst, guess);
    } catch (const InfeasibleError&) {
      return;
    }
    ++solved;
    Rational cost = evaluate_cost(inst, lp.flow);
    if (!best || cost < best->cost) best = PtasResult{std::move(lp.flow), cost, std::move(guess), 0};
  };
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t start,
                                                               const Rational& fixed_sum) {
    evaluate(fixed_sum);
    if (chosen.size() == limit) return;
    for (std::size_t k = start; k < allowed.size(); ++k) {
      auto [i, j] = allowed[k];
      const Rational next = fixed_sum + inst.fixed(i, j);
      if (best && next > best->cost) continue;
      if (!dsu.unite(i, n + j)) continue;
      chosen.push_back(allowed[k]);
      rec(k + 1, next);
      chosen.pop_back();
      dsu.rollback();
    }
  };
  rec(0, Rational(0));
  if (!best) throw InfeasibleError();
  best->guesses = solved;
  return std::move(*best);
}

}  // namespace fct
