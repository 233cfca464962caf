#include "fct/greedy_pfct_s.hpp"
#include "fct/random_instances.hpp"
#include "fct/transport.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace fct;

namespace {

Instance e1() { return make_pfct_s_instance({5, 3}, {4, 2, 2}, {Rational(10), Rational(4)}); }

FlowSolution flow_of(std::initializer_list<std::tuple<std::size_t, std::size_t, std::int64_t>> entries) {
  FlowSolution x;
  for (auto [i, j, v] : entries) x.set(i, j, v);
  return x;
}

// Σ_i (f_i - f_{i+1}) π(a([i])) written out with its own sorting and prefix scans.
Rational lower_bound_by_hand(const Instance& inst) {
  std::vector<std::pair<Rational, std::int64_t>> src;
  for (std::size_t i = 0; i < inst.num_sources(); ++i) src.push_back({inst.fixed(i, 0), inst.supply[i]});
  std::stable_sort(src.begin(), src.end(), [](auto& l, auto& r) { return l.first > r.first; });
  std::vector<std::int64_t> b = inst.demand;
  std::sort(b.rbegin(), b.rend());
  Rational total = 0;
  std::int64_t prefix_a = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    prefix_a += src[i].second;
    std::int64_t prefix_b = 0;
    std::int64_t count = 0;
    while (prefix_b < prefix_a) prefix_b += b[static_cast<std::size_t>(count++)];
    const Rational next = i + 1 < src.size() ? src[i + 1].first : Rational(0);
    total += (src[i].first - next) * count;
  }
  return total;
}

}  // namespace

TEST(Greedy, E1) {
  const Instance inst = e1();
  const FlowSolution x = greedy_solve(inst);
  EXPECT_EQ(x, flow_of({{0, 0, 4}, {0, 1, 1}, {1, 1, 1}, {1, 2, 2}}));
  EXPECT_EQ(evaluate_cost(inst, x), 28);
  EXPECT_EQ(lp_cost(inst, x), 21);
  EXPECT_EQ(opt_lower_bound(inst), 24);
  EXPECT_EQ(greedy_upper_bound(inst), 28);
  EXPECT_TRUE(no_crossing_check(inst, x));
  EXPECT_EQ(exact_fct(inst).cost, 28);
}

TEST(Greedy, SingleSourceAndSink) {
  const Instance inst = make_pfct_s_instance({3}, {3}, {Rational(7)});
  EXPECT_EQ(greedy_solve(inst), flow_of({{0, 0, 3}}));
  EXPECT_EQ(lp_cost(inst, greedy_solve(inst)), 7);
  EXPECT_EQ(greedy_upper_bound(inst), 7);
}

TEST(Greedy, MatchedSizes) {
  const Instance inst = make_pfct_s_instance({2, 2}, {2, 2}, {Rational(5), Rational(5)});
  const FlowSolution x = greedy_solve(inst);
  EXPECT_EQ(x, flow_of({{0, 0, 2}, {1, 1, 2}}));
  EXPECT_EQ(evaluate_cost(inst, x), 10);
  EXPECT_EQ(lp_cost(inst, x), evaluate_cost(inst, x));
}

TEST(Greedy, RequiresPfctS) {
  Instance inst = make_uniform_instance({1, 1}, {1, 1});
  inst.fixed(0, 1) = 2;
  try {
    greedy_solve(inst);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_STREQ(e.what(), "requires PFCT-S");
  }
}

TEST(Pi, Definition) {
  const Instance inst = e1();
  EXPECT_EQ(pi(inst, 4), 1u);
  EXPECT_EQ(pi(inst, 5), 2u);
  EXPECT_EQ(pi(inst, 8), 3u);
  EXPECT_EQ(pi(inst, make_rational(9, 2)), 2u);
  EXPECT_THROW(pi(inst, 0), UsageError);
  EXPECT_THROW(pi(inst, 9), UsageError);
}

TEST(Bounds, DegenerateCases) {
  const Instance one = make_pfct_s_instance({5}, {2, 2, 1}, {Rational(3)});
  EXPECT_EQ(opt_lower_bound(one), 9);
  EXPECT_EQ(greedy_upper_bound(one), 9);
  const Instance equal = make_pfct_s_instance({2, 3}, {1, 1, 3}, {Rational(4), Rational(4)});
  EXPECT_EQ(opt_lower_bound(equal), 12);
  const Instance zero = make_pfct_s_instance({2, 3}, {1, 4}, {Rational(0), Rational(0)});
  EXPECT_EQ(greedy_upper_bound(zero), 0);
  EXPECT_EQ(evaluate_cost(zero, greedy_solve(zero)), 0);
}

TEST(NoCrossing, Examples) {
  const Instance inst = make_pfct_s_instance({2, 2}, {2, 2}, {Rational(5), Rational(3)});
  FlowSolution all;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) all.set(i, j, 1);
  EXPECT_FALSE(no_crossing_check(inst, all));
  EXPECT_TRUE(no_crossing_check(inst, flow_of({{1, 0, 1}})));
}

TEST(Greedy, PropertiesAgainstOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 4, m = 1 + (trial / 4) % 5;
    const Instance inst = random_pfct_s(rng, n, m, 6, 20);
    const FlowSolution x = greedy_solve(inst);
    const Rational cost = evaluate_cost(inst, x);
    const Rational opt = exact_fct_by_assignment(inst).cost;
    EXPECT_EQ(opt_lower_bound(inst), lower_bound_by_hand(inst));
    EXPECT_LE(opt_lower_bound(inst), opt);
    EXPECT_LE(opt, cost);
    EXPECT_LE(cost, greedy_upper_bound(inst));
    EXPECT_LE(cost, 2 * opt);
    EXPECT_TRUE(no_crossing_check(inst, x));
    EXPECT_TRUE(is_forest(x, n, m));
    EXPECT_LE(lp_cost(inst, x), cost);
    // The greedy flow minimizes the LP objective f_i / b_j.
    WeightMatrix w(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) w(i, j) = ExtRational(inst.fixed(i, 0) / Rational(inst.demand[j]));
    EXPECT_EQ(lp_cost(inst, x), solve_transportation(inst, w).value);
  }
}

TEST(CompareResidualBound, SameInstance) { EXPECT_TRUE(compare_residual_bound(e1(), e1(), 0)); }

TEST(CompareResidualBound, MergedSinks) {
  const Instance merged = make_pfct_s_instance({5, 3}, {4, 4}, {Rational(10), Rational(4)});
  EXPECT_TRUE(compare_residual_bound(e1(), merged, 0));
  // The merged instance needs fewer sinks, so π' ≤ π; the reverse needs Δ = 1.
  EXPECT_THROW(compare_residual_bound(merged, e1(), 0), UsageError);
  EXPECT_TRUE(compare_residual_bound(merged, e1(), 1));
}

TEST(CompareResidualBound, RandomPairs) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Instance inst1 = random_pfct_s(rng, n, 1 + trial % 4, 6, 15);
    std::vector<Rational> f;
    for (std::size_t i = 0; i < n; ++i) f.push_back(inst1.fixed(i, 0));
    const Instance inst2 = make_pfct_s_instance(
        inst1.supply,
        random_composition(rng, inst1.total_supply(),
                           std::min<std::size_t>(1 + (trial / 3) % 4, static_cast<std::size_t>(inst1.total_supply()))),
        f);
    // Smallest Δ that satisfies the precondition.
    std::int64_t delta = 0;
    while (true) {
      try {
        EXPECT_TRUE(compare_residual_bound(inst1, inst2, delta));
        break;
      } catch (const UsageError&) {
        ++delta;
      }
    }
  }
}
