#include "fct/fct_u_approx.hpp"
#include "fct/oracle.hpp"
#include "fct/random_instances.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace fct;

namespace {

Instance tiny() {
  Instance inst = make_uniform_instance({2, 2}, {3, 1});
  inst.linear(0, 1) = ExtRational(1);
  inst.linear(1, 0) = ExtRational(1);
  return inst;
}

}  // namespace

TEST(FctU, TinyExample) {
  const Instance inst = tiny();
  const FlowSolution x = solve_fct_u(inst);
  FlowSolution expected;
  expected.set(0, 0, 2);
  expected.set(1, 0, 1);
  expected.set(1, 1, 1);
  EXPECT_EQ(x, expected);
  EXPECT_EQ(evaluate_cost(inst, x), 4);
  EXPECT_EQ(reference::brute_force_integral(inst), Rational(4));
}

TEST(FctU, ZeroLinearCost) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4, m = 1 + trial % 5;
    const Instance inst = random_pfct_u(rng, n, m, 6);
    const FlowSolution x = solve_fct_u(inst);
    EXPECT_TRUE(is_forest(x, n, m));
    EXPECT_EQ(evaluate_cost(inst, x), Rational(x.support_size()));
    EXPECT_LE(x.support_size(), n + m - 1);
  }
}

TEST(FctU, SingleEdge) {
  Instance inst = make_uniform_instance({4}, {4});
  inst.linear(0, 0) = ExtRational(make_rational(3, 2));
  EXPECT_EQ(evaluate_cost(inst, solve_fct_u(inst)), 7);
}

TEST(FctU, RequiresUniform) {
  Instance inst = tiny();
  inst.fixed(0, 0) = 2;
  try {
    solve_fct_u(inst);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_STREQ(e.what(), "requires FCT-U");
  }
}

TEST(FctU, InfeasiblePropagates) {
  Instance inst = make_uniform_instance({1, 1}, {1, 1});
  inst.linear(0, 0) = ExtRational::infinity();
  inst.linear(1, 0) = ExtRational::infinity();
  EXPECT_THROW(solve_fct_u(inst), InfeasibleError);
}

TEST(FctU, PropertiesAgainstOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 3, m = 1 + (trial / 3) % 4;
    const Instance inst = random_fct_u(rng, n, m, 5, 3);
    const FlowSolution x = solve_fct_u(inst);
    EXPECT_FALSE(check_feasibility(inst, x).has_value());
    EXPECT_TRUE(is_forest(x, n, m));
    EXPECT_LE(x.support_size(), n + m - 1);
    const Rational opt = *reference::brute_force_integral(inst);
    EXPECT_LE(evaluate_cost(inst, x), 2 * opt);
    // The linear part is the transportation optimum over c.
    Rational best_linear;
    bool first = true;
    for (const auto& flow : reference::all_integral_flows(inst)) {
      Rational v = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) v += inst.linear(i, j).value() * flow(i, j);
      if (first || v < best_linear) best_linear = v;
      first = false;
    }
    EXPECT_EQ(linear_cost(inst, x), best_linear);
  }
}
