#include "fct/oracle.hpp"
#include "fct/problem_io.hpp"
#include "fct/random_instances.hpp"
#include "fct/reductions.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace fct;

namespace {

Rational bipartite_opt(const Instance& inst) { return exact_fct_by_assignment(inst).cost; }

DstInstance random_dst(Rng& rng, std::size_t vertices) {
  for (;;) {
    DstInstance dst{vertices, {}, 0, {}};
    for (std::size_t u = 0; u < vertices; ++u)
      for (std::size_t v = 0; v < vertices; ++v)
        if (u != v && v != 0 && uniform_int(rng, 0, 2) == 0)
          dst.edges.push_back({u, v, Rational(uniform_int(rng, 1, 5))});
    if (dst.edges.empty() || dst.edges.size() > 12) continue;
    for (std::size_t v = 1; v < vertices; ++v)
      if (uniform_int(rng, 0, 1) == 0) dst.terminals.push_back(v);
    if (dst.terminals.empty()) continue;
    if (!reference::brute_force_dst(dst)) continue;
    return dst;
  }
}

SetCoverInstance random_set_cover(Rng& rng, std::size_t sets, std::size_t elements) {
  for (;;) {
    SetCoverInstance sc{sets, elements, std::vector<std::vector<std::size_t>>(sets)};
    for (std::size_t v = 0; v < sets; ++v)
      for (std::size_t u = 0; u < elements; ++u)
        if (uniform_int(rng, 0, 1) == 0) sc.members[v].push_back(u);
    if (!validate_set_cover(sc)) return sc;
  }
}

// Minimum cover by trying every subfamily in increasing size.
std::size_t brute_force_cover(const SetCoverInstance& sc) {
  for (std::size_t size = 1; size <= sc.num_sets; ++size)
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << sc.num_sets); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      std::vector<bool> covered(sc.num_elements, false);
      for (std::size_t v = 0; v < sc.num_sets; ++v)
        if (mask >> v & 1u)
          for (auto u : sc.members[v]) covered[u] = true;
      if (std::all_of(covered.begin(), covered.end(), [](bool c) { return c; })) return size;
    }
  return sc.num_sets;
}

}  // namespace

TEST(Split, Path) {
  const DigraphInstance dg{3, {{0, 1, Rational(2)}, {1, 2, Rational(3)}}, {{0, 1}}, {{2, 1}}};
  const auto split = split_digraph_to_bipartite(dg);
  EXPECT_EQ(split.instance.num_sources(), 2u);
  EXPECT_EQ(split.instance.num_sinks(), 2u);
  EXPECT_EQ(split.instance.supply[1], 1);
  EXPECT_EQ(exact_fct(split.instance).cost, 5);
  EXPECT_EQ(exact_digraph(dg).cost, 5);
}

TEST(Split, AlreadyBipartite) {
  const DigraphInstance dg{4,
                           {{0, 2, Rational(1)}, {0, 3, Rational(4)}, {1, 2, Rational(2)}, {1, 3, Rational(3)}},
                           {{0, 2}, {1, 3}},
                           {{2, 3}, {3, 2}}};
  const auto split = split_digraph_to_bipartite(dg);
  Instance expected = make_uniform_instance({2, 3}, {3, 2});
  expected.fixed(0, 0) = 1;
  expected.fixed(0, 1) = 4;
  expected.fixed(1, 0) = 2;
  expected.fixed(1, 1) = 3;
  EXPECT_EQ(split.instance, expected);
  EXPECT_TRUE(split.internal.empty());
  EXPECT_EQ(exact_fct(split.instance).cost, exact_digraph(dg).cost);
}

TEST(Split, ParallelInternalVertices) {
  const DigraphInstance dg{4,
                           {{0, 1, Rational(1)}, {1, 3, Rational(5)}, {0, 2, Rational(3)}, {2, 3, Rational(2)}},
                           {{0, 2}},
                           {{3, 2}}};
  const auto split = split_digraph_to_bipartite(dg);
  EXPECT_EQ(split.internal, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(exact_fct(split.instance).cost, 5);
  EXPECT_EQ(exact_digraph(dg).cost, 5);
}

TEST(Split, NormalizesTerminals) {
  // Source 0 has an in-edge and sink 2 an out-edge.
  const DigraphInstance dg{3, {{0, 1, Rational(1)}, {1, 0, Rational(1)}, {1, 2, Rational(1)}, {2, 1, Rational(1)}},
                           {{0, 1}}, {{2, 1}}};
  const auto norm = normalize_digraph(dg);
  EXPECT_EQ(norm.num_vertices, 5u);
  EXPECT_EQ(norm.sources[0].first, 3u);
  EXPECT_EQ(norm.sinks[0].first, 4u);
  EXPECT_EQ(exact_digraph(norm).cost, exact_digraph(dg).cost);
  EXPECT_EQ(bipartite_opt(split_digraph_to_bipartite(dg).instance), 2);
}

TEST(Dst, Examples) {
  const DstInstance star{3, {{0, 1, Rational(1)}, {0, 2, Rational(1)}}, 0, {1, 2}};
  const DigraphInstance dg = dst_to_pfct_digraph(star);
  EXPECT_EQ(dg.sources, (std::vector<std::pair<std::size_t, std::int64_t>>{{0, 2}}));
  EXPECT_EQ(dg.sinks, (std::vector<std::pair<std::size_t, std::int64_t>>{{1, 1}, {2, 1}}));
  EXPECT_EQ(exact_digraph(dg).cost, 2);
  EXPECT_EQ(exact_dst(star), 2);

  const DstInstance diamond = parse_dst(R"(DST v1
4 3
1
2 3 4
1 2 1
2 3 1
2 4 1
)");
  EXPECT_EQ(exact_dst(diamond), 3);
  EXPECT_EQ(exact_digraph(dst_to_pfct_digraph(diamond)).cost, 3);
  EXPECT_EQ(bipartite_opt(split_digraph_to_bipartite(dst_to_pfct_digraph(diamond)).instance), 3);
}

TEST(Dst, TerminalWithTwoInEdges) {
  const DstInstance dst{3, {{0, 1, Rational(1)}, {0, 2, Rational(4)}, {1, 2, Rational(1)}}, 0, {1, 2}};
  const DigraphInstance dg = dst_to_pfct_digraph(dst);
  // Terminal 1 has an out-edge and terminal 2 two in-edges; both get copies.
  EXPECT_EQ(dg.num_vertices, 5u);
  EXPECT_EQ(dg.sinks, (std::vector<std::pair<std::size_t, std::int64_t>>{{3, 1}, {4, 1}}));
  EXPECT_EQ(exact_dst(dst), 2);
  EXPECT_EQ(exact_digraph(dg).cost, 2);
  EXPECT_EQ(bipartite_opt(split_digraph_to_bipartite(dg).instance), 2);
}

TEST(Dst, Errors) {
  const DstInstance unreachable{3, {{0, 1, Rational(1)}}, 0, {2}};
  try {
    dst_to_pfct_digraph(unreachable);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_STREQ(e.what(), "infeasible DST");
  }
  EXPECT_THROW(dst_to_pfct_digraph(DstInstance{2, {{0, 1, Rational(1)}}, 0, {}}), UsageError);
}

TEST(Dst, RandomEquivalence) {
  Rng rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const DstInstance dst = random_dst(rng, 3 + trial % 3);
    const Rational expected = *reference::brute_force_dst(dst);
    const DigraphInstance dg = dst_to_pfct_digraph(dst);
    EXPECT_EQ(exact_dst(dst), expected);
    EXPECT_EQ(exact_digraph(dg).cost, expected);
    EXPECT_EQ(bipartite_opt(split_digraph_to_bipartite(dg).instance), expected);
  }
}

TEST(SetCover, Examples) {
  const SetCoverInstance sc{2, 2, {{0, 1}, {1}}};
  const Instance inst = setcover_to_fct_s(sc);
  EXPECT_EQ(inst.supply[0], 2);
  EXPECT_TRUE(classify_variant(inst).sink_independent);
  EXPECT_TRUE(classify_variant(inst).pure_modulo_forbidden);
  EXPECT_EQ(bipartite_opt(inst), 1);
  EXPECT_EQ(exact_min_dominating(sc), 1);

  const SetCoverInstance one{1, 3, {{0, 1, 2}}};
  EXPECT_EQ(bipartite_opt(setcover_to_fct_s(one)), 1);
  const SetCoverInstance two{2, 2, {{0}, {1}}};
  EXPECT_EQ(bipartite_opt(setcover_to_fct_s(two)), 2);
  EXPECT_EQ(exact_min_dominating(two), 2);
}

TEST(SetCover, Errors) {
  EXPECT_THROW(setcover_to_fct_s(SetCoverInstance{2, 2, {{0}, {0}}}), UsageError);
  EXPECT_THROW(setcover_to_fct_s(SetCoverInstance{1, 0, {{}}}), UsageError);
}

TEST(SetCover, RandomEquivalence) {
  Rng rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const SetCoverInstance sc = random_set_cover(rng, 1 + trial % 4, 1 + (trial / 4) % 4);
    const std::size_t best = brute_force_cover(sc);
    EXPECT_EQ(exact_min_dominating(sc), best);
    EXPECT_EQ(bipartite_opt(setcover_to_fct_s(sc)), Rational(best));
  }
}

TEST(HIndependence, Examples) {
  EXPECT_TRUE(verify_h_independence({2, 3}, 1));
  EXPECT_FALSE(verify_h_independence({2, 2}, 2));
  EXPECT_TRUE(verify_h_independence({5, 7, 11}, 2));
  EXPECT_FALSE(verify_h_independence({5, 7, 12}, 3));  // h = (1, 1, -1)
}

TEST(HIndependence, MatchesSignedPicks) {
  Rng rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::int64_t> b;
    for (int k = 0; k < 1 + trial % 4; ++k) b.push_back(uniform_int(rng, 1, 30));
    const std::size_t bound = 1 + trial % 5;
    EXPECT_EQ(verify_h_independence(b, bound), !reference::has_zero_combination(b, bound));
  }
}

TEST(HIndependence, BallSizeAndGuard) {
  EXPECT_EQ(l1_ball_size(1, 3), 7);
  EXPECT_EQ(l1_ball_size(2, 2), 13);
  EXPECT_EQ(l1_ball_size(6, 6), 8989);
  EXPECT_THROW(verify_h_independence(std::vector<std::int64_t>(40, 1000), 6), GuardError);
}

TEST(ThreeDm, DefaultDelta) {
  EXPECT_EQ(default_delta(2, 6), 2 * 13 * 13 * 13 * 13 * 13 * 13);
  EXPECT_EQ(default_delta(1, 1), 14);
  EXPECT_THROW(default_delta(100, 6), UsageError);
}

TEST(ThreeDm, Example) {
  const ThreeDmInstance tdm{2, {{0, 0, 0}, {1, 1, 1}, {0, 1, 0}}};
  const auto r = threedm_to_pfct_u(tdm, 100, 1);
  EXPECT_TRUE(verify_h_independence(r.element_demand, 6));
  EXPECT_EQ(r.instance.num_sources(), 3u);
  EXPECT_EQ(r.instance.num_sinks(), 7u);
  for (auto b : r.element_demand) {
    EXPECT_GT(b, 100);
    EXPECT_LE(b, 200);
  }
  const auto parts = exact_balanced_partition(r.instance);
  EXPECT_EQ(r.instance.num_sources() + r.instance.num_sinks() - parts.parts, 7u);
}

TEST(ThreeDm, Deterministic) {
  const ThreeDmInstance tdm{2, {{0, 0, 0}, {1, 1, 1}, {0, 1, 0}}};
  const auto a = threedm_to_pfct_u(tdm, 1000, 42);
  const auto b = threedm_to_pfct_u(tdm, 1000, 42);
  EXPECT_EQ(a.instance, b.instance);
  EXPECT_EQ(a.element_demand, b.element_demand);
  EXPECT_NE(a.element_demand, threedm_to_pfct_u(tdm, 1000, 43).element_demand);
}

TEST(ThreeDm, RetriesDependentDraws) {
  // With three demands drawn from 10 values, a repeat (h = e_u - e_v) is common.
  const ThreeDmInstance tdm{1, {{0, 0, 0}, {0, 0, 0}}};
  bool retried = false;
  for (std::uint64_t seed = 0; seed < 50 && !retried; ++seed) {
    const auto r = threedm_to_pfct_u(tdm, 10, seed, 2);
    EXPECT_TRUE(verify_h_independence(r.element_demand, 2));
    if (r.attempts > 1) {
      retried = true;
      boost::random::mt19937_64 rng(seed);
      boost::random::uniform_int_distribution<std::int64_t> draw(11, 20);
      std::vector<std::int64_t> first(3);
      for (auto& b : first) b = draw(rng);
      EXPECT_TRUE(reference::has_zero_combination(first, 2));
    }
  }
  EXPECT_TRUE(retried);
  EXPECT_THROW(threedm_to_pfct_u(tdm, 1, 0, 2), UsageError);
}

TEST(ThreeDm, Errors) {
  try {
    threedm_to_pfct_u(ThreeDmInstance{1, {{0, 0, 0}}}, 100, 0);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_STREQ(e.what(), "need more triples or larger instance");
  }
  EXPECT_THROW(threedm_to_pfct_u(ThreeDmInstance{1, {{0, 0, 0}, {0, 0, 0}}}, 0, 0), UsageError);
}
