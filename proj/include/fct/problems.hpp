#pragma once

// Source problems of the instance reductions: flow on a general digraph,
// directed Steiner tree, set cover, and 3-dimensional matching.

#include "fct/model.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fct {

struct DiEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational cost = 0;

  friend bool operator==(const DiEdge&, const DiEdge&) = default;
};

/// Pure fixed charge flow on a directed graph: vertex-disjoint source and sink
/// sets with balanced integral supplies and demands.
struct DigraphInstance {
  std::size_t num_vertices = 0;
  std::vector<DiEdge> edges;
  std::vector<std::pair<std::size_t, std::int64_t>> sources;  // (vertex, supply)
  std::vector<std::pair<std::size_t, std::int64_t>> sinks;    // (vertex, demand)

  friend bool operator==(const DigraphInstance&, const DigraphInstance&) = default;
};

struct DstInstance {
  std::size_t num_vertices = 0;
  std::vector<DiEdge> edges;
  std::size_t root = 0;
  std::vector<std::size_t> terminals;
};

/// Bipartite set/element incidence. members[v] lists the elements of set v.
struct SetCoverInstance {
  std::size_t num_sets = 0;
  std::size_t num_elements = 0;
  std::vector<std::vector<std::size_t>> members;
};

/// X, Y, Z each have n elements; a triple (x, y, z) indexes into each.
struct ThreeDmInstance {
  std::size_t n = 0;
  std::vector<std::array<std::size_t, 3>> triples;
};

inline std::optional<std::string> validate_digraph(const DigraphInstance& dg) {
  std::vector<int> role(dg.num_vertices, 0);  // 1 source, 2 sink
  std::int64_t supply = 0, demand = 0;
  for (auto [v, a] : dg.sources) {
    if (v >= dg.num_vertices) return "source vertex out of range";
    if (a <= 0) return "source supply not positive";
    if (role[v] != 0) return "vertex " + std::to_string(v + 1) + " listed twice";
    role[v] = 1;
    supply += a;
  }
  for (auto [v, b] : dg.sinks) {
    if (v >= dg.num_vertices) return "sink vertex out of range";
    if (b <= 0) return "sink demand not positive";
    if (role[v] != 0) return "vertex " + std::to_string(v + 1) + " is both source and sink";
    role[v] = 2;
    demand += b;
  }
  if (supply != demand) return "total supply != total demand";
  for (const auto& e : dg.edges) {
    if (e.from >= dg.num_vertices || e.to >= dg.num_vertices) return "edge endpoint out of range";
    if (e.cost < 0) return "negative edge cost";
  }
  return std::nullopt;
}

inline std::optional<std::string> validate_dst(const DstInstance& dst) {
  if (dst.root >= dst.num_vertices) return "root out of range";
  for (auto t : dst.terminals)
    if (t >= dst.num_vertices) return "terminal out of range";
  for (const auto& e : dst.edges) {
    if (e.from >= dst.num_vertices || e.to >= dst.num_vertices) return "edge endpoint out of range";
    if (e.cost < 0) return "negative edge cost";
  }
  return std::nullopt;
}

inline std::optional<std::string> validate_set_cover(const SetCoverInstance& sc) {
  if (sc.members.size() != sc.num_sets) return "members list has wrong length";
  if (sc.num_sets == 0) return "no sets";
  if (sc.num_elements == 0) return "no elements";
  std::vector<bool> covered(sc.num_elements, false);
  for (const auto& set : sc.members)
    for (auto u : set) {
      if (u >= sc.num_elements) return "element out of range";
      covered[u] = true;
    }
  for (std::size_t u = 0; u < sc.num_elements; ++u)
    if (!covered[u]) return "element " + std::to_string(u + 1) + " is in no set";
  return std::nullopt;
}

inline std::optional<std::string> validate_three_dm(const ThreeDmInstance& tdm) {
  if (tdm.n == 0) return "empty ground sets";
  for (const auto& t : tdm.triples)
    for (auto v : t)
      if (v >= tdm.n) return "triple coordinate out of range";
  return std::nullopt;
}

}  // namespace fct
