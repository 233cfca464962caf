#pragma once

#include "fct/model.hpp"

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace fct {

enum class Side { source, sink };

/// A source or sink with its supply / demand.
struct Element {
  Side side = Side::source;
  std::size_t index = 0;
  std::int64_t weight = 0;

  friend bool operator==(const Element& a, const Element& b) {
    return a.side == b.side && a.index == b.index;
  }
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (auto c = a.side <=> b.side; c != 0) return c;
    return a.index <=> b.index;
  }
};

inline std::string to_string(const Element& e) {
  return (e.side == Side::source ? "s" : "t") + std::to_string(e.index + 1);
}

/// A set of elements whose supply equals its demand. Elements are kept sorted.
struct BalancedSet {
  std::vector<Element> elements;

  std::size_t size() const { return elements.size(); }

  bool is_balanced() const {
    if (elements.empty()) return false;
    std::int64_t net = 0;
    for (const auto& e : elements) net += e.side == Side::source ? e.weight : -e.weight;
    return net == 0;
  }

  friend bool operator==(const BalancedSet&, const BalancedSet&) = default;
  friend auto operator<=>(const BalancedSet& a, const BalancedSet& b) {
    return a.elements <=> b.elements;
  }
};

inline BalancedSet make_balanced_set(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  return BalancedSet{std::move(elements)};
}

inline std::string to_string(const BalancedSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.elements.size(); ++k) {
    if (k) out += ",";
    out += to_string(s.elements[k]);
  }
  return out + "}";
}

struct BalancedPartition {
  std::vector<BalancedSet> parts;

  /// n + m - #parts: the PFCT-U cost of the forest that routes flow inside each part.
  std::int64_t cost() const {
    std::int64_t elements = 0;
    for (const auto& p : parts) elements += static_cast<std::int64_t>(p.size());
    return elements - static_cast<std::int64_t>(parts.size());
  }
};

/// Returns nullopt if partition is a disjoint cover of inst's sources and sinks
/// by balanced sets carrying the instance's weights.
inline std::optional<std::string> check_partition(const Instance& inst,
                                                  const BalancedPartition& partition) {
  std::vector<int> src_seen(inst.num_sources(), 0), snk_seen(inst.num_sinks(), 0);
  for (const auto& part : partition.parts) {
    if (!part.is_balanced()) return "part " + to_string(part) + " is not balanced";
    for (const auto& e : part.elements) {
      const bool source = e.side == Side::source;
      if (e.index >= (source ? inst.num_sources() : inst.num_sinks()))
        return "element " + to_string(e) + " out of range";
      if (e.weight != (source ? inst.supply[e.index] : inst.demand[e.index]))
        return "element " + to_string(e) + " has the wrong weight";
      ++(source ? src_seen : snk_seen)[e.index];
    }
  }
  for (std::size_t i = 0; i < src_seen.size(); ++i)
    if (src_seen[i] != 1) return "source " + std::to_string(i + 1) + " not covered exactly once";
  for (std::size_t j = 0; j < snk_seen.size(); ++j)
    if (snk_seen[j] != 1) return "sink " + std::to_string(j + 1) + " not covered exactly once";
  return std::nullopt;
}

}  // namespace fct
