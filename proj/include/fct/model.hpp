#pragma once

#include "fct/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fct {

/// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// A brute-force or enumeration step would exceed its size limit.
class GuardError : public UsageError {
 public:
  using UsageError::UsageError;
};

class InfeasibleError : public UsageError {
 public:
  InfeasibleError() : UsageError("no feasible transportation") {}
};

using Edge = std::pair<std::size_t, std::size_t>;  // (source, sink), 0-based

/// A bipartite fixed charge transportation instance.
struct Instance {
  std::vector<std::int64_t> supply;  // a, one per source
  std::vector<std::int64_t> demand;  // b, one per sink
  Matrix<Rational> fixed;            // f, never infinite
  Matrix<ExtRational> linear;        // c, infinity forbids the edge

  std::size_t num_sources() const { return supply.size(); }
  std::size_t num_sinks() const { return demand.size(); }

  bool allowed(std::size_t i, std::size_t j) const { return linear(i, j).is_finite(); }

  std::int64_t total_supply() const {
    return std::accumulate(supply.begin(), supply.end(), std::int64_t{0});
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Builds an instance with the given marginals, f ≡ 1 and c ≡ 0.
inline Instance make_uniform_instance(std::vector<std::int64_t> supply,
                                      std::vector<std::int64_t> demand) {
  Instance inst;
  inst.fixed = Matrix<Rational>(supply.size(), demand.size(), Rational(1));
  inst.linear = Matrix<ExtRational>(supply.size(), demand.size(), ExtRational(0));
  inst.supply = std::move(supply);
  inst.demand = std::move(demand);
  return inst;
}

/// Builds a pure instance with sink-independent fixed costs f_ij = source_cost[i].
inline Instance make_pfct_s_instance(std::vector<std::int64_t> supply,
                                     std::vector<std::int64_t> demand,
                                     const std::vector<Rational>& source_cost) {
  Instance inst = make_uniform_instance(std::move(supply), std::move(demand));
  for (std::size_t i = 0; i < inst.num_sources(); ++i)
    for (std::size_t j = 0; j < inst.num_sinks(); ++j) inst.fixed(i, j) = source_cost.at(i);
  return inst;
}

/// Sparse nonnegative flow. Entries are strictly positive; a zero removes the key.
class FlowSolution {
 public:
  using Map = std::map<Edge, Rational>;

  void set(std::size_t i, std::size_t j, const Rational& value) {
    if (value < 0) throw Error("negative flow");
    if (value == 0)
      entries_.erase({i, j});
    else
      entries_[{i, j}] = value;
  }
  void add(std::size_t i, std::size_t j, const Rational& delta) { set(i, j, get(i, j) + delta); }

  Rational get(std::size_t i, std::size_t j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? Rational(0) : it->second;
  }

  const Map& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

  /// Bicriteria solutions carry ε: sink marginals need only lie in [(1-ε)b, (1+ε)b].
  const std::optional<Rational>& relaxation() const { return relaxation_; }
  void set_relaxation(std::optional<Rational> eps) { relaxation_ = std::move(eps); }

  friend bool operator==(const FlowSolution&, const FlowSolution&) = default;

 private:
  Map entries_;
  std::optional<Rational> relaxation_;
};

struct VariantTag {
  bool pure = false;              // all c_ij = 0
  bool sink_independent = false;  // f_ij = f_i for every j
  bool uniform = false;           // all f_ij = 1
  bool pure_modulo_forbidden = false;  // every c_ij is 0 or infinity

  friend bool operator==(const VariantTag&, const VariantTag&) = default;
};

/// Returns nullopt when the instance is valid, else a description of the
/// first violated invariant (indices 1-based).
inline std::optional<std::string> validate_instance(const Instance& inst) {
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  if (n == 0) return "no sources";
  if (m == 0) return "no sinks";
  if (inst.fixed.rows() != n || inst.fixed.cols() != m) return "fixed cost matrix has wrong shape";
  if (inst.linear.rows() != n || inst.linear.cols() != m)
    return "linear cost matrix has wrong shape";
  for (std::size_t i = 0; i < n; ++i)
    if (inst.supply[i] <= 0) return "a_" + std::to_string(i + 1) + " not positive";
  for (std::size_t j = 0; j < m; ++j)
    if (inst.demand[j] <= 0) return "b_" + std::to_string(j + 1) + " not positive";
  BigInt sa = 0, sb = 0;
  for (auto v : inst.supply) sa += v;
  for (auto v : inst.demand) sb += v;
  if (sa != sb) return "sum(a) != sum(b)";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (inst.fixed(i, j) < 0)
        return "f_" + std::to_string(i + 1) + "," + std::to_string(j + 1) + " negative";
      if (inst.linear(i, j).is_finite() && inst.linear(i, j).value() < 0)
        return "c_" + std::to_string(i + 1) + "," + std::to_string(j + 1) + " negative";
    }
  return std::nullopt;
}

inline void require_valid(const Instance& inst) {
  if (auto violation = validate_instance(inst)) throw UsageError("invalid instance: " + *violation);
}

inline VariantTag classify_variant(const Instance& inst) {
  VariantTag tag{true, true, true, true};
  for (std::size_t i = 0; i < inst.num_sources(); ++i)
    for (std::size_t j = 0; j < inst.num_sinks(); ++j) {
      const ExtRational& c = inst.linear(i, j);
      if (c != ExtRational(0)) tag.pure = false;
      if (c.is_finite() && c.value() != 0) tag.pure_modulo_forbidden = false;
      if (inst.fixed(i, j) != inst.fixed(i, 0)) tag.sink_independent = false;
      if (inst.fixed(i, j) != 1) tag.uniform = false;
    }
  return tag;
}

/// Σ over the support of f_ij + c_ij x_ij.
inline Rational evaluate_cost(const Instance& inst, const FlowSolution& x) {
  Rational cost = 0;
  for (const auto& [edge, flow] : x.entries()) {
    auto [i, j] = edge;
    if (i >= inst.num_sources() || j >= inst.num_sinks())
      throw UsageError("flow references edge outside the instance");
    if (inst.linear(i, j).is_infinite()) throw UsageError("infeasible edge used");
    cost += inst.fixed(i, j) + inst.linear(i, j).value() * flow;
  }
  return cost;
}

/// Σ c_ij x_ij only.
inline Rational linear_cost(const Instance& inst, const FlowSolution& x) {
  Rational cost = 0;
  for (const auto& [edge, flow] : x.entries()) {
    if (inst.linear(edge.first, edge.second).is_infinite()) throw UsageError("infeasible edge used");
    cost += inst.linear(edge.first, edge.second).value() * flow;
  }
  return cost;
}

inline std::vector<Rational> row_sums(const FlowSolution& x, std::size_t n) {
  std::vector<Rational> sums(n, Rational(0));
  for (const auto& [edge, flow] : x.entries()) sums.at(edge.first) += flow;
  return sums;
}

inline std::vector<Rational> column_sums(const FlowSolution& x, std::size_t m) {
  std::vector<Rational> sums(m, Rational(0));
  for (const auto& [edge, flow] : x.entries()) sums.at(edge.second) += flow;
  return sums;
}

/// Checks x against the marginals of inst (exactly, or within the relaxation
/// band for sinks when x is relaxation-tagged) and that no forbidden edge is used.
/// Returns nullopt when x is feasible, else the first violation (indices 1-based).
inline std::optional<std::string> check_feasibility(const Instance& inst, const FlowSolution& x) {
  for (const auto& [edge, flow] : x.entries()) {
    if (edge.first >= inst.num_sources() || edge.second >= inst.num_sinks())
      return "edge (" + std::to_string(edge.first + 1) + "," + std::to_string(edge.second + 1) +
             ") outside the instance";
    if (inst.linear(edge.first, edge.second).is_infinite())
      return "infeasible edge (" + std::to_string(edge.first + 1) + "," +
             std::to_string(edge.second + 1) + ") used";
  }
  auto rows = row_sums(x, inst.num_sources());
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] != inst.supply[i])
      return "source " + std::to_string(i + 1) + " sends " + to_string(rows[i]) + ", expected " +
             std::to_string(inst.supply[i]);
  auto cols = column_sums(x, inst.num_sinks());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Rational b(inst.demand[j]);
    if (x.relaxation()) {
      const Rational& eps = *x.relaxation();
      if (cols[j] < (1 - eps) * b || cols[j] > (1 + eps) * b)
        return "sink " + std::to_string(j + 1) + " receives " + to_string(cols[j]) +
               ", outside the band [(1-" + to_string(eps) + ")" + std::to_string(inst.demand[j]) +
               ", (1+" + to_string(eps) + ")" + std::to_string(inst.demand[j]) + "]";
    } else if (cols[j] != b) {
      return "sink " + std::to_string(j + 1) + " receives " + to_string(cols[j]) + ", expected " +
             std::to_string(inst.demand[j]);
    }
  }
  return std::nullopt;
}

namespace detail {

struct DisjointSets {
  explicit DisjointSets(std::size_t size) : parent(size) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace detail

/// True when the support, as an undirected bipartite graph, has no cycle.
inline bool is_forest(const FlowSolution& x, std::size_t n, std::size_t m) {
  detail::DisjointSets sets(n + m);
  for (const auto& [edge, flow] : x.entries())
    if (!sets.unite(edge.first, n + edge.second)) return false;
  return true;
}

}  // namespace fct
