#pragma once

// Seeded random instance families. Boost's distributions are used so the
// same seed gives the same instance on every platform.

#include "fct/model.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <set>
#include <vector>

namespace fct {

using Rng = boost::random::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return boost::random::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// `parts` positive integers summing to total (total >= parts).
inline std::vector<std::int64_t> random_composition(Rng& rng, std::int64_t total, std::size_t parts) {
  if (total < static_cast<std::int64_t>(parts) || parts == 0) throw UsageError("cannot split total");
  std::set<std::int64_t> cuts;
  while (cuts.size() + 1 < parts) cuts.insert(uniform_int(rng, 1, total - 1));
  std::vector<std::int64_t> out;
  std::int64_t prev = 0;
  for (auto c : cuts) {
    out.push_back(c - prev);
    prev = c;
  }
  out.push_back(total - prev);
  return out;
}

struct Marginals {
  std::vector<std::int64_t> supply, demand;
};

/// Supplies uniform in [1, max_supply]; demands a random composition of the total.
inline Marginals random_marginals(Rng& rng, std::size_t n, std::size_t m, std::int64_t max_supply) {
  if (static_cast<std::int64_t>(n) * max_supply < static_cast<std::int64_t>(m))
    throw UsageError("max_supply too small for the number of sinks");
  for (;;) {
    Marginals mg;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += mg.supply.emplace_back(uniform_int(rng, 1, max_supply));
    if (total < static_cast<std::int64_t>(m)) continue;
    mg.demand = random_composition(rng, total, m);
    return mg;
  }
}

inline Instance random_pfct_s(Rng& rng, std::size_t n, std::size_t m, std::int64_t max_supply,
                              std::int64_t max_f) {
  auto mg = random_marginals(rng, n, m, max_supply);
  std::vector<Rational> f;
  for (std::size_t i = 0; i < n; ++i) f.emplace_back(uniform_int(rng, 0, max_f));
  return make_pfct_s_instance(std::move(mg.supply), std::move(mg.demand), f);
}

inline Instance random_pfct_u(Rng& rng, std::size_t n, std::size_t m, std::int64_t max_supply) {
  auto mg = random_marginals(rng, n, m, max_supply);
  return make_uniform_instance(std::move(mg.supply), std::move(mg.demand));
}

/// Pure instance with independent f_ij uniform in [0, max_f].
inline Instance random_pfct(Rng& rng, std::size_t n, std::size_t m, std::int64_t max_supply,
                            std::int64_t max_f) {
  auto mg = random_marginals(rng, n, m, max_supply);
  Instance inst = make_uniform_instance(std::move(mg.supply), std::move(mg.demand));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) inst.fixed(i, j) = uniform_int(rng, 0, max_f);
  return inst;
}

/// Uniform fixed costs; c_ij uniform in {0, 1/2, ..., max_c}.
inline Instance random_fct_u(Rng& rng, std::size_t n, std::size_t m, std::int64_t max_supply,
                             std::int64_t max_c) {
  auto mg = random_marginals(rng, n, m, max_supply);
  Instance inst = make_uniform_instance(std::move(mg.supply), std::move(mg.demand));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) inst.linear(i, j) = ExtRational(make_rational(uniform_int(rng, 0, 2 * max_c), 2));
  return inst;
}

/// f_ij uniform in [0, max_f]; c_ij uniform in {0, 1/2, ..., max_c}.
inline Instance random_fct(Rng& rng, std::size_t n, std::size_t m, std::int64_t max_supply,
                           std::int64_t max_f, std::int64_t max_c) {
  Instance inst = random_fct_u(rng, n, m, max_supply, max_c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) inst.fixed(i, j) = uniform_int(rng, 0, max_f);
  return inst;
}

}  // namespace fct
