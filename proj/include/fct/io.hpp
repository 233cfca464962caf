#pragma once

// Line-oriented text formats.
//
// Instance:
//   FCT v1
//   n m
//   a_1 ... a_n
//   b_1 ... b_m
//   n rows of m fixed costs   (integer or p/q)
//   n rows of m linear costs  (integer, p/q, or inf)
//
// Solution:
//   SOL v1
//   [epsilon p/q]             (only for relaxation-tagged solutions)
//   i j x_ij                  (one line per support edge, 1-based)

#include "fct/model.hpp"

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace fct {

class ParseError : public UsageError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : UsageError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

struct LineReader {
  explicit LineReader(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.emplace_back(line);
      start = end + 1;
    }
    while (!lines.empty() && tokens_of(lines.back()).empty()) lines.pop_back();
  }

  static std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
  }

  bool done() const { return next >= lines.size(); }
  std::size_t line_no() const { return next + 1; }

  std::vector<std::string> take(std::size_t expected, const char* what) {
    if (done()) throw ParseError(line_no(), std::string("missing ") + what);
    auto toks = tokens_of(lines[next]);
    if (expected != 0 && toks.size() != expected)
      throw ParseError(line_no(), std::string("expected ") + std::to_string(expected) + " " +
                                      what + ", found " + std::to_string(toks.size()));
    ++next;
    return toks;
  }

  std::vector<std::string> lines;
  std::size_t next = 0;
};

inline std::int64_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  auto v = parse_int64(tok);
  if (!v || *v < 1) throw ParseError(line, std::string(what) + " must be a positive integer");
  return *v;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  detail::LineReader in(text);
  auto header = in.take(0, "header");
  if (header != std::vector<std::string>{"FCT", "v1"}) throw ParseError(1, "expected header 'FCT v1'");

  const std::size_t dims_line = in.line_no();
  auto dims = in.take(2, "dimensions");
  const auto n = static_cast<std::size_t>(detail::parse_count(dims[0], dims_line, "n"));
  const auto m = static_cast<std::size_t>(detail::parse_count(dims[1], dims_line, "m"));

  Instance inst;
  auto read_marginals = [&](std::size_t count, const char* what, std::vector<std::int64_t>& out) {
    const std::size_t line = in.line_no();
    for (const auto& tok : in.take(count, what)) {
      auto v = parse_int64(tok);
      if (!v) throw ParseError(line, std::string("non-integer ") + what + " '" + tok + "'");
      if (*v <= 0) throw ParseError(line, std::string(what) + " must be positive");
      out.push_back(*v);
    }
  };
  read_marginals(n, "supplies", inst.supply);
  read_marginals(m, "demands", inst.demand);

  inst.fixed = Matrix<Rational>(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t line = in.line_no();
    auto toks = in.take(m, "fixed costs");
    for (std::size_t j = 0; j < m; ++j) {
      if (toks[j] == "inf") throw ParseError(line, "Infinity not allowed in f");
      auto v = parse_rational(toks[j]);
      if (!v) throw ParseError(line, "malformed fixed cost '" + toks[j] + "'");
      if (*v < 0) throw ParseError(line, "negative cost '" + toks[j] + "'");
      inst.fixed(i, j) = *v;
    }
  }
  inst.linear = Matrix<ExtRational>(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t line = in.line_no();
    auto toks = in.take(m, "linear costs");
    for (std::size_t j = 0; j < m; ++j) {
      auto v = parse_ext_rational(toks[j]);
      if (!v) throw ParseError(line, "malformed linear cost '" + toks[j] + "'");
      if (v->is_finite() && v->value() < 0) throw ParseError(line, "negative cost '" + toks[j] + "'");
      inst.linear(i, j) = *v;
    }
  }
  if (!in.done()) throw ParseError(in.line_no(), "unexpected trailing content");
  if (auto violation = validate_instance(inst)) throw ParseError(in.line_no(), *violation);
  return inst;
}

inline std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  const std::size_t n = inst.num_sources(), m = inst.num_sinks();
  out << "FCT v1\n" << n << ' ' << m << '\n';
  auto join = [&](auto&& range) {
    bool first = true;
    for (const auto& v : range) {
      if (!first) out << ' ';
      first = false;
      if constexpr (std::is_integral_v<std::decay_t<decltype(v)>>)
        out << v;
      else
        out << to_string(v);
    }
    out << '\n';
  };
  join(inst.supply);
  join(inst.demand);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < m; ++j) row.push_back(inst.fixed(i, j));
    join(row);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<ExtRational> row;
    for (std::size_t j = 0; j < m; ++j) row.push_back(inst.linear(i, j));
    join(row);
  }
  return out.str();
}

inline FlowSolution parse_solution(std::string_view text) {
  detail::LineReader in(text);
  auto header = in.take(0, "header");
  if (header != std::vector<std::string>{"SOL", "v1"}) throw ParseError(1, "expected header 'SOL v1'");
  FlowSolution x;
  bool first_entry = true;
  while (!in.done()) {
    const std::size_t line = in.line_no();
    auto toks = in.take(0, "entry");
    if (toks.empty()) continue;
    if (first_entry && toks.size() == 2 && toks[0] == "epsilon") {
      auto eps = parse_rational(toks[1]);
      if (!eps || *eps <= 0 || *eps >= 1) throw ParseError(line, "epsilon must be in (0, 1)");
      x.set_relaxation(*eps);
      first_entry = false;
      continue;
    }
    first_entry = false;
    if (toks.size() != 3) throw ParseError(line, "expected 'i j value'");
    auto i = parse_int64(toks[0]);
    auto j = parse_int64(toks[1]);
    if (!i || !j || *i < 1 || *j < 1) throw ParseError(line, "indices must be positive integers");
    auto v = parse_rational(toks[2]);
    if (!v || *v <= 0) throw ParseError(line, "flow must be a positive rational");
    auto si = static_cast<std::size_t>(*i - 1), sj = static_cast<std::size_t>(*j - 1);
    if (x.get(si, sj) != 0) throw ParseError(line, "duplicate edge");
    x.set(si, sj, *v);
  }
  return x;
}

inline std::string serialize_solution(const FlowSolution& x) {
  std::ostringstream out;
  out << "SOL v1\n";
  if (x.relaxation()) out << "epsilon " << to_string(*x.relaxation()) << '\n';
  for (const auto& [edge, flow] : x.entries())
    out << edge.first + 1 << ' ' << edge.second + 1 << ' ' << to_string(flow) << '\n';
  return out.str();
}

}  // namespace fct
