#pragma once

// Text formats for the problems the reductions start from. Vertex, set,
// element and coordinate indices are 1-based in text.
//
//   DST v1            SETCOVER v1          3DM v1
//   V E               m n                  n q
//   r                 k e_1 ... e_k (x m)  x y z (x q)
//   k t_1 ... t_k
//   u v cost (x E)

#include "fct/io.hpp"
#include "fct/problems.hpp"

#include <string>
#include <string_view>

namespace fct {

namespace detail {

inline std::size_t parse_index(const std::string& tok, std::size_t limit, std::size_t line,
                               const char* what) {
  auto v = parse_int64(tok);
  if (!v || *v < 1 || static_cast<std::size_t>(*v) > limit)
    throw ParseError(line, std::string(what) + " '" + tok + "' out of range");
  return static_cast<std::size_t>(*v - 1);
}

inline std::size_t parse_size(const std::string& tok, std::size_t line, const char* what) {
  auto v = parse_int64(tok);
  if (!v || *v < 0) throw ParseError(line, std::string(what) + " must be a nonnegative integer");
  return static_cast<std::size_t>(*v);
}

inline void expect_header(LineReader& in, const char* name) {
  auto header = in.take(0, "header");
  if (header != std::vector<std::string>{name, "v1"})
    throw ParseError(1, std::string("expected header '") + name + " v1'");
}

}  // namespace detail

inline DstInstance parse_dst(std::string_view text) {
  detail::LineReader in(text);
  detail::expect_header(in, "DST");
  DstInstance dst;
  std::size_t line = in.line_no();
  auto dims = in.take(2, "counts");
  dst.num_vertices = detail::parse_size(dims[0], line, "V");
  const std::size_t edges = detail::parse_size(dims[1], line, "E");
  line = in.line_no();
  dst.root = detail::parse_index(in.take(1, "root")[0], dst.num_vertices, line, "root");
  line = in.line_no();
  auto terms = in.take(0, "terminals");
  if (terms.empty() || detail::parse_size(terms[0], line, "terminal count") != terms.size() - 1)
    throw ParseError(line, "terminal count does not match the list");
  for (std::size_t k = 1; k < terms.size(); ++k)
    dst.terminals.push_back(detail::parse_index(terms[k], dst.num_vertices, line, "terminal"));
  for (std::size_t k = 0; k < edges; ++k) {
    line = in.line_no();
    auto toks = in.take(3, "edge fields");
    auto cost = parse_rational(toks[2]);
    if (!cost || *cost < 0) throw ParseError(line, "malformed edge cost '" + toks[2] + "'");
    dst.edges.push_back({detail::parse_index(toks[0], dst.num_vertices, line, "vertex"),
                         detail::parse_index(toks[1], dst.num_vertices, line, "vertex"), *cost});
  }
  if (!in.done()) throw ParseError(in.line_no(), "unexpected trailing content");
  return dst;
}

inline SetCoverInstance parse_set_cover(std::string_view text) {
  detail::LineReader in(text);
  detail::expect_header(in, "SETCOVER");
  SetCoverInstance sc;
  std::size_t line = in.line_no();
  auto dims = in.take(2, "counts");
  sc.num_sets = detail::parse_size(dims[0], line, "m");
  sc.num_elements = detail::parse_size(dims[1], line, "n");
  for (std::size_t v = 0; v < sc.num_sets; ++v) {
    line = in.line_no();
    auto toks = in.take(0, "set");
    if (toks.empty() || detail::parse_size(toks[0], line, "set size") != toks.size() - 1)
      throw ParseError(line, "set size does not match the list");
    std::vector<std::size_t> members;
    for (std::size_t k = 1; k < toks.size(); ++k)
      members.push_back(detail::parse_index(toks[k], sc.num_elements, line, "element"));
    sc.members.push_back(std::move(members));
  }
  if (!in.done()) throw ParseError(in.line_no(), "unexpected trailing content");
  if (auto violation = validate_set_cover(sc)) throw ParseError(in.line_no(), *violation);
  return sc;
}

inline ThreeDmInstance parse_three_dm(std::string_view text) {
  detail::LineReader in(text);
  detail::expect_header(in, "3DM");
  ThreeDmInstance tdm;
  std::size_t line = in.line_no();
  auto dims = in.take(2, "counts");
  tdm.n = detail::parse_size(dims[0], line, "n");
  const std::size_t q = detail::parse_size(dims[1], line, "q");
  for (std::size_t k = 0; k < q; ++k) {
    line = in.line_no();
    auto toks = in.take(3, "coordinates");
    tdm.triples.push_back({detail::parse_index(toks[0], tdm.n, line, "x"),
                           detail::parse_index(toks[1], tdm.n, line, "y"),
                           detail::parse_index(toks[2], tdm.n, line, "z")});
  }
  if (!in.done()) throw ParseError(in.line_no(), "unexpected trailing content");
  if (auto violation = validate_three_dm(tdm)) throw ParseError(in.line_no(), *violation);
  return tdm;
}

}  // namespace fct
