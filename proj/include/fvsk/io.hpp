#pragma once

#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fvsk/errors.hpp"
#include "fvsk/graph.hpp"

// Edge-list text format:
//
//   # comment
//   p <n> <m>
//   <u> <v>        (m lines, 0-based ids)
//
// The writer emits `n = id_bound()` and edges sorted by (u, v) with u < v, so
// identical graphs produce identical bytes.

namespace fvsk::io {

namespace detail {

inline bool skip_line(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

inline long long parse_int(std::istringstream& in, std::size_t line_no, const char* what) {
  long long value;
  if (!(in >> value)) throw ParseError(line_no, std::string("expected ") + what);
  return value;
}

inline void expect_end(std::istringstream& in, std::size_t line_no) {
  std::string rest;
  if (in >> rest) throw ParseError(line_no, "unexpected trailing token '" + rest + "'");
}

}  // namespace detail

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  long long n = 0, m = 0, seen = 0;
  Graph g;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      ls >> tag;
      if (tag != "p") throw ParseError(line_no, "expected header 'p <n> <m>'");
      n = detail::parse_int(ls, line_no, "vertex count");
      m = detail::parse_int(ls, line_no, "edge count");
      detail::expect_end(ls, line_no);
      if (n < 0 || m < 0) throw ParseError(line_no, "negative count in header");
      g = Graph(static_cast<std::size_t>(n));
      have_header = true;
      continue;
    }
    long long u = detail::parse_int(ls, line_no, "edge endpoint");
    long long v = detail::parse_int(ls, line_no, "edge endpoint");
    detail::expect_end(ls, line_no);
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError(line_no, "edge endpoint out of range [0, " + std::to_string(n) + ")");
    if (u == v) throw ParseError(line_no, "self-loop");
    if (!g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
      throw ParseError(line_no, "duplicate edge");
    ++seen;
  }
  if (!have_header) throw ParseError(line_no, "missing header 'p <n> <m>'");
  if (seen != m)
    throw ParseError(line_no, "header announces " + std::to_string(m) + " edges, found " +
                                  std::to_string(seen));
  return g;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "p " << g.id_bound() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

/// Whitespace-separated vertex ids; '#' starts a comment line.
inline VertexSet read_vertex_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Vertex> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(token, &used);
        if (used != token.size() || v < 0) throw std::invalid_argument(token);
        ids.push_back(static_cast<Vertex>(v));
      } catch (const std::logic_error&) {
        throw ParseError(line_no, "invalid vertex id '" + token + "'");
      }
    }
  }
  return VertexSet(std::move(ids));
}

inline void write_vertex_list(std::ostream& out, const VertexSet& s) {
  bool first = true;
  for (Vertex v : s) {
    if (!first) out << ' ';
    out << v;
    first = false;
  }
  out << '\n';
}

template <typename Reader>
auto read_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return reader(in);
}

}  // namespace fvsk::io
