#pragma once

#include <cstddef>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "fvsk/errors.hpp"
#include "fvsk/reduction.hpp"

namespace fvsk::io {

/// DIMACS CNF: "c" comment lines, a "p cnf <n> <m>" header, then m clauses
/// each terminated by 0 (clauses may span lines). Empty clauses are rejected.
inline CnfFormula read_dimacs(std::istream& in) {
  CnfFormula f;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  long long declared = 0;
  std::vector<int> clause;
  std::size_t clause_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == 'c') continue;
    if (first == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::string kind;
      long long n = -1;
      if (!(ls >> kind >> n >> declared) || kind != "cnf")
        throw ParseError(line_no, "expected header 'p cnf <variables> <clauses>'");
      std::string rest;
      if (ls >> rest) throw ParseError(line_no, "unexpected trailing token '" + rest + "'");
      if (n < 0 || declared < 0) throw ParseError(line_no, "negative count in header");
      f.variable_count = static_cast<int>(n);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before 'p cnf' header");
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      long long lit;
      try {
        std::size_t used = 0;
        lit = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw ParseError(line_no, "invalid literal '" + tok + "'");
      }
      if (lit == 0) {
        if (clause.empty()) throw ParseError(line_no, "empty clause");
        f.clauses.push_back(std::move(clause));
        clause.clear();
        continue;
      }
      if (std::llabs(lit) > f.variable_count)
        throw ParseError(line_no, "literal " + tok + " out of range [1, " +
                                      std::to_string(f.variable_count) + "]");
      if (clause.empty()) clause_line = line_no;
      clause.push_back(static_cast<int>(lit));
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!clause.empty()) throw ParseError(clause_line, "clause is missing its terminating 0");
  if (static_cast<long long>(f.clauses.size()) != declared)
    throw ParseError(line_no, "header announces " + std::to_string(declared) + " clauses, found " +
                                  std::to_string(f.clauses.size()));
  return f;
}

inline CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return read_dimacs(in);
}

inline void write_dimacs(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
}

}  // namespace fvsk::io
