#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fvsk {

/// Raised when an argument violates an operation's precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a brute-force oracle is asked to handle more vertices than its
/// configured cap.
class OracleLimitError : public std::runtime_error {
 public:
  OracleLimitError(std::size_t vertices, std::size_t cap)
      : std::runtime_error("oracle cap exceeded: " + std::to_string(vertices) +
                           " vertices > cap " + std::to_string(cap)),
        vertices_(vertices),
        cap_(cap) {}

  std::size_t vertices() const noexcept { return vertices_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t vertices_;
  std::size_t cap_;
};

/// Malformed text input. Carries the 1-based line number (0 when unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A construction that cannot be carried out for the given pattern.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The minor test for this pattern is not implemented.
class UnsupportedPatternError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fvsk
