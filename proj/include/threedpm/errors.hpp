#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace threedpm {

/// Base class of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on an input outside its domain (incomplete lists,
/// unequal classes, missing master lists, ...). Distinct from "property fails".
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed text document. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An exhaustive search hit its node budget before reaching a verdict.
class SearchLimitExceeded : public Error {
 public:
  explicit SearchLimitExceeded(std::uint64_t nodes)
      : Error("search aborted after " + std::to_string(nodes) + " nodes"), nodes_(nodes) {}

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::uint64_t nodes_;
};

}  // namespace threedpm
