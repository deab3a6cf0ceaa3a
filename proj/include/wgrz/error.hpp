#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wgrz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula text. offset() is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error("syntax error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// An operation was handed an input outside its domain (non-prenex formula,
// false QBF for a witness tree, k = 0 for alpha, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnknownWorld : public Error {
 public:
  explicit UnknownWorld(const std::string& id) : Error("unknown world: " + id) {}
};

// A bounded search refused to run (or stopped) because its budget was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace wgrz
