#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctvm {

/// Bad input data: malformed files, invariant violations in loaded graphs.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : DataError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Misuse of the command line (unknown algorithm, conflicting flags).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ctvm
