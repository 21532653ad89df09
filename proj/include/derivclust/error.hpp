#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace derivclust {

// Invalid input data or a violated data contract. The CLI maps these to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed record in a text input; carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Structurally valid records that do not form a valid network.
class IntegrityError : public DataError {
 public:
  using DataError::DataError;
};

// Unreadable or unwritable files. The CLI maps these to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace derivclust
