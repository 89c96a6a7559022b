#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tonality {

// Precondition violated by a caller-supplied value.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input bytes are not well-formed UTF-8.
class DecodingError : public std::runtime_error {
 public:
  DecodingError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Malformed or invalid persisted file. line() is 1-based; 0 means the
// problem is not tied to a single line (e.g. missing section).
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Both conditional likelihoods are zero, so the posterior is 0/0.
class UndefinedEvidenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace tonality
