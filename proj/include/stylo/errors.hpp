#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stylo {

/// Malformed input text (creature files, task lists, spec files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A code falls into the error class (no well-defined interpretation) or is
/// not a member of the class an operation requires.
class MembershipError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric degeneracy: zero separation vector, zero variance, zero covariance.
class DegenerateError : public std::runtime_error {
 public:
  DegenerateError(const std::string& reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}

  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

/// One or more profile measures could not be computed.
class ProfileError : public std::runtime_error {
 public:
  using Failure = std::pair<std::string, std::string>;  // measure name, message

  explicit ProfileError(std::vector<Failure> failures);

  const std::vector<Failure>& failures() const noexcept { return failures_; }

 private:
  std::vector<Failure> failures_;
};

}  // namespace stylo
