#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dks {

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error(message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Structurally invalid value: self-loop, vertex out of range, bad k.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance exceeds a configured size cap.
class SizeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampling hypothesis does not hold for the given graph. `hypothesis()`
/// names the violated one: "regular", "connected" or "complement_connected".
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(std::string hypothesis, const std::string& message)
      : std::runtime_error(message), hypothesis_(std::move(hypothesis)) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

}  // namespace dks
