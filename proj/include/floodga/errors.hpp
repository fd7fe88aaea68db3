#pragma once

#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

namespace floodga {

/// Input text could not be parsed (malformed JSON/CSV, schema mismatch).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed values violate a domain invariant. Carries every violation found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  explicit ValidationError(const std::string& violation)
      : ValidationError(std::vector<std::string>{violation}) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Sizes of two collaborating objects disagree (genome vs scenario, ratings vs shares).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters are individually well-formed but unusable together.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A share perturbation would drive some share to zero or below.
class InfeasiblePerturbation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inverse rating search found no integer row within tolerance.
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sweep entry failed; carries the weight-set label and the original error.
class SweepError : public std::runtime_error {
 public:
  SweepError(std::string label, const std::string& what, std::exception_ptr cause)
      : std::runtime_error("weight set " + label + ": " + what), label_(std::move(label)), cause_(cause) {}

  const std::string& label() const noexcept { return label_; }
  std::exception_ptr cause() const noexcept { return cause_; }

 private:
  std::string label_;
  std::exception_ptr cause_;
};

}  // namespace floodga
