#pragma once

#include <stdexcept>
#include <string>

namespace cayleylab {

/// Raised when a group table, Latin square or other structured input
/// violates one of its defining axioms. `axiom()` names the first violation.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string axiom, const std::string& detail)
      : std::runtime_error("validation failed [" + axiom + "]: " + detail),
        axiom_(std::move(axiom)) {}

  const std::string& axiom() const noexcept { return axiom_; }

 private:
  std::string axiom_;
};

/// Raised for out-of-range numeric parameters and malformed specs.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cayleylab
