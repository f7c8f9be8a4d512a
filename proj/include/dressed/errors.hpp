#pragma once

#include <stdexcept>
#include <string>

namespace dressed {

// Invalid physical input (nonpositive frequency, xi outside [0, 1], ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A caller broke a documented precondition on an otherwise valid object.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Coupling matrix lost positive definiteness; the parameter set is unphysical.
class ModelInstabilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BracketingError : public std::runtime_error {
public:
  BracketingError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

private:
  double lower_;
  double upper_;
};

class InsufficientDataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Survival decayed to (or below) zero inside a fit window.
class WindowError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace dressed
