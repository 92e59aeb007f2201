#pragma once

#include <stdexcept>
#include <string>

namespace percolab {

// Invalid geometric or probabilistic input (bad radii, p outside [0,1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A region that contains no lattice site.
class EmptyDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Caller broke an API precondition (missing interval, wrong topology, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Quadrature, root finding or optimisation failed to converge.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, std::string diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}

  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

}  // namespace percolab
