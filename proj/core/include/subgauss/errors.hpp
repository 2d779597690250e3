#pragma once

#include <stdexcept>
#include <string>

namespace subgauss {

// Invalid input: non-positive parameter, bad index, malformed spec.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotOnSimplex : public DomainError {
 public:
  using DomainError::DomainError;
};

class EmptyOrFullSubset : public DomainError {
 public:
  using DomainError::DomainError;
};

// Numerical failure: the inputs were valid but an iteration did not settle.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace subgauss
