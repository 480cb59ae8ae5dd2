#pragma once

#include <stdexcept>
#include <string>

namespace dimens {

/// A value lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called on inputs that violate its stated preconditions.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A quantity normalised by a cube or ball mass is undefined because that mass is zero.
class ZeroMassError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed configuration, spec document or tree file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dimens
