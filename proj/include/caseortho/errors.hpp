#pragma once

#include <stdexcept>
#include <string>

namespace caseortho {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point lies on the branch cut; use the boundary-value form.
class CutError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Evaluation at an endpoint of the spectrum interval.
class EndpointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Adaptive quadrature did not reach its tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double error)
      : Error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// Argument unwrapping failed to keep a continuous branch.
class BranchError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be real (or satisfy an identity) does not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Canonical function or solution rejected by its self-check.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Normalization vanishes on the spectral grid.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Tabulated function queried outside its grid hull.
class InterpolationError : public Error {
 public:
  using Error::Error;
};

/// Source iteration did not converge.
class IterationError : public Error {
 public:
  IterationError(const std::string& what, double spectral_radius)
      : Error(what), spectral_radius_(spectral_radius) {}

  double spectral_radius() const noexcept { return spectral_radius_; }

 private:
  double spectral_radius_;
};

/// Far field of a truncated-domain solution is not yet constant.
class NonAsymptoticError : public Error {
 public:
  using Error::Error;
};

/// Operation not available for the selected model.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent inputs (mismatched problems, bad configuration).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace caseortho
