#pragma once

#include <stdexcept>
#include <string>

namespace qtf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (asymmetric matrix, bad
/// dimensions, parameter out of range).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A problem callback produced a non-finite value.
class EvaluationError : public Error {
 public:
  explicit EvaluationError(std::string quantity)
      : Error("non-finite value in " + quantity), quantity_(std::move(quantity)) {}

  const std::string& quantity() const noexcept { return quantity_; }

 private:
  std::string quantity_;
};

/// Argument outside the domain of a barrier term (x <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization of a matrix that is not positive definite.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// Least-squares solve requested on a rank-deficient Jacobian.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Safeguard caps hit (nu halvings, zeta growth); the solve cannot continue.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

/// Malformed problem file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Registry lookup for a name that is not registered.
class UnknownProblem : public Error {
 public:
  using Error::Error;
};

}  // namespace qtf
