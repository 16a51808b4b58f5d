#pragma once

#include <stdexcept>
#include <string>

namespace trapexp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical parameter is missing, non-positive or otherwise unusable.
class InvalidSpecError : public Error {
 public:
  InvalidSpecError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Argument outside the mathematical domain of a formula (b <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The requested design cannot be realised with the given gamma/delta/tau_f.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double offending_value)
      : Error(what), value_(offending_value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Requested duration is shorter than the bang-bang minimum time.
class InfeasibleDurationError : public InfeasibleError {
 public:
  InfeasibleDurationError(const std::string& what, double tau_min)
      : InfeasibleError(what, tau_min) {}
  double tau_min() const noexcept { return value(); }
};

/// tau_f(c1) failed to bracket the requested duration.
class MonotonicityError : public Error {
 public:
  using Error::Error;
};

/// Ermakov integration reached b <= 0 or produced NaN.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double tau) : Error(what), tau_(tau) {}
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

/// Spatial grid cannot represent the requested state.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition (grid mismatch, unnormalised state).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Simulation fault: probability reached the grid edge.
class LeakError : public Error {
 public:
  LeakError(const std::string& what, double tau) : Error(what), tau_(tau) {}
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

/// Simulation fault: norm drift above tolerance.
class UnitarityError : public Error {
 public:
  using Error::Error;
};

/// Quantity cannot be represented (factorial overflow and similar).
class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace trapexp
