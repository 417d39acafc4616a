#pragma once

#include <stdexcept>
#include <string>

namespace elion {

// Invalid physical input (non-positive energy, chi >= 1, unsorted grids, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument sits on a pole of the Gamma function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A special-function evaluation could not reach its accuracy target.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  // Best error estimate reached before giving up.
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Adjacent phase samples differ by an ambiguous amount.
class UnwrapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Post-measurement state has zero norm.
class MeasurementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output file could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace elion
