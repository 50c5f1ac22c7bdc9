#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kluyver {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An integral or series that does not converge for the given arguments.
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Evaluation point sits on (or too close to) a pole or an integrable
// singularity that the requested route cannot resolve.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, std::complex<double> residue = {0.0, 0.0})
      : DomainError(what), residue_(residue) {}
  std::complex<double> residue() const noexcept { return residue_; }

 private:
  std::complex<double> residue_;
};

// Result would not be representable as a finite binary64 value.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// A numerical procedure stopped short of its tolerance. The best
// available estimate is carried along so callers may still report it.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

// Internal invariant violated; indicates a bug rather than bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A detected structural property (such as a sign or symmetry) failed to
// validate at independent sample points.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kluyver
