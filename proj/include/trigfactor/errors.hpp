#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace trigfactor {

/// Evaluation point off the unit circle.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Incompatible matrix shapes or malformed polynomial data.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sampling grid too coarse to resolve the requested Fourier degrees.
class AliasingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed serialized input; the message names the offending field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix or matrix-valued symbol that was required to be positive
/// semidefinite is not. Carries the offending eigenvalue and, when known,
/// the torus point where it was observed.
class NotPsdError : public std::runtime_error {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue,
              std::vector<double> where = {})
      : std::runtime_error(what),
        min_eigenvalue_(min_eigenvalue),
        where_(std::move(where)) {}

  double min_eigenvalue() const { return min_eigenvalue_; }
  /// Angles t (z = exp(2 pi i t)) of the offending point; empty if n/a.
  const std::vector<double>& where() const { return where_; }

 private:
  double min_eigenvalue_;
  std::vector<double> where_;
};

/// An iterative method stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_gap, int iterations)
      : std::runtime_error(what), last_gap_(last_gap), iterations_(iterations) {}

  double last_gap() const { return last_gap_; }
  int iterations() const { return iterations_; }

 private:
  double last_gap_;
  int iterations_;
};

/// Failure inside a named stage of a multi-stage pipeline.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage)) {}

  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace trigfactor
