#pragma once

#include <stdexcept>
#include <string>

namespace otf {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A Christoffel step hit a zero pivot: the shift is a zero of one of the
/// current orthogonal polynomials.
class BreakdownError : public std::runtime_error {
 public:
  BreakdownError(int stage, int index)
      : std::runtime_error("Christoffel breakdown at stage " +
                           std::to_string(stage) + ", index " +
                           std::to_string(index)),
        stage_(stage),
        index_(index) {}

  int stage() const noexcept { return stage_; }
  int index() const noexcept { return index_; }

 private:
  int stage_;
  int index_;
};

/// Two exponent pairs of an integral spectrum collided.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The dichotomy on R did not stabilise the integral spectrum.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// The initial bracket does not straddle the target spectral radius, so the
/// configuration cannot produce the optimum.
class OutOfBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The polynomial has no root in the requested bracket.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The polynomial has more than one root in the requested bracket.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every configuration was rejected.
class CompletenessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force instance larger than the supported cap.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otf
