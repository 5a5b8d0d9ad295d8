#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace galilax {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes, masses, or parameters violate a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Two bodies coincide under a potential that is singular at r = 0.
class SingularityError : public Error {
 public:
  SingularityError(int a, int b, std::optional<double> time = std::nullopt)
      : Error(describe(a, b, time)), pair_(a, b), time_(time) {}

  std::pair<int, int> pair() const { return pair_; }
  std::optional<double> time() const { return time_; }

  SingularityError at_time(double t) const { return {pair_.first, pair_.second, t}; }

 private:
  static std::string describe(int a, int b, std::optional<double> t) {
    std::string msg = "collision between bodies " + std::to_string(a) + " and " + std::to_string(b);
    if (t) msg += " at t = " + std::to_string(*t);
    return msg;
  }

  std::pair<int, int> pair_;
  std::optional<double> time_;
};

/// The integrator could not continue (step-size underflow, step budget, ...).
class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, double time)
      : Error(what + " at t = " + std::to_string(time)), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// A derived quantity left its admissible set (e.g. recovered b not PSD).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Rank decisions disagree with each other at the requested tolerance.
class ToleranceInconsistency : public Error {
 public:
  using Error::Error;
};

class DecompositionFailure : public Error {
 public:
  DecompositionFailure(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

}  // namespace galilax
