#pragma once

// Shared fixtures: closed-form Kepler data and small numeric helpers.

#include <cmath>
#include <functional>

#include "galilax/dynamics.hpp"

namespace galilax::testing {

/// Two bodies started at periapsis of a Kepler ellipse with semi-major
/// axis a and eccentricity e; textbook energy and period as oracles.
struct KeplerSetup {
  ReducedProblem problem;
  PhaseState state;
  CenteredState z;
  double period;
  double energy;
};

inline KeplerSetup kepler(double e, double a = 1.0, double g = 1.0, double m1 = 1.0, double m2 = 1.0, int d = 2,
                          bool normalized = true) {
  const double mt = m1 + m2;
  const double r = a * (1.0 - e);
  const double v = std::sqrt(g * mt * (1.0 + e) / r);
  MassSystem sys({m1, m2}, d);
  PhaseState s{Matrix::Zero(d, 2), Matrix::Zero(d, 2)};
  s.q(0, 0) = -m2 / mt * r;
  s.q(0, 1) = m1 / mt * r;
  s.p(1, 0) = -m1 * m2 / mt * v;
  s.p(1, 1) = m1 * m2 / mt * v;
  ReducedProblem problem(sys, Potential::newtonian(g), normalized);
  CenteredState z = center(sys, s, problem.basis);
  const double period = 2.0 * M_PI * std::sqrt(a * a * a / (g * mt));
  const double energy = -g * m1 * m2 / (2.0 * a);
  return {std::move(problem), s, std::move(z), period, energy};
}

inline IntegratorConfig adaptive(double tol = 1e-10) {
  IntegratorConfig c;
  c.method = IntegratorConfig::Method::rk45_adaptive;
  c.rel_tol = tol;
  c.abs_tol = tol;
  return c;
}

/// Central-difference gradient of a scalar function of a matrix.
inline Matrix numeric_gradient(const std::function<double(const Matrix&)>& f, const Matrix& x, double h = 1e-5) {
  Matrix g(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      Matrix xp = x, xm = x;
      xp(i, j) += h;
      xm(i, j) -= h;
      g(i, j) = (f(xp) - f(xm)) / (2.0 * h);
    }
  }
  return g;
}

inline double rel_err(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace galilax::testing
