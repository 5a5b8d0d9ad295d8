#pragma once

// Explicit Runge-Kutta stepping for matrix-valued ODEs y' = f(t, y).

#include <algorithm>
#include <cmath>
#include <functional>

#include "galilax/errors.hpp"
#include "galilax/linalg.hpp"

namespace galilax {

struct IntegratorConfig {
  enum class Method { rk4_fixed, rk45_adaptive };

  Method method = Method::rk45_adaptive;
  double step = 1e-3;           // fixed step for rk4, first trial step for rk45
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double min_step = 1e-14;      // rk45 gives up below this step
  long max_steps = 50'000'000;
  double output_interval = 0.0; // <= 0: sample every accepted step

  /// Throws InvalidInput on non-positive steps or tolerances.
  void validate() const;
};

using MatrixRhs = std::function<Matrix(double, const Matrix&)>;

struct StepOutcome {
  Matrix y;
  double h_used;
  double h_next;
};

/// One classical RK4 step of size h.
Matrix rk4_step(const MatrixRhs& f, double t, const Matrix& y, double h);

/// One accepted Dormand-Prince 5(4) step starting with trial size h; the
/// step is shrunk until the local error estimate passes.
StepOutcome rk45_step(const MatrixRhs& f, double t, const Matrix& y, double h, const IntegratorConfig& cfg);

/// Advances from t0 to exactly t1. `on_step` (optional) sees every accepted
/// (t, y). `h_hint` carries the adaptive step between calls.
Matrix advance(const MatrixRhs& f, double t0, const Matrix& y0, double t1, const IntegratorConfig& cfg,
               double& h_hint, const std::function<void(double, const Matrix&)>& on_step = {});

}  // namespace galilax
