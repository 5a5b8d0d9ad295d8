#include "galilax/integrator.hpp"

namespace galilax {

void IntegratorConfig::validate() const {
  if (!(step > 0.0)) throw InvalidInput("integrator step must be positive");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw InvalidInput("integrator tolerances must be positive");
  if (!(min_step > 0.0)) throw InvalidInput("minimum step must be positive");
  if (max_steps <= 0) throw InvalidInput("max_steps must be positive");
}

Matrix rk4_step(const MatrixRhs& f, double t, const Matrix& y, double h) {
  const Matrix k1 = f(t, y);
  const Matrix k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const Matrix k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const Matrix k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (fifth minus fourth order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

StepOutcome rk45_step(const MatrixRhs& f, double t, const Matrix& y, double h, const IntegratorConfig& cfg) {
  const Matrix k1 = f(t, y);
  while (true) {
    if (h < cfg.min_step) throw IntegrationFailure("step size underflow", t);
    // Stages of an oversized trial step can leave the admissible set even
    // when the accepted states do not; treat that as a rejection.
    try {
      const Matrix k2 = f(t + c2 * h, y + h * a21 * k1);
      const Matrix k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
      const Matrix k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const Matrix k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Matrix k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      Matrix y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Matrix k7 = f(t + h, y_new);
      const Matrix err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double acc = 0.0;
      for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y(i)), std::abs(y_new(i)));
        acc += (err(i) / sc) * (err(i) / sc);
      }
      const double norm = err.size() ? std::sqrt(acc / static_cast<double>(err.size())) : 0.0;
      if (!std::isfinite(norm)) {
        h *= 0.25;
        continue;
      }
      const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      if (norm <= 1.0) return {std::move(y_new), h, h * factor};
      h *= std::max(factor, 0.1);
    } catch (const ConsistencyError&) {
      if (h * 0.25 < cfg.min_step) throw;
      h *= 0.25;
    }
  }
}

Matrix advance(const MatrixRhs& f, double t0, const Matrix& y0, double t1, const IntegratorConfig& cfg,
               double& h_hint, const std::function<void(double, const Matrix&)>& on_step) {
  Matrix y = y0;
  double t = t0;
  if (!(h_hint > 0.0)) h_hint = cfg.step;
  long steps = 0;
  while (t < t1) {
    if (++steps > cfg.max_steps) throw IntegrationFailure("step budget exhausted", t);
    const double remaining = t1 - t;
    const bool last_reachable = remaining <= (cfg.method == IntegratorConfig::Method::rk4_fixed ? cfg.step : h_hint) * (1.0 + 1e-12);
    if (cfg.method == IntegratorConfig::Method::rk4_fixed) {
      const double h = last_reachable ? remaining : cfg.step;
      y = rk4_step(f, t, y, h);
      t = last_reachable ? t1 : t + h;
    } else {
      const double trial = last_reachable ? remaining : h_hint;
      StepOutcome out = rk45_step(f, t, y, trial, cfg);
      y = std::move(out.y);
      const bool hit_end = last_reachable && out.h_used == trial;
      t = hit_end ? t1 : t + out.h_used;
      // A step clipped to land on t1 says little about the natural step size.
      if (!hit_end || trial >= h_hint) h_hint = out.h_next;
    }
    if (on_step) on_step(t, y);
  }
  return y;
}

}  // namespace galilax
