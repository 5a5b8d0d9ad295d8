#pragma once

// Time integration of the centered equations Zdot = -Z P(Z) and of the
// reduced Lax equation Kdot = [P, K], with conserved-quantity tracking.

#include <optional>
#include <vector>

#include "galilax/configuration.hpp"
#include "galilax/forces.hpp"
#include "galilax/integrator.hpp"
#include "galilax/reduction.hpp"

namespace galilax {

/// Everything the right-hand sides need: masses, Jacobi basis, potential.
struct ReducedProblem {
  MassSystem system;
  JacobiBasis basis;
  Potential potential;

  ReducedProblem(MassSystem sys, Potential pot, bool normalized = true);
  ReducedProblem(MassSystem sys, JacobiBasis basis, Potential pot);

  int half_size() const { return system.reduced_size(); }
};

/// P(b) = J diag(M~^{-1}, A~(b)).
LaxGenerator lax_generator(const ReducedProblem& problem, const Matrix& b);

/// -Z P(Z).
Matrix z_rhs(const ReducedProblem& problem, const Matrix& z);

/// [P(b), K] with b the upper-left block of G = -J K. Throws
/// ConsistencyError when b has an eigenvalue below -1e-8 trace(b).
Matrix k_rhs(const ReducedProblem& problem, const Matrix& k);

/// Upper-left block of -J K, checked for positive semidefiniteness.
Matrix recover_small_gram(const Matrix& k);

struct StepResult {
  Matrix state;
  double h_used;
  double h_next;
};

/// One step of the configured method from time t with (trial) step h.
/// Collisions surface as SingularityError stamped with t.
StepResult step_z(const ReducedProblem& problem, const CenteredState& z, double t, double h,
                  const IntegratorConfig& cfg);
StepResult step_k(const ReducedProblem& problem, const Matrix& k, double t, double h, const IntegratorConfig& cfg);

/// trace(K^{2l}) for l = 1..mMax.
std::vector<double> casimirs(const Matrix& k, int mMax);

enum class SimulationMode { z, k, both };

struct Diagnostics {
  double energy = 0.0;
  double angular_momentum_norm = 0.0;  // Frobenius norm of L
  std::vector<double> casimirs;
  std::optional<double> lax_residual;  // ||K(t) - J G(Z(t))||, mode both only
};

struct Sample {
  double t = 0.0;
  std::optional<CenteredState> z;
  std::optional<Matrix> k;
  Diagnostics diagnostics;
};

struct Trajectory {
  SimulationMode mode = SimulationMode::z;
  std::vector<Sample> samples;

  std::vector<double> times() const;
  /// max over samples of |f(s) - f(s_0)| / max(|f(s_0)|, floor).
  double max_relative_drift(double (*f)(const Sample&), double floor = 1e-300) const;
};

Diagnostics diagnose_z(const ReducedProblem& problem, const CenteredState& z);
Diagnostics diagnose_k(const ReducedProblem& problem, const Matrix& k);

/// Integrates to tEnd, sampling every cfg.output_interval (or every accepted
/// step when the interval is not positive). In mode both the K equation is
/// integrated independently from K(0) = J G(Z(0)) and sampled at the same times.
Trajectory simulate(const ReducedProblem& problem, const CenteredState& initial, double t_end,
                    const IntegratorConfig& cfg, SimulationMode mode);

/// L^{3/2} / sqrt(G M) with L the largest mutual distance; reporting only.
double dynamical_time(const ReducedProblem& problem, const CenteredState& z);

}  // namespace galilax
