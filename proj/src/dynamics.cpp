#include "galilax/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "galilax/errors.hpp"

namespace galilax {

ReducedProblem::ReducedProblem(MassSystem sys, Potential pot, bool normalized)
    : system(std::move(sys)), basis(build_jacobi_basis(system, normalized)), potential(std::move(pot)) {}

ReducedProblem::ReducedProblem(MassSystem sys, JacobiBasis b, Potential pot)
    : system(std::move(sys)), basis(std::move(b)), potential(std::move(pot)) {
  if (basis.bodies() != system.bodies()) throw InvalidInput("basis does not match the mass system");
}

LaxGenerator lax_generator(const ReducedProblem& problem, const Matrix& b) {
  const WintnerConley wc = wintner_conley_reduced(problem.system, problem.basis, b, problem.potential);
  return assemble_p(wc.a, problem.basis.reduced_mass_matrix());
}

Matrix z_rhs(const ReducedProblem& problem, const Matrix& z) {
  const int m = problem.half_size();
  const Matrix x = z.leftCols(m);
  return -z * lax_generator(problem, x.transpose() * x).p;
}

Matrix recover_small_gram(const Matrix& k) {
  const int m = static_cast<int>(k.rows() / 2);
  const Matrix g = -symplectic_j(m) * k;
  Matrix b = g.topLeftCorner(m, m);
  b = (0.5 * (b + b.transpose())).eval();
  const double tr = b.trace();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(b, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-8 * std::abs(tr))
    throw ConsistencyError("recovered small Gram matrix is not positive semidefinite");
  return b;
}

Matrix k_rhs(const ReducedProblem& problem, const Matrix& k) {
  const Matrix p = lax_generator(problem, recover_small_gram(k)).p;
  return p * k - k * p;
}

namespace {

MatrixRhs timed(MatrixRhs f) {
  return [f = std::move(f)](double t, const Matrix& y) -> Matrix {
    try {
      return f(t, y);
    } catch (const SingularityError& e) {
      if (e.time()) throw;
      throw e.at_time(t);
    } catch (const ConsistencyError& e) {
      throw ConsistencyError(std::string(e.what()) + " at t = " + std::to_string(t));
    }
  };
}

MatrixRhs z_field(const ReducedProblem& problem) {
  return timed([&problem](double, const Matrix& z) { return z_rhs(problem, z); });
}

MatrixRhs k_field(const ReducedProblem& problem) {
  return timed([&problem](double, const Matrix& k) { return k_rhs(problem, k); });
}

StepResult step_with(const MatrixRhs& f, const Matrix& y, double t, double h, const IntegratorConfig& cfg) {
  cfg.validate();
  if (cfg.method == IntegratorConfig::Method::rk4_fixed) return {rk4_step(f, t, y, h), h, h};
  StepOutcome out = rk45_step(f, t, y, h, cfg);
  return {std::move(out.y), out.h_used, out.h_next};
}

}  // namespace

StepResult step_z(const ReducedProblem& problem, const CenteredState& z, double t, double h,
                  const IntegratorConfig& cfg) {
  return step_with(z_field(problem), z.z(), t, h, cfg);
}

StepResult step_k(const ReducedProblem& problem, const Matrix& k, double t, double h, const IntegratorConfig& cfg) {
  return step_with(k_field(problem), k, t, h, cfg);
}

std::vector<double> casimirs(const Matrix& k, int mMax) {
  std::vector<double> out;
  const Matrix k2 = k * k;
  Matrix power = Matrix::Identity(k.rows(), k.cols());
  for (int l = 1; l <= mMax; ++l) {
    power = power * k2;
    out.push_back(power.trace());
  }
  return out;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  for (const auto& s : samples) t.push_back(s.t);
  return t;
}

double Trajectory::max_relative_drift(double (*f)(const Sample&), double floor) const {
  if (samples.empty()) return 0.0;
  const double ref = f(samples.front());
  const double denom = std::max(std::abs(ref), floor);
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, std::abs(f(s) - ref) / denom);
  return worst;
}

Diagnostics diagnose_z(const ReducedProblem& problem, const CenteredState& z) {
  Diagnostics d;
  d.energy = energy(problem.system, problem.basis, z, problem.potential);
  d.angular_momentum_norm = angular_momentum(z).norm();
  d.casimirs = casimirs(gram(z).k(), problem.half_size());
  return d;
}

Diagnostics diagnose_k(const ReducedProblem& problem, const Matrix& k) {
  Diagnostics d;
  const GramElement g = GramElement::from_lax(k);
  d.energy = energy_from_gram(problem.system, problem.basis, g.g(), problem.potential);
  d.casimirs = casimirs(k, problem.half_size());
  // trace L^2 = trace K^2 and ||L||_F^2 = -trace L^2.
  d.angular_momentum_norm = std::sqrt(std::max(0.0, -d.casimirs.front()));
  return d;
}

Trajectory simulate(const ReducedProblem& problem, const CenteredState& initial, double t_end,
                    const IntegratorConfig& cfg, SimulationMode mode) {
  cfg.validate();
  if (!(t_end >= 0.0)) throw InvalidInput("end time must be non-negative");
  if (initial.half_size() != problem.half_size() || initial.dimension() != problem.system.dimension())
    throw InvalidInput("initial state does not match the problem");

  const bool want_z = mode != SimulationMode::k;
  const bool want_k = mode != SimulationMode::z;
  const MatrixRhs fz = z_field(problem);
  const MatrixRhs fk = k_field(problem);

  Trajectory traj;
  traj.mode = mode;
  auto record = [&](double t, const std::optional<Matrix>& z, const std::optional<Matrix>& k) {
    Sample s;
    s.t = t;
    if (z) {
      s.z = CenteredState(*z);
      s.diagnostics = diagnose_z(problem, *s.z);
    }
    if (k) {
      s.k = *k;
      if (!z) s.diagnostics = diagnose_k(problem, *k);
    }
    if (z && k) s.diagnostics.lax_residual = (*k - gram(*s.z).k()).norm();
    traj.samples.push_back(std::move(s));
  };

  Matrix z = initial.z();
  Matrix k = gram(initial).k();
  record(0.0, want_z ? std::optional<Matrix>(z) : std::nullopt, want_k ? std::optional<Matrix>(k) : std::nullopt);
  if (t_end == 0.0) return traj;

  double hz = cfg.step;
  double hk = cfg.step;
  if (cfg.output_interval > 0.0) {
    double t = 0.0;
    for (long i = 1; t < t_end; ++i) {
      const double next = std::min(t_end, static_cast<double>(i) * cfg.output_interval);
      if (want_z) z = advance(fz, t, z, next, cfg, hz);
      if (want_k) k = advance(fk, t, k, next, cfg, hk);
      t = next;
      record(t, want_z ? std::optional<Matrix>(z) : std::nullopt, want_k ? std::optional<Matrix>(k) : std::nullopt);
    }
    return traj;
  }

  if (!want_z) {
    advance(fk, 0.0, k, t_end, cfg, hk, [&](double t, const Matrix& y) { record(t, std::nullopt, y); });
    return traj;
  }
  std::vector<std::pair<double, Matrix>> z_steps;
  advance(fz, 0.0, z, t_end, cfg, hz, [&](double t, const Matrix& y) { z_steps.emplace_back(t, y); });
  double t = 0.0;
  for (auto& [tz, zz] : z_steps) {
    if (want_k) k = advance(fk, t, k, tz, cfg, hk);
    t = tz;
    record(t, zz, want_k ? std::optional<Matrix>(k) : std::nullopt);
  }
  return traj;
}

double dynamical_time(const ReducedProblem& problem, const CenteredState& z) {
  const double size = std::sqrt(squared_distances_from_gram(problem.basis, small_gram(z)).maxCoeff());
  const double g = problem.potential.kind() == Potential::Kind::custom ? 1.0 : std::abs(problem.potential.coupling());
  const double gm = (g > 0.0 ? g : 1.0) * problem.system.total_mass();
  return std::pow(size, 1.5) / std::sqrt(gm);
}

}  // namespace galilax
