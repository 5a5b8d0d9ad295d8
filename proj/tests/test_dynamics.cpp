#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "galilax/dynamics.hpp"
#include "galilax/errors.hpp"
#include "galilax/normal_form.hpp"
#include "galilax/sampling.hpp"
#include "support.hpp"

using namespace galilax;
using galilax::testing::adaptive;
using galilax::testing::kepler;

namespace {

double energy_of(const Sample& s) { return s.diagnostics.energy; }
double lnorm_of(const Sample& s) { return s.diagnostics.angular_momentum_norm; }
double trk2_of(const Sample& s) { return s.diagnostics.casimirs.front(); }

// A bounded 3-body configuration: a tight binary on a wide orbit around a third body.
struct Hierarchical {
  ReducedProblem problem;
  CenteredState z;
};

Hierarchical hierarchical(int d = 3) {
  MassSystem sys({1.0, 0.8, 0.6}, d);
  PhaseState s{Matrix::Zero(d, 3), Matrix::Zero(d, 3)};
  // Inner binary (bodies 0, 1) separated by 0.5, outer body at distance 3.
  s.q(0, 0) = -0.2222;
  s.q(0, 1) = 0.2778;
  s.q(0, 2) = 3.0;
  const double v_inner = std::sqrt(1.8 / 0.5);
  s.p(1, 0) = -1.0 * 0.8 / 1.8 * v_inner;
  s.p(1, 1) = 0.8 * 1.0 / 1.8 * v_inner;
  const double v_outer = std::sqrt(2.4 / 3.0);
  s.p(1, 2) = 0.6 * v_outer;
  if (d == 3) {
    s.p(2, 2) = 0.6 * 0.3 * v_outer;  // tilt the outer orbit out of the plane
    s.q(2, 1) = 0.05;
  }
  ReducedProblem problem(sys, Potential::newtonian());
  CenteredState z = center(sys, s, problem.basis);
  return {std::move(problem), std::move(z)};
}

}  // namespace

TEST(StepZ, FreeMotionIsExactUnderRk4) {
  MassSystem sys({1.0, 2.0, 3.0}, 3);
  ReducedProblem problem(sys, Potential::none());
  Sampler rng(1);
  const CenteredState z0 = random_state(rng, 3, 2);
  IntegratorConfig cfg;
  cfg.method = IntegratorConfig::Method::rk4_fixed;
  const StepResult r = step_z(problem, z0, 0.0, 0.37, cfg);
  const Matrix x_expected = z0.x() + 0.37 * z0.y();
  EXPECT_LT((r.state.leftCols(2) - x_expected).norm(), 1e-14);
  EXPECT_LT((r.state.rightCols(2) - z0.y()).norm(), 1e-15);
}

TEST(StepZ, CollisionCarriesTime) {
  MassSystem sys({1.0, 1.0}, 1);
  ReducedProblem problem(sys, Potential::newtonian());
  // Head-on approach: bodies reach each other in finite time.
  PhaseState s{Matrix(1, 2), Matrix(1, 2)};
  s.q << -0.5, 0.5;
  s.p << 1.0, -1.0;
  const CenteredState z = center(sys, s, problem.basis);
  // A fixed step can hop over a 1-d crossing; the adaptive step cannot.
  try {
    simulate(problem, z, 5.0, adaptive(), SimulationMode::z);
    FAIL() << "expected a collision";
  } catch (const SingularityError& e) {
    ASSERT_TRUE(e.time().has_value());
    EXPECT_GT(*e.time(), 0.0);
    EXPECT_LT(*e.time(), 5.0);
  } catch (const IntegrationFailure& e) {
    EXPECT_GT(e.time(), 0.0);
  }
}

TEST(StepZ, CircularOrbitPeriod) {
  const auto k = kepler(0.0, 1.0);
  // Textbook period 2 pi r^{3/2} / sqrt(G (m1 + m2)).
  EXPECT_NEAR(k.period, 2.0 * M_PI / std::sqrt(2.0), 1e-15);
  IntegratorConfig cfg = adaptive(1e-12);
  double h = 1e-3;
  const Matrix z1 =
      advance([&](double, const Matrix& z) { return z_rhs(k.problem, z); }, 0.0, k.z.z(), k.period, cfg, h);
  EXPECT_LT((z1 - k.z.z()).norm(), 1e-6 * k.z.z().norm());
  // Half a period later the separation points the other way.
  double h2 = 1e-3;
  const Matrix zh =
      advance([&](double, const Matrix& z) { return z_rhs(k.problem, z); }, 0.0, k.z.z(), 0.5 * k.period, cfg, h2);
  EXPECT_LT((zh + k.z.z()).norm(), 1e-6 * k.z.z().norm());
}

TEST(Simulate, EnergyDriftOverTenOrbits) {
  const auto k = kepler(0.3);
  IntegratorConfig cfg = adaptive(1e-10);
  const Trajectory t = simulate(k.problem, k.z, 10.0 * k.period, cfg, SimulationMode::z);
  EXPECT_LT(t.max_relative_drift(energy_of), 1e-8);
  EXPECT_LT(t.max_relative_drift(lnorm_of), 1e-8);
  EXPECT_NEAR(t.samples.front().diagnostics.energy, k.energy, 1e-12);
  const auto times = t.times();
  for (std::size_t i = 1; i < times.size(); ++i) ASSERT_GT(times[i], times[i - 1]);
}

TEST(Simulate, ZeroEndTimeGivesOneSample) {
  const auto k = kepler(0.5);
  for (auto mode : {SimulationMode::z, SimulationMode::k, SimulationMode::both}) {
    const Trajectory t = simulate(k.problem, k.z, 0.0, IntegratorConfig{}, mode);
    ASSERT_EQ(t.samples.size(), 1u);
    EXPECT_EQ(t.samples[0].t, 0.0);
    if (mode != SimulationMode::k) {
      EXPECT_EQ(t.samples[0].z->z(), k.z.z());
    }
    if (mode != SimulationMode::z) {
      EXPECT_EQ(*t.samples[0].k, gram(k.z).k());
    }
  }
  EXPECT_THROW(simulate(k.problem, k.z, -1.0, IntegratorConfig{}, SimulationMode::z), InvalidInput);
}

TEST(Simulate, OutputIntervalSampling) {
  const auto k = kepler(0.2);
  IntegratorConfig cfg = adaptive(1e-10);
  cfg.output_interval = 0.25;
  const Trajectory t = simulate(k.problem, k.z, 1.0, cfg, SimulationMode::both);
  ASSERT_EQ(t.samples.size(), 5u);
  EXPECT_DOUBLE_EQ(t.samples.back().t, 1.0);
  for (const auto& s : t.samples) EXPECT_LT(*s.diagnostics.lax_residual, 1e-8);
}

TEST(StepK, RelativeEquilibriumIsStationary) {
  const auto k = kepler(0.0);
  const Matrix k0 = gram(k.z).k();
  const Matrix p = lax_generator(k.problem, small_gram(k.z)).p;
  EXPECT_LT((p * k0 - k0 * p).norm(), 1e-12);
  const Trajectory t = simulate(k.problem, k.z, 3.0, adaptive(), SimulationMode::k);
  for (const auto& s : t.samples) EXPECT_LT((*s.k - k0).norm(), 3e-12 * std::max(1.0, s.t));
}

TEST(StepK, FreeFlowMatchesFrozenExponential) {
  // With no forces P = (0 0; -M~^{-1} 0) is constant and nilpotent, so
  // K(t) = exp(tP) K0 exp(-tP) with exp(tP) = I + tP.
  MassSystem sys({1.0, 2.0, 0.5}, 2);
  ReducedProblem problem(sys, Potential::none(), false);
  Sampler rng(3);
  const CenteredState z0 = random_state(rng, 2, 2);
  const Matrix k0 = gram(z0).k();
  const Matrix p = lax_generator(problem, small_gram(z0)).p;
  EXPECT_LT((p * p).norm(), 1e-15);
  const double t = 1.7;
  const Matrix e = Matrix::Identity(4, 4) + t * p;
  const Matrix em = Matrix::Identity(4, 4) - t * p;
  const Matrix expected = e * k0 * em;
  IntegratorConfig cfg;
  cfg.method = IntegratorConfig::Method::rk4_fixed;
  cfg.step = 0.1;
  double h = cfg.step;
  const Matrix k1 = advance([&](double, const Matrix& k) { return k_rhs(problem, k); }, 0.0, k0, t, cfg, h);
  EXPECT_LT((k1 - expected).norm(), 1e-12 * expected.norm());
}

TEST(StepK, AgreesWithGramOfZFlow) {
  const auto h = hierarchical();
  const double t_end = 10.0 * dynamical_time(h.problem, h.z);
  // The inner binary completes ~20 orbits; its phase error dominates at looser tolerances.
  const Trajectory t = simulate(h.problem, h.z, t_end, adaptive(1e-12), SimulationMode::both);
  double worst = 0.0;
  for (const auto& s : t.samples) worst = std::max(worst, *s.diagnostics.lax_residual);
  EXPECT_LT(worst, 1e-6);
  EXPECT_LT(t.max_relative_drift(energy_of), 1e-8);
}

TEST(StepK, IsospectralAndCasimirsConserved) {
  const auto h = hierarchical();
  const Trajectory t =
      simulate(h.problem, h.z, 10.0 * dynamical_time(h.problem, h.z), adaptive(1e-12), SimulationMode::k);
  auto spectrum = [](const Matrix& k) {
    Eigen::EigenSolver<Matrix> es(k, false);
    std::vector<double> mod;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) mod.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mod.begin(), mod.end());
    return mod;
  };
  // Spatial (p, q) = (1, 1): one frequency pair plus a nilpotent block. The
  // defective zero eigenvalues move like sqrt(perturbation), the pair linearly.
  const auto s0 = spectrum(*t.samples.front().k);
  ASSERT_EQ(s0.size(), 4u);
  for (const auto& s : t.samples) {
    const auto si = spectrum(*s.k);
    EXPECT_LT(si[0], 1e-4);
    EXPECT_LT(si[1], 1e-4);
    EXPECT_NEAR(si[2], s0[2], 1e-7 * s0[2]);
    EXPECT_NEAR(si[3], s0[3], 1e-7 * s0[3]);
  }
  EXPECT_LT(t.max_relative_drift(trk2_of), 1e-8);
  EXPECT_LT(t.max_relative_drift([](const Sample& s) { return s.diagnostics.casimirs[1]; }), 1e-8);
}

TEST(StepK, RejectsNonPsdSmallGram) {
  const auto k = kepler(0.0);
  Matrix bad = gram(k.z).k();
  // K = J G, so -J K = G; flip the sign of the upper-left block of G.
  const Matrix g = -symplectic_j(1) * bad;
  Matrix g2 = g;
  g2(0, 0) = -g(0, 0);
  bad = symplectic_j(1) * g2;
  EXPECT_THROW(k_rhs(k.problem, bad), ConsistencyError);
}

TEST(Casimirs, ZeroAndNormalForm) {
  for (double c : casimirs(Matrix::Zero(4, 4), 2)) EXPECT_EQ(c, 0.0);
  const GramElement g = normal_form_matrix(InvariantSignature{1, 0, {2.0}, 2}, 2);
  const auto c = casimirs(g.k(), 2);
  EXPECT_NEAR(c[0], -8.0, 1e-14);
  EXPECT_NEAR(c[1], 2.0 * 16.0, 1e-13);
}

TEST(Dynamics, OddTracesVanish) {
  Sampler rng(5);
  for (int t = 0; t < 20; ++t) {
    const CenteredState z = random_state(rng, 1 + t % 4, 1 + t % 4);
    const auto tr = power_traces(gram(z).k(), 7);
    const double scale = std::max(1.0, std::abs(tr[1]));
    for (int k = 1; k <= 7; k += 2) EXPECT_LT(std::abs(tr[k - 1]) / std::pow(scale, k / 2.0), 1e-9);
  }
}

TEST(Dynamics, SpatialRankPersists) {
  const auto h = hierarchical(3);
  const Vector s0 = singular_values(h.z.z());
  ASSERT_GT(s0(2), 1e-2);
  const Trajectory t = simulate(h.problem, h.z, 10.0 * dynamical_time(h.problem, h.z), adaptive(), SimulationMode::z);
  for (const auto& s : t.samples) EXPECT_GT(singular_values(s.z->z())(2), 1e-6);
}

TEST(Dynamics, AngularMomentumConservedInModeZ) {
  const auto h = hierarchical(3);
  const Trajectory t = simulate(h.problem, h.z, 10.0 * dynamical_time(h.problem, h.z), adaptive(), SimulationMode::z);
  EXPECT_LT(t.max_relative_drift(lnorm_of), 1e-8);
}
