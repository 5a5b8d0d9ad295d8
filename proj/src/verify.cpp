#include "galilax/verify.hpp"

#include <cmath>
#include <sstream>

#include "galilax/ac_bridge.hpp"
#include "galilax/dynamics.hpp"
#include "galilax/errors.hpp"
#include "galilax/normal_form.hpp"
#include "galilax/reduction.hpp"
#include "galilax/sampling.hpp"

namespace galilax {

namespace {

void record(SuiteResult& r, double value, const std::string& where) {
  r.max_residual = std::max(r.max_residual, value);
  if (!(value <= r.threshold)) {
    if (r.failures == 0) r.detail = where;
    ++r.failures;
  }
}

std::vector<double> random_masses(Sampler& rng, int n) {
  std::vector<double> m(n);
  for (auto& x : m) x = rng.uniform(0.5, 2.0);
  return m;
}

}  // namespace

SuiteResult verify_spectral(std::uint64_t seed, int trials) {
  SuiteResult r;
  r.name = "spectral";
  r.trials = trials;
  r.threshold = 1e-9;
  Sampler rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int d = 2 + t % 3;
    const int n = 2 + (t / 3) % 4;
    const CenteredState z = random_state(rng, d, n - 1);
    const SpectralTraces tr = spectral_traces(z, 6);
    for (int k = 1; k <= 6; ++k) {
      const double lk = tr.l[k - 1];
      const double kk = tr.k[k - 1];
      double err = std::abs(lk - kk) / std::max(1.0, std::abs(kk));
      // Odd powers of antisymmetric / Hamiltonian matrices are traceless.
      if (k % 2 == 1) err = std::max(err, std::max(std::abs(lk), std::abs(kk)) / std::max(1.0, std::abs(tr.k[1])));
      std::ostringstream where;
      where << "trial " << t << " (d=" << d << ", n=" << n << "), k=" << k;
      record(r, err, where.str());
    }
  }
  return r;
}

SuiteResult verify_casimir(std::uint64_t seed, int trials) {
  SuiteResult r;
  r.name = "casimir";
  r.trials = trials;
  r.threshold = 1e-8;
  Sampler rng(seed);
  IntegratorConfig cfg;
  cfg.method = IntegratorConfig::Method::rk45_adaptive;
  cfg.step = 1e-3;
  for (int t = 0; t < trials; ++t) {
    const int d = 2 + t % 2;
    const int n = 3;
    MassSystem sys(random_masses(rng, n), d);
    ReducedProblem problem(sys, Potential::newtonian(1.0));
    const CenteredState z = center(sys, random_collision_free(rng, sys), problem.basis);
    const int m = problem.half_size();

    // Closed form against the spectral invariants.
    const Matrix k0 = gram(z).k();
    const auto cas = casimirs(k0, m);
    const InvariantSignature sig = invariants_from_z(z).signature;
    for (int l = 1; l <= m; ++l) {
      double expected = 0.0;
      for (double w : sig.omega_sq) expected += 2.0 * std::pow(-1.0, l) * std::pow(w, 2 * l);
      std::ostringstream where;
      where << "trial " << t << " closed form l=" << l;
      record(r, std::abs(cas[l - 1] - expected) / std::max(1.0, std::abs(expected)), where.str());
    }

    // Conservation along a short Lax-flow segment.
    double h = cfg.step;
    const Matrix k1 = advance([&](double, const Matrix& k) { return k_rhs(problem, k); }, 0.0, k0, 0.05, cfg, h);
    const auto cas1 = casimirs(k1, m);
    for (int l = 1; l <= m; ++l) {
      std::ostringstream where;
      where << "trial " << t << " drift l=" << l;
      // Measured against ||K||^{2l}: tr K^2 = -||L||^2 can be tiny next to K.
      const double scale = std::max(std::abs(cas[l - 1]), std::pow(k0.norm(), 2 * l));
      record(r, std::abs(cas1[l - 1] - cas[l - 1]) / scale, where.str());
    }
  }
  r.rejections = rng.rejections();
  return r;
}

SuiteResult verify_ac_equivalence(std::uint64_t seed, int trials) {
  SuiteResult r;
  r.name = "ac-equivalence";
  r.trials = trials;
  r.threshold = 1e-10;
  Sampler rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int d = 1 + t % 3;
    const int n = 2 + (t / 3) % 4;
    MassSystem sys(random_masses(rng, n), d);
    ReducedProblem problem(sys, Potential::newtonian(1.0), true);
    const CenteredState z = center(sys, random_collision_free(rng, sys), problem.basis);
    const EquivalenceReport rep = verify_equivalence(z, problem);
    std::ostringstream where;
    where << "trial " << t << " (d=" << d << ", n=" << n << ")";
    record(r, std::max(rep.residual, rep.top_left_residual), where.str());
  }
  r.rejections = rng.rejections();
  return r;
}

SuiteResult verify_xu_roundtrip(std::uint64_t seed, int trials) {
  SuiteResult r;
  r.name = "xu-roundtrip";
  r.trials = trials;
  r.threshold = 1e-8;
  Sampler rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int d = rng.uniform_int(1, 4);
    const int m = rng.uniform_int(1, 4);
    const int p = rng.uniform_int(0, std::min(d / 2, m));
    const int q = rng.uniform_int(0, std::min(d - 2 * p, m - p));
    const PlantedXu plant = planted_xu(rng, d, m, p, q);
    std::ostringstream where;
    where << "trial " << t << " (d=" << d << ", m=" << m << ", p=" << p << ", q=" << q << ")";
    try {
      const XuFactorization xu = xu_decompose(plant.z);
      double sigma_err = 0.0;
      if (xu.p != p || xu.nilpotent != q) {
        sigma_err = INFINITY;
      } else {
        for (int j = 0; j < p; ++j)
          sigma_err = std::max(sigma_err, std::abs(xu.sigma[j] - plant.sigma[j]) / plant.sigma[j]);
      }
      record(r, std::max({xu.reconstruction_residual, xu.symplectic_defect, sigma_err}), where.str());
    } catch (const Error& e) {
      record(r, INFINITY, where.str() + ": " + e.what());
    }
  }
  r.rejections = rng.rejections();
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"spectral", "casimir", "ac-equivalence", "xu-roundtrip"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int trials) {
  if (trials <= 0) throw InvalidInput("trial count must be positive");
  if (name == "spectral") return verify_spectral(seed, trials);
  if (name == "casimir") return verify_casimir(seed, trials);
  if (name == "ac-equivalence") return verify_ac_equivalence(seed, trials);
  if (name == "xu-roundtrip") return verify_xu_roundtrip(seed, trials);
  throw InvalidInput("unknown verification suite '" + name + "'");
}

}  // namespace galilax
